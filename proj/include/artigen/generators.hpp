// Copyright 2026 The artigen Authors
// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "artigen/blueprint.hpp"
#include "artigen/exporters.hpp"
#include "artigen/graph.hpp"

namespace artigen {

using BigInt = boost::multiprecision::cpp_int;

struct CategoryGenerator {
  std::string name;
  ParameterSpace space;
  int documented_continuous = 0;
  /// Same node topology for every in-bounds ParamVector.
  std::function<NodeGraph(const ParameterSpace&, const ParamVector&)> builder;

  NodeGraph build(const ParamVector& params) const { return build(space, params); }
  /// Builds against a (possibly widened) space. Throws kMissingParameter and kRange.
  NodeGraph build(const ParameterSpace& with_space, const ParamVector& params) const;
};

/// door, toaster, fridge, dishwasher, lamp.
const std::vector<std::string>& category_names();
/// Throws kInvalidParameter for an unknown category.
const CategoryGenerator& generator(const std::string& category);

/// Parameter table text shipped with the library (versioned JSON).
const char* parameter_ranges_json();
/// Parses a parameter table document into per-category spaces. Throws
/// ParseError, kSchemaVersion and kInvalidParameter.
std::map<std::string, ParameterSpace> parse_parameter_ranges(const std::string& text);

/// Lower-case, with runs of other characters collapsed to '_':
/// "Push Bar Overall Z-Offset" -> "push_bar_overall_z_offset".
std::string normalize_parameter_name(const std::string& name);

struct VariationCount {
  BigInt discrete_combinations;
  int continuous_dims = 0;
  BigInt assets_at_3_values;
};
VariationCount count_variations(const CategoryGenerator& generator);
VariationCount count_variations(const ParameterSpace& space);
std::string to_decimal(const BigInt& value);

/// Per-parameter sampling override. Uniform and normal ranges may exceed the
/// declared domain; apply_overrides widens the space to match.
struct Distribution {
  enum class Kind { kUniform, kNormal, kFixed };
  Kind kind = Kind::kUniform;
  double lo = 0.0;
  double hi = 1.0;
  double mean = 0.0;
  double stddev = 1.0;
  double value = 0.0;
};
using SamplingOverrides = std::map<std::string, Distribution>;

/// Reads {"parameters": {name: {"distribution": "uniform"|"normal"|"fixed", ...}}}.
/// Throws ParseError for malformed text.
SamplingOverrides parse_overrides(const std::string& text);
/// Throws kMissingParameter for an override naming an unknown parameter and
/// kInvalidParameter for an inconsistent override.
ParameterSpace apply_overrides(const ParameterSpace& space, const SamplingOverrides& overrides);

/// Salt from ARTIGEN_SEED_SALT (decimal, 0x-hex, or hashed text); 0 if unset.
std::uint64_t seed_salt_from_env();

/// Draws every entry from its own stream keyed by (seed, name, salt).
ParamVector sample_parameters(const ParameterSpace& space, std::uint64_t seed, const SamplingOverrides& overrides = {},
                              std::uint64_t salt = 0);

struct GeneratedAsset {
  std::string category;
  std::uint64_t seed = 0;
  ParameterSpace space;
  ParamVector params;
  NodeGraph graph;
  KinematicBlueprint blueprint;
  AssetInstance instance;
};

/// Sample, build, label and instantiate.
GeneratedAsset generate_asset(const std::string& category, std::uint64_t seed, const SamplingOverrides& overrides = {},
                              std::uint64_t salt = 0);
/// Build and instantiate from explicit parameter values.
GeneratedAsset build_asset(const std::string& category, const ParamVector& params,
                           const ParameterSpace* space = nullptr);
/// Export context naming the asset and recording any widened domains.
ExportContext export_context(const GeneratedAsset& asset);

/// Rebuilds the instance recorded by a manifest. Throws kMissingParameter
/// when the manifest lacks a parameter.
GeneratedAsset regenerate(const Manifest& manifest);

}  // namespace artigen
