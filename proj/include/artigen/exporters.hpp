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
#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "artigen/blueprint.hpp"

namespace artigen {

enum class ExportFormat { kUrdf, kMjcf };

std::string_view to_string(ExportFormat format);
/// Accepts "urdf" and "mjcf"; throws kInvalidParameter otherwise.
ExportFormat export_format_from_string(std::string_view text);
/// "model.urdf" or "model.xml".
std::string document_filename(ExportFormat format);

/// Continuous domains that sampling overrides widened, name -> (lo, hi).
using WidenedRanges = std::map<std::string, std::pair<double, double>>;

struct ExportContext {
  std::string category;  // defaults to the instance name when empty
  std::uint64_t seed = 0;
  WidenedRanges ranges;
};

/// Element names `<category>/<label>/<index>`, assigned in depth-first order.
/// The index counts earlier elements with the same label.
struct ExportNames {
  std::map<std::string, std::string> links;   // link id -> name
  std::map<std::string, std::string> joints;  // joint id -> name
  std::map<std::string, std::string> files;   // link id -> mesh file stem
};
ExportNames export_names(const AssetInstance& instance, const ExportContext& context);

struct ExportBundle {
  std::filesystem::path root;
  ExportFormat format = ExportFormat::kUrdf;
  std::string document;
  /// link id -> relative OBJ paths (visual, collision). Passthrough links
  /// carry no meshes.
  std::map<std::string, std::pair<std::string, std::string>> meshes;
  /// relative path -> file contents, document and manifest included.
  std::map<std::string, std::string> files;
};

/// Builds every file of a bundle in memory.
ExportBundle build_bundle(const AssetInstance& instance, ExportFormat format, const ExportContext& context);
/// Writes a bundle below `out_dir`; throws kIo when a file cannot be written.
void write_bundle(const ExportBundle& bundle, const std::filesystem::path& out_dir);

ExportBundle export_urdf(const AssetInstance& instance, const std::filesystem::path& out_dir,
                         const ExportContext& context = {});
ExportBundle export_mjcf(const AssetInstance& instance, const std::filesystem::path& out_dir,
                         const ExportContext& context = {});

struct ParsedLink {
  std::string name;
  std::string visual;
  std::string collision;
  double mass = 0.0;
  Vec3 com = Vec3::Zero();
  Mat3 inertia = Mat3::Zero();
};

struct ParsedJoint {
  std::string name;
  std::string type;  // "revolute", "prismatic" or "fixed"
  std::string parent;
  std::string child;
  RigidTransform origin;  // child frame in the parent frame at value 0
  Vec3 axis = Vec3::UnitZ();
  double lower = 0.0;
  double upper = 0.0;
};

struct ParsedModel {
  std::string name;
  std::vector<ParsedLink> links;
  std::vector<ParsedJoint> joints;
  std::string root;
  std::vector<std::string> warnings;

  const ParsedLink* find_link(const std::string& name) const;
  const ParsedJoint* find_joint(const std::string& name) const;
};

/// Throws ParseError for malformed XML and kStructural for dangling
/// references, duplicate names or a non-tree joint structure.
ParsedModel parse_urdf_text(const std::string& text);
ParsedModel parse_mjcf_text(const std::string& text);
ParsedModel parse_urdf(const std::filesystem::path& path);
ParsedModel parse_mjcf(const std::filesystem::path& path);
ParsedModel parse_model_text(const std::string& text, ExportFormat format);

/// The model that parsing a faithful export of `instance` must produce.
ParsedModel expected_model(const AssetInstance& instance, const ExportContext& context);

struct RoundTripTolerance {
  double axis = 1e-9;
  double origin = 1e-6;
  double limit = 1e-9;
  double mass_relative = 1e-6;
};
/// Empty when `parsed` is tree-isomorphic to `expected` (matched through
/// names) with equal joint types and values within tolerance.
std::vector<std::string> compare_models(const ParsedModel& expected, const ParsedModel& parsed,
                                        const RoundTripTolerance& tolerance = {});

struct Manifest {
  int schema = 1;
  std::string category;
  std::uint64_t seed = 0;
  std::map<std::string, double> params;
  std::string version;
  std::string format;
  std::vector<std::string> formats;
  std::string signature;
  WidenedRanges ranges;  // written only when non-empty
};

std::string manifest_text(const Manifest& manifest);
/// Throws ParseError for malformed text.
Manifest parse_manifest(const std::string& text);
Manifest make_manifest(const AssetInstance& instance, ExportFormat format, const ExportContext& context);
std::filesystem::path write_manifest(const AssetInstance& instance, const std::filesystem::path& out_dir,
                                     ExportFormat format, const ExportContext& context);

/// Library version string.
std::string artigen_version();

}  // namespace artigen
