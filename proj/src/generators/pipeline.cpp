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


#include "artigen/error.hpp"
#include "artigen/generators.hpp"
#include "generators/internal.hpp"

namespace artigen {

namespace {

struct Registry {
  std::vector<std::string> names;
  std::map<std::string, CategoryGenerator> generators;
};

const Registry& registry() {
  static const Registry reg = [] {
    const auto spaces = parse_parameter_ranges(parameter_ranges_json());
    struct Row {
      const char* name;
      int continuous;
      NodeGraph (*fn)(const ParameterSpace&, const ParamVector&);
    };
    const Row rows[] = {{"door", 39, detail::build_door},
                        {"toaster", 14, detail::build_toaster},
                        {"fridge", 32, detail::build_fridge},
                        {"dishwasher", 13, detail::build_dishwasher},
                        {"lamp", 29, detail::build_lamp}};
    Registry r;
    for (const Row& row : rows) {
      const auto it = spaces.find(row.name);
      if (it == spaces.end()) fail(ErrorCode::kInvalidParameter, std::string("no parameter table for ") + row.name);
      CategoryGenerator g;
      g.name = row.name;
      g.space = it->second;
      g.documented_continuous = row.continuous;
      g.builder = row.fn;
      r.names.push_back(row.name);
      r.generators.emplace(row.name, std::move(g));
    }
    return r;
  }();
  return reg;
}

WidenedRanges widened(const ParameterSpace& base, const ParameterSpace& space) {
  WidenedRanges out;
  for (const auto& e : space.entries()) {
    const ParameterEntry* orig = base.find(e.name);
    if (orig == nullptr || !e.is_continuous()) continue;
    if (e.interval() != orig->interval()) out[e.name] = e.interval();
  }
  return out;
}

GeneratedAsset assemble(const CategoryGenerator& gen, ParameterSpace space, ParamVector params) {
  GeneratedAsset a;
  a.category = gen.name;
  a.seed = params.seed;
  a.graph = inject_label_attributes(gen.build(space, params));
  a.blueprint = extract_blueprint(a.graph);
  a.instance = instantiate(a.blueprint, a.graph, params);
  a.space = std::move(space);
  a.params = std::move(params);
  return a;
}

}  // namespace

NodeGraph CategoryGenerator::build(const ParameterSpace& with_space, const ParamVector& params) const {
  check_params(with_space, params);
  return builder(with_space, params);
}

const std::vector<std::string>& category_names() { return registry().names; }

const CategoryGenerator& generator(const std::string& category) {
  const auto& gens = registry().generators;
  const auto it = gens.find(category);
  if (it == gens.end()) fail(ErrorCode::kInvalidParameter, "unknown category '" + category + "'");
  return it->second;
}

GeneratedAsset generate_asset(const std::string& category, std::uint64_t seed, const SamplingOverrides& overrides,
                              std::uint64_t salt) {
  const CategoryGenerator& gen = generator(category);
  ParameterSpace space = apply_overrides(gen.space, overrides);
  ParamVector params = sample_parameters(space, seed, overrides, salt);
  return assemble(gen, std::move(space), std::move(params));
}

GeneratedAsset build_asset(const std::string& category, const ParamVector& params, const ParameterSpace* space) {
  const CategoryGenerator& gen = generator(category);
  return assemble(gen, space != nullptr ? *space : gen.space, params);
}

ExportContext export_context(const GeneratedAsset& asset) {
  ExportContext ctx;
  ctx.category = asset.category;
  ctx.seed = asset.seed;
  ctx.ranges = widened(generator(asset.category).space, asset.space);
  return ctx;
}

GeneratedAsset regenerate(const Manifest& manifest) {
  const CategoryGenerator& gen = generator(manifest.category);
  ParameterSpace space = gen.space;
  for (const auto& [name, range] : manifest.ranges) {
    if (!space.contains(name)) fail(ErrorCode::kMissingParameter, "manifest widens unknown parameter '" + name + "'");
    auto* r = std::get_if<ContinuousRange>(&space.at(name).domain);
    if (r == nullptr) fail(ErrorCode::kInvalidParameter, "manifest widens non-continuous parameter '" + name + "'");
    r->lo = range.first;
    r->hi = range.second;
  }
  ParamVector params;
  params.seed = manifest.seed;
  for (const auto& e : space.entries()) {
    const auto it = manifest.params.find(e.name);
    if (it == manifest.params.end()) fail(ErrorCode::kMissingParameter, "manifest lacks parameter '" + e.name + "'");
    params.set(e.name, it->second);
  }
  return assemble(gen, std::move(space), std::move(params));
}

}  // namespace artigen
