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

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "artigen/blueprint.hpp"
#include "artigen/collision.hpp"
#include "artigen/error.hpp"
#include "artigen/exporters.hpp"
#include "artigen/generators.hpp"
#include "artigen/graph.hpp"

namespace fs = std::filesystem;
using namespace artigen;

namespace {

enum Exit : int { kOk = 0, kFindings = 1, kInput = 2, kResource = 3 };

struct SeedRange {
  std::uint64_t first = 0;
  std::uint64_t last = 0;
};

struct RunConfig {
  std::string category;
  std::optional<std::uint64_t> seed;
  std::string seeds;
  std::string out = "out";
  bool out_given = false;
  std::string format = "urdf";
  std::string overrides;
  std::optional<int> grid;
  std::optional<int> random;
  double tolerance = 1e-6;
  int jobs = 0;
  bool quiet = false;
};

std::uint64_t parse_u64(const std::string& text) {
  std::uint64_t value = 0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end || text.empty()) fail(ErrorCode::kInvalidParameter, "not a seed: '" + text + "'");
  return value;
}

SeedRange seed_range(const RunConfig& config) {
  if (!config.seeds.empty()) {
    const auto dots = config.seeds.find("..");
    if (dots == std::string::npos) fail(ErrorCode::kInvalidParameter, "seed range must look like A..B");
    SeedRange r{parse_u64(config.seeds.substr(0, dots)), parse_u64(config.seeds.substr(dots + 2))};
    if (r.last < r.first) fail(ErrorCode::kInvalidParameter, "empty seed range " + config.seeds);
    return r;
  }
  const std::uint64_t s = config.seed.value_or(0);
  return {s, s};
}

std::vector<ExportFormat> formats_of(const std::string& text) {
  if (text == "both") return {ExportFormat::kUrdf, ExportFormat::kMjcf};
  return {export_format_from_string(text)};
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::kIo, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& text) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  if (!out) fail(ErrorCode::kIo, "cannot write " + path.string());
}

SamplingOverrides load_overrides(const RunConfig& config) {
  if (config.overrides.empty()) return {};
  return parse_overrides(read_file(config.overrides));
}

std::string bundle_dir_name(const std::string& category, std::uint64_t seed) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%04llu", static_cast<unsigned long long>(seed));
  return category + "_" + buf;
}

SweepPlan sweep_plan(const RunConfig& config, std::uint64_t seed) {
  SweepPlan plan = config.random ? SweepPlan::random(*config.random, seed) : SweepPlan::grid(config.grid.value_or(3));
  plan.tolerance = config.tolerance;
  check_plan(plan);
  return plan;
}

int worker_count(const RunConfig& config, std::size_t tasks) {
  int n = config.jobs > 0 ? config.jobs : static_cast<int>(std::thread::hardware_concurrency());
  return std::clamp<int>(n, 1, static_cast<int>(std::max<std::size_t>(tasks, 1)));
}

/// Runs `fn(index)` for every index on a small pool; results are stored by
/// index so the caller prints them in seed order.
template <typename Fn>
void parallel_for(std::size_t count, int workers, Fn fn) {
  std::atomic<std::size_t> next{0};
  auto loop = [&] {
    for (std::size_t i = next++; i < count; i = next++) fn(i);
  };
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(loop);
  loop();
  for (auto& t : pool) t.join();
}

int exit_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::kPlanTooLarge:
      return kResource;
    default:
      return kInput;
  }
}

// ---------------------------------------------------------------------------

struct SeedOutcome {
  std::string line;
  std::string error;
};

SeedOutcome generate_one(const RunConfig& config, const SamplingOverrides& overrides, std::uint64_t salt,
                         std::uint64_t seed) {
  SeedOutcome outcome;
  try {
    const GeneratedAsset asset = generate_asset(config.category, seed, overrides, salt);
    const ExportContext ctx = export_context(asset);
    const fs::path dir = fs::path(config.out) / bundle_dir_name(config.category, seed);
    const ParsedModel expected = expected_model(asset.instance, ctx);

    nlohmann::ordered_json report;
    report["category"] = config.category;
    report["seed"] = seed;
    report["links"] = asset.instance.links.size();
    report["joints"] = asset.instance.joints.size();
    report["signature"] = blueprint_signature(asset.blueprint);
    nlohmann::ordered_json roundtrip = nlohmann::ordered_json::object();
    std::vector<std::string> paths;
    std::vector<std::string> problems;
    for (const ExportFormat format : formats_of(config.format)) {
      ExportBundle bundle = build_bundle(asset.instance, format, ctx);
      if (config.format == "both") {
        Manifest m = make_manifest(asset.instance, format, ctx);
        m.format = "both";
        bundle.files["manifest.json"] = manifest_text(m);
      }
      write_bundle(bundle, dir);
      const auto diffs = compare_models(expected, parse_model_text(bundle.document, format));
      roundtrip[std::string(to_string(format))] = diffs.empty();
      for (const auto& d : diffs) problems.push_back(std::string(to_string(format)) + ": " + d);
      paths.push_back((dir / document_filename(format)).string());
    }
    report["roundtrip"] = roundtrip;
    report["status"] = problems.empty() ? "ok" : "roundtrip-mismatch";
    write_file(dir / "report.json", report.dump(2) + "\n");
    if (!problems.empty()) {
      outcome.error = "round-trip mismatch: " + problems.front();
      return outcome;
    }
    std::ostringstream line;
    line << "seed " << seed << ": links " << asset.instance.links.size() << ", joints "
         << asset.instance.joints.size();
    for (const auto& p : paths) line << ", " << p;
    outcome.line = line.str();
  } catch (const Error& e) {
    outcome.error = std::string(to_string(e.code())) + ": " + e.what();
  } catch (const std::exception& e) {
    outcome.error = e.what();
  }
  return outcome;
}

int cmd_generate(const RunConfig& config) {
  SeedRange range;
  SamplingOverrides overrides;
  try {
    generator(config.category);
    formats_of(config.format);
    range = seed_range(config);
    overrides = load_overrides(config);
    apply_overrides(generator(config.category).space, overrides);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  }
  const std::uint64_t salt = seed_salt_from_env();
  const std::size_t count = range.last - range.first + 1;
  std::vector<SeedOutcome> outcomes(count);
  parallel_for(count, worker_count(config, count),
               [&](std::size_t i) { outcomes[i] = generate_one(config, overrides, salt, range.first + i); });

  int failures = 0;
  for (std::size_t i = 0; i < count; ++i) {
    if (outcomes[i].error.empty()) {
      if (!config.quiet) std::cout << outcomes[i].line << "\n";
    } else {
      ++failures;
      std::cerr << "seed " << range.first + i << ": " << outcomes[i].error << "\n";
    }
  }
  std::cout << "generated " << count - failures << " of " << count << " " << config.category << " assets";
  if (failures > 0) std::cout << ", " << failures << " failed";
  std::cout << "\n";
  return failures == 0 ? kOk : kFindings;
}

// ---------------------------------------------------------------------------

std::string domain_text(const ParameterEntry& e) {
  std::ostringstream s;
  if (const auto* c = std::get_if<ContinuousRange>(&e.domain)) {
    s << "continuous [" << c->lo << ", " << c->hi << "]";
    if (!c->units.empty()) s << " " << c->units;
  } else if (const auto* d = std::get_if<DiscreteChoice>(&e.domain)) {
    s << "discrete {";
    for (std::size_t i = 0; i < d->labels.size(); ++i) s << (i ? ", " : "") << d->labels[i];
    s << "}";
  } else if (const auto* n = std::get_if<CountRange>(&e.domain)) {
    s << "count " << n->min << ".." << n->max;
  }
  return s.str();
}

int cmd_info(const std::string& category) {
  const CategoryGenerator* gen = nullptr;
  try {
    gen = &generator(category);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  }
  const VariationCount v = count_variations(*gen);
  std::cout << "category: " << gen->name << "\n"
            << "continuous dims: " << v.continuous_dims << "\n"
            << "discrete combinations: " << to_decimal(v.discrete_combinations) << "\n"
            << "assets at 3 values: " << to_decimal(v.assets_at_3_values) << "\n"
            << "parameters:\n";
  for (const auto& e : gen->space.entries()) std::cout << "  " << e.name << ": " << domain_text(e) << "\n";
  return kOk;
}

int cmd_blueprint(const std::string& category) {
  try {
    const GeneratedAsset asset = generate_asset(category, 0);
    std::cout << blueprint_tree_text(asset.blueprint) << "signature: " << blueprint_signature(asset.blueprint)
              << "\n";
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  }
  return kOk;
}

// ---------------------------------------------------------------------------

struct LoadedGraph {
  NodeGraph graph;
  int exit = kOk;
};

/// Reads and validates a graph file, printing parse errors and diagnostics.
LoadedGraph load_graph(const std::string& path) {
  LoadedGraph out;
  try {
    out.graph = deserialize(read_file(path));
  } catch (const ParseError& e) {
    std::cerr << path << ": parse error: " << e.what() << "\n";
    out.exit = kInput;
    return out;
  } catch (const Error& e) {
    std::cerr << path << ": " << to_string(e.code()) << ": " << e.what() << "\n";
    out.exit = kInput;
    return out;
  }
  const auto diagnostics = validate(out.graph);
  for (const auto& d : diagnostics) {
    std::cout << path << ": " << d.code;
    if (d.node >= 0) std::cout << " (node " << d.node << ")";
    std::cout << ": " << d.message << "\n";
  }
  if (!diagnostics.empty()) out.exit = kFindings;
  return out;
}

int cmd_validate(const std::vector<std::string>& files) {
  int worst = kOk;
  for (const auto& f : files) {
    const LoadedGraph g = load_graph(f);
    if (g.exit == kOk) std::cout << f << ": ok\n";
    worst = std::max(worst, g.exit);
  }
  return worst;
}

/// Midpoint of continuous domains, the first choice and the smallest count.
ParamVector default_params(const ParameterSpace& space) {
  ParamVector p;
  for (const auto& e : space.entries()) {
    const auto [lo, hi] = e.interval();
    p.set(e.name, e.is_continuous() ? 0.5 * (lo + hi) : lo);
  }
  return p;
}

struct CheckTarget {
  std::string name;
  AssetInstance instance;
  std::uint64_t seed = 0;
};

int run_checks(const RunConfig& config, const std::vector<CheckTarget>& targets) {
  int worst = kOk;
  for (const auto& t : targets) {
    try {
      const SweepPlan plan = sweep_plan(config, t.seed);
      const CollisionReport report = sweep_check(t.instance, plan);
      const std::string json = report_json(t.instance, report, plan);
      if (config.out_given) {
        write_file(fs::path(config.out) / t.name / "report.json", json);
      } else {
        std::cout << json;
      }
      std::cerr << t.name << ": " << (report.clean ? "clean" : std::to_string(report.findings.size()) + " findings")
                << " (" << report.configs_tested << " configs)\n";
      if (!report.clean) worst = std::max(worst, static_cast<int>(kInput));
    } catch (const Error& e) {
      std::cerr << t.name << ": " << e.what() << "\n";
      if (e.code() == ErrorCode::kPlanTooLarge) {
        std::cerr << "  use a smaller --grid N or --random N to stay within " << kMaxSweepConfigs
                  << " configurations\n";
      }
      worst = std::max(worst, exit_for(e));
    }
  }
  return worst;
}

int cmd_check(const RunConfig& config, const std::vector<std::string>& files) {
  std::vector<CheckTarget> targets;
  try {
    if (!files.empty()) {
      for (const auto& f : files) {
        const LoadedGraph g = load_graph(f);
        if (g.exit != kOk) return g.exit == kFindings ? kInput : g.exit;
        const NodeGraph labeled = inject_label_attributes(g.graph);
        targets.push_back({fs::path(f).stem().string(),
                           instantiate(extract_blueprint(labeled), labeled, default_params(labeled.parameters())), 0});
      }
    } else {
      generator(config.category);
      const SeedRange range = seed_range(config);
      const SamplingOverrides overrides = load_overrides(config);
      const std::uint64_t salt = seed_salt_from_env();
      for (std::uint64_t s = range.first; s <= range.last; ++s) {
        targets.push_back(
            {bundle_dir_name(config.category, s), generate_asset(config.category, s, overrides, salt).instance, s});
      }
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  }
  return run_checks(config, targets);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Procedural articulated-asset generator"};
  app.require_subcommand(1);
  RunConfig config;
  std::vector<std::string> files;
  std::string positional_category;

  auto add_category = [&](CLI::App* cmd, bool positional) {
    cmd->add_option("--category", config.category, "door | toaster | fridge | dishwasher | lamp");
    if (positional) cmd->add_option("category_name", positional_category, "category name");
  };
  auto add_seeds = [&](CLI::App* cmd) {
    auto* seed = cmd->add_option("--seed", config.seed, "single seed");
    cmd->add_option("--seeds", config.seeds, "inclusive seed range A..B")->excludes(seed);
    cmd->add_option("--overrides", config.overrides, "sampling override JSON file");
  };

  auto* gen = app.add_subcommand("generate", "sample, build and export assets");
  add_category(gen, false);
  add_seeds(gen);
  gen->add_option("--out", config.out, "output directory");
  gen->add_option("--format", config.format, "urdf | mjcf | both")->check(CLI::IsMember({"urdf", "mjcf", "both"}));
  gen->add_option("--jobs", config.jobs, "worker threads (default: all cores)");
  gen->add_flag("--quiet", config.quiet, "print only the batch summary");

  auto* info = app.add_subcommand("info", "print the parameter inventory of a category");
  add_category(info, true);

  auto* blueprint = app.add_subcommand("blueprint", "print the kinematic blueprint of a category");
  add_category(blueprint, true);

  auto* check = app.add_subcommand("check", "sweep joint ranges for self-collision");
  add_category(check, false);
  add_seeds(check);
  check->add_option("graph", files, "graph JSON files to check instead of a category");
  auto* out_opt = check->add_option("--out", config.out, "write report.json files below this directory");
  auto* grid = check->add_option("--grid", config.grid, "grid samples per joint (default 3)");
  check->add_option("--random", config.random, "random configurations")->excludes(grid);
  check->add_option("--tolerance", config.tolerance, "penetration tolerance in meters");

  auto* validate_cmd = app.add_subcommand("validate", "check graph files for structural errors");
  validate_cmd->add_option("graph", files, "graph JSON files")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInput;
  }
  config.out_given = out_opt->count() > 0;
  if (config.category.empty()) config.category = positional_category;

  try {
    if (*gen) return cmd_generate(config);
    if (*info) return cmd_info(config.category);
    if (*blueprint) return cmd_blueprint(config.category);
    if (*check) {
      if (files.empty() && config.category.empty()) {
        std::cerr << "error: give --category or graph files\n";
        return kInput;
      }
      return cmd_check(config, files);
    }
    if (*validate_cmd) return cmd_validate(files);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_for(e);
  }
  return kInput;
}
