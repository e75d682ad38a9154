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

// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <thread>
#include <unistd.h>
#include <vector>

#include "adversarial.hpp"
#include "artigen/blueprint.hpp"
#include "artigen/builder.hpp"
#include "artigen/collision.hpp"
#include "artigen/error.hpp"
#include "artigen/exporters.hpp"
#include "artigen/generators.hpp"
#include "artigen/graph.hpp"

namespace fs = std::filesystem;
using namespace artigen;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Recorder {
 public:
  void expect(bool ok, const std::string& what) {
    if (ok) return;
    if (failures_++ < 5) notes_ += (notes_.empty() ? "" : "; ") + what;
  }
  Outcome outcome(const std::string& summary) const {
    if (failures_ == 0) return {true, summary};
    return {false, std::to_string(failures_) + " failed checks: " + notes_};
  }

 private:
  int failures_ = 0;
  std::string notes_;
};

const std::map<std::string, int>& documented_dims() {
  static const std::map<std::string, int> dims = {
      {"door", 39}, {"fridge", 32}, {"dishwasher", 13}, {"lamp", 29}, {"toaster", 14}};
  return dims;
}

struct Shell {
  int exit = -1;
  std::string out;
};

Shell shell(const std::string& args) {
  const std::string cmd = std::string(ARTIGEN_CLI_PATH) + " " + args + " 2>&1";
  Shell r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return r;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.exit = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::map<std::string, std::string> tree(const fs::path& root) {
  std::map<std::string, std::string> files;
  for (const auto& e : fs::recursive_directory_iterator(root)) {
    if (e.is_regular_file()) files[fs::relative(e.path(), root).string()] = slurp(e.path());
  }
  return files;
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("artigen_acceptance_" + name + "_" + std::to_string(::getpid()));
  fs::remove_all(p);
  return p;
}

SamplingOverrides fixed(const std::map<std::string, double>& values) {
  SamplingOverrides o;
  for (const auto& [name, v] : values) {
    Distribution d;
    d.kind = Distribution::Kind::kFixed;
    d.value = v;
    o[name] = d;
  }
  return o;
}

Distribution uniform(double lo, double hi) {
  Distribution d;
  d.lo = lo;
  d.hi = hi;
  return d;
}

// Rotation about a line, written out from first principles.
Vec3 rotate_about(const Vec3& p, const Vec3& pivot, const Vec3& axis, double theta) {
  const Vec3 k = axis / std::sqrt(axis.x() * axis.x() + axis.y() * axis.y() + axis.z() * axis.z());
  const Vec3 v = p - pivot;
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const double kv = k.x() * v.x() + k.y() * v.y() + k.z() * v.z();
  const Vec3 cross(k.y() * v.z() - k.z() * v.y(), k.z() * v.x() - k.x() * v.z(), k.x() * v.y() - k.y() * v.x());
  return pivot + v * c + cross * s + k * (kv * (1.0 - c));
}

// Separating-axis test for two closed triangles. Coplanar pairs are judged
// in their plane only and must share area.
bool triangles_meet(const Triangle& a, const Triangle& b) {
  const Vec3 na = (a[1] - a[0]).cross(a[2] - a[0]).normalized();
  const Vec3 nb = (b[1] - b[0]).cross(b[2] - b[0]).normalized();
  const bool coplanar = na.cross(nb).norm() < 1e-12 && std::abs((b[0] - a[0]).dot(na)) < 1e-12;
  std::vector<Vec3> axes;
  if (!coplanar) {
    axes.push_back(na);
    axes.push_back(nb);
  }
  for (int i = 0; i < 3; ++i) {
    const Vec3 ea = a[(i + 1) % 3] - a[i];
    const Vec3 eb = b[(i + 1) % 3] - b[i];
    axes.push_back(na.cross(ea));
    axes.push_back(nb.cross(eb));
    if (!coplanar) {
      for (int j = 0; j < 3; ++j) axes.push_back(ea.cross(b[(j + 1) % 3] - b[j]));
    }
  }
  double depth = 1e300;
  for (const Vec3& raw : axes) {
    if (raw.norm() < 1e-14) continue;
    const Vec3 n = raw.normalized();
    double alo = 1e300, ahi = -1e300, blo = 1e300, bhi = -1e300;
    for (const Vec3& p : a) alo = std::min(alo, p.dot(n)), ahi = std::max(ahi, p.dot(n));
    for (const Vec3& p : b) blo = std::min(blo, p.dot(n)), bhi = std::max(bhi, p.dot(n));
    depth = std::min(depth, std::min(ahi, bhi) - std::max(alo, blo));
  }
  return coplanar ? depth > 0.0 : depth >= -1e-12;
}

const std::vector<std::string>& conformance_names() {
  static const std::vector<std::string> names = {"simple_revolute", "simple_prismatic", "duplicated_bodies",
                                                 "chained_joints",  "shared_parent",    "screw_cap"};
  return names;
}

AssetInstance instance_from(const NodeGraph& graph) {
  const NodeGraph g = inject_label_attributes(graph);
  return instantiate(extract_blueprint(g), g, {});
}

// ---------------------------------------------------------------------------

Outcome criterion_dof_parity() {
  Recorder r;
  std::ostringstream summary;
  for (const auto& [cat, dims] : documented_dims()) {
    const Shell s = shell("info " + cat);
    const std::string key = "continuous dims: ";
    const auto at = s.out.find(key);
    int reported = -1;
    if (at != std::string::npos) reported = std::stoi(s.out.substr(at + key.size()));
    r.expect(s.exit == 0 && reported == dims, cat + " reports " + std::to_string(reported));
    summary << cat << "=" << reported << " ";
  }
  return r.outcome(summary.str());
}

Outcome criterion_variation_magnitude() {
  Recorder r;
  const BigInt lo("1000000");
  const BigInt hi("100000000000000000000");
  std::ostringstream summary;
  for (const auto& cat : category_names()) {
    const VariationCount v = count_variations(generator(cat));
    BigInt independent = v.discrete_combinations;
    for (int i = 0; i < documented_dims().at(cat); ++i) independent *= 3;
    r.expect(independent == v.assets_at_3_values, cat + " count disagrees with discrete x 3^dims");
    const std::string digits = to_decimal(v.assets_at_3_values);
    r.expect(v.assets_at_3_values >= lo && v.assets_at_3_values <= hi,
             cat + " = " + digits + " (" + to_decimal(v.discrete_combinations) + " x 3^" +
                 std::to_string(v.continuous_dims) + ") outside [1e6, 1e20]");
    summary << cat << "=" << digits.size() << " digits ";
  }
  return r.outcome(summary.str());
}

Outcome criterion_joint_semantics() {
  Recorder r;
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const bool revolute = trial % 2 == 0;
    Vec3 axis(u(rng), u(rng), u(rng));
    while (axis.norm() < 1e-2) axis = Vec3(u(rng), u(rng), u(rng));
    const Vec3 pivot(u(rng), u(rng), u(rng));
    const double span = revolute ? M_PI : 0.5;
    const double lower = -span * (0.05 + 0.95 * unit(rng));
    const double upper = span * (0.05 + 0.95 * unit(rng));

    GraphBuilder b("oracle");
    const NodeId base = b.box({0.3, 0.3, 0.3});
    const NodeId child = b.translate(b.box({0.05 + 0.3 * unit(rng), 0.05 + 0.3 * unit(rng), 0.05 + 0.3 * unit(rng)}),
                                     {u(rng), u(rng), u(rng)});
    JointArgs args;
    args.axis = axis;
    args.pivot = {pivot.x(), pivot.y(), pivot.z()};
    args.lower = lower;
    args.upper = upper;
    const NodeId j = revolute ? b.revolute(base, child, args) : b.prismatic(base, child, args);
    const NodeGraph g = b.finish(j);
    const std::string id = "j" + std::to_string(j);
    const double q = lower + (upper - lower) * unit(rng);
    const EvaluatedBody rest = evaluate(g, {}, JointValues{{id, 0.0}});
    const EvaluatedBody posed = evaluate(g, {}, JointValues{{id, q}});
    const auto a = rest.posed_mesh(1).vertices;
    const auto c = posed.posed_mesh(1).vertices;
    r.expect(a.size() == c.size() && !a.empty(), "vertex count changed");
    for (std::size_t i = 0; i < std::min(a.size(), c.size()); ++i) {
      const Vec3 expected = revolute ? rotate_about(a[i], pivot, axis, q) : a[i] + q * axis / axis.norm();
      worst = std::max(worst, (c[i] - expected).norm());
    }
  }
  r.expect(worst <= 1e-9, "max deviation " + std::to_string(worst));
  std::ostringstream s;
  s << "1000 specs, max deviation " << worst;
  return r.outcome(s.str());
}

Outcome criterion_conformance() {
  Recorder r;
  int screw_ok = 0;
  for (const auto& name : conformance_names()) {
    const fs::path file = fs::path(ARTIGEN_SOURCE_DIR) / "fixtures" / "articulations" / (name + ".json");
    const Shell v = shell("validate " + file.string());
    r.expect(v.exit == 0, name + " validate exit " + std::to_string(v.exit));
    try {
      const NodeGraph g = deserialize(slurp(file));
      r.expect(validate(g).empty(), name + " has diagnostics");
      const AssetInstance inst = instance_from(g);
      const ExportContext ctx{name, 0, {}};
      for (ExportFormat format : {ExportFormat::kUrdf, ExportFormat::kMjcf}) {
        const ParsedModel parsed = parse_model_text(build_bundle(inst, format, ctx).document, format);
        const auto diffs = compare_models(expected_model(inst, ctx), parsed);
        r.expect(diffs.empty(), name + " " + std::string(to_string(format)) + ": " + (diffs.empty() ? "" : diffs[0]));
        if (name == "screw_cap") {
          const bool two = parsed.joints.size() == 2;
          bool chained = false;
          if (two) {
            const ParsedJoint& a = parsed.joints[0];
            const ParsedJoint& b = parsed.joints[1];
            const ParsedLink* mid = parsed.find_link(a.child);
            const InstanceLink* mid_inst = nullptr;
            for (const auto& l : inst.links) {
              if (l.passthrough) mid_inst = &l;
            }
            chained = a.child == b.parent && (a.axis.normalized() - b.axis.normalized()).norm() <= 1e-9 &&
                      mid != nullptr && mid->visual.empty() && mid_inst != nullptr &&
                      mid_inst->mesh.vertices.empty() && a.type != b.type;
          }
          r.expect(chained, "screw is not two chained joints through a passthrough link");
          screw_ok += chained;
        }
      }
    } catch (const Error& e) {
      r.expect(false, name + ": " + e.what());
    }
  }
  return r.outcome("6 fixtures, screw chain verified in " + std::to_string(screw_ok) + " formats");
}

Outcome criterion_blueprint_invariance() {
  Recorder r;
  std::set<std::string> all;
  for (const auto& cat : category_names()) {
    std::set<std::string> signatures;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      signatures.insert(blueprint_signature(generate_asset(cat, seed).blueprint));
    }
    r.expect(signatures.size() == 1, cat + " has " + std::to_string(signatures.size()) + " signatures");
    all.insert(signatures.begin(), signatures.end());
  }
  r.expect(all.size() == category_names().size(), "categories share a signature");
  return r.outcome("100 seeds x 5 categories, one signature each");
}

Outcome criterion_export_roundtrip() {
  Recorder r;
  int checked = 0;
  for (const auto& cat : category_names()) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const GeneratedAsset a = generate_asset(cat, seed);
      const ExportContext ctx = export_context(a);
      const ParsedModel expected = expected_model(a.instance, ctx);
      for (ExportFormat format : {ExportFormat::kUrdf, ExportFormat::kMjcf}) {
        const ParsedModel parsed = parse_model_text(build_bundle(a.instance, format, ctx).document, format);
        RoundTripTolerance tol;
        tol.axis = 1e-9;
        tol.origin = 1e-6;
        tol.limit = 1e-9;
        const auto diffs = compare_models(expected, parsed, tol);
        r.expect(diffs.empty(), cat + "/" + std::to_string(seed) + " " + std::string(to_string(format)) + ": " +
                                    (diffs.empty() ? "" : diffs[0]));
        r.expect(parsed.joints.size() == a.instance.joints.size(), "joint count changed");
        ++checked;
      }
    }
  }
  return r.outcome(std::to_string(checked) + " documents round-tripped");
}

Outcome criterion_determinism() {
  Recorder r;
  const fs::path dir_a = scratch("det_a");
  const fs::path dir_b = scratch("det_b");
  const std::string overrides = (scratch("det_o").string() + ".json");
  {
    std::ofstream f(overrides);
    f << R"({"parameters": {"lever_length": {"distribution": "uniform", "lo": 0.05, "hi": 0.3}}})";
  }
  for (const auto& cat : category_names()) {
    for (std::uint64_t seed : {3u, 11u}) {
      const GeneratedAsset a = generate_asset(cat, seed);
      const GeneratedAsset b = generate_asset(cat, seed);
      for (ExportFormat format : {ExportFormat::kUrdf, ExportFormat::kMjcf}) {
        r.expect(build_bundle(a.instance, format, export_context(a)).files ==
                     build_bundle(b.instance, format, export_context(b)).files,
                 cat + " in-process bundles differ");
      }
    }
    const std::string args = "generate --category " + cat + " --seeds 0..9 --format both --quiet" +
                             (cat == "door" ? " --overrides " + overrides : std::string());
    r.expect(shell(args + " --out " + dir_a.string()).exit == 0, cat + " first run failed");
    r.expect(shell(args + " --jobs 1 --out " + dir_b.string()).exit == 0, cat + " second run failed");
  }
  const auto ta = tree(dir_a);
  const auto tb = tree(dir_b);
  r.expect(ta == tb, "bundles differ across process runs");

  // The files a fresh process wrote match what this process builds.
  const GeneratedAsset probe = generate_asset("fridge", 4);
  const ExportBundle urdf = build_bundle(probe.instance, ExportFormat::kUrdf, export_context(probe));
  for (const auto& [rel, text] : urdf.files) {
    if (rel == "manifest.json") continue;
    const auto it = ta.find("fridge_0004/" + rel);
    r.expect(it != ta.end() && it->second == text, "process output differs for " + rel);
  }
  const std::size_t files = ta.size();
  fs::remove_all(dir_a);
  fs::remove_all(dir_b);
  fs::remove(overrides);
  return r.outcome(std::to_string(files) + " files byte-identical across restarts");
}

Outcome criterion_collision() {
  Recorder r;
  int findings = 0;
  int fixtures_with_findings = 0;
  for (const auto& inst : artigen::testing::adversarial_set(50)) {
    const CollisionReport rep = sweep_check(inst, SweepPlan::grid(5));
    fixtures_with_findings += !rep.clean;
    for (const auto& f : rep.findings) {
      ++findings;
      r.expect(recheck_finding(inst, f, 1e-6), inst.name + " witness does not re-check");
      const auto frames = forward_kinematics(inst, f.config);
      const TriMesh& ma = inst.find_link(f.link_a)->mesh;
      const TriMesh& mb = inst.find_link(f.link_b)->mesh;
      Triangle ta = ma.triangle(f.witness.first);
      Triangle tb = mb.triangle(f.witness.second);
      for (auto& p : ta) p = frames.at(f.link_a).apply(p);
      for (auto& p : tb) p = frames.at(f.link_b).apply(p);
      r.expect(triangles_meet(ta, tb), inst.name + " witness triangles do not intersect");
      Triangle far = tb;
      for (auto& p : far) p += Vec3(0.0, 0.0, 10.0);
      r.expect(!triangles_meet(ta, far), "the triangle oracle accepts a separated pair");
    }
  }
  r.expect(fixtures_with_findings > 0, "the adversarial set produced no findings");
  int dirty = 0;
  for (const auto& cat : category_names()) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      SweepPlan plan = SweepPlan::grid(3);
      plan.filter = PairFilter::kAdjacentExcluded;
      const CollisionReport rep = sweep_check(generate_asset(cat, seed).instance, plan);
      if (!rep.clean) ++dirty;
      r.expect(rep.clean, cat + "/" + std::to_string(seed) + " collides");
    }
  }
  std::ostringstream s;
  s << findings << " witnesses on " << fixtures_with_findings << "/50 fixtures all verified; " << 100 - dirty
    << "/100 category seeds clean";
  return r.outcome(s.str());
}

Outcome criterion_duplicate_multiplicity() {
  Recorder r;
  // A flap with a knob of its own: two links and two joints per copy.
  for (int k = 1; k <= 5; ++k) {
    GraphBuilder b("dup");
    const NodeId plate = b.label(b.box({1.2, 0.4, 0.04}), "base");
    const NodeId flap = b.label(b.translate(b.box({0.08, 0.2, 0.01}), {0.0, 0.0, 0.03}), "flap");
    const NodeId knob = b.label(b.translate(b.cylinder(0.01, 0.01), {0.0, 0.05, 0.04}), "knob");
    JointArgs inner;
    inner.axis = Vec3::UnitZ();
    inner.pivot = {0.0, 0.05, 0.04};
    inner.upper = 1.0;
    const NodeId unit = b.revolute(flap, knob, inner);
    DuplicateArgs dup;
    dup.type = JointType::kPrismatic;
    dup.joint.axis = Vec3::UnitY();
    dup.joint.upper = 0.1;
    for (int i = 0; i < k; ++i) dup.points.emplace_back(-0.5 + 0.2 * i, 0.0, 0.0);
    const AssetInstance single = instance_from([&] {
      GraphBuilder one("one");
      const NodeId p = one.label(one.box({1.2, 0.4, 0.04}), "base");
      const NodeId f = one.label(one.translate(one.box({0.08, 0.2, 0.01}), {0.0, 0.0, 0.03}), "flap");
      const NodeId n = one.label(one.translate(one.cylinder(0.01, 0.01), {0.0, 0.05, 0.04}), "knob");
      JointArgs slide;
      slide.axis = Vec3::UnitY();
      slide.upper = 0.1;
      return one.finish(one.prismatic(p, one.revolute(f, n, inner), slide));
    }());
    const AssetInstance inst = instance_from(b.finish(b.duplicate(plate, unit, dup)));
    const std::size_t unit_links = single.links.size() - 1;
    const std::size_t unit_joints = single.joints.size();
    r.expect(unit_links == 2 && unit_joints == 2, "the articulated unit is not two links and two joints");
    r.expect(inst.links.size() - 1 == k * unit_links, "k=" + std::to_string(k) + " link count " +
                                                          std::to_string(inst.links.size()));
    r.expect(inst.joints.size() == k * unit_joints, "k=" + std::to_string(k) + " joint count " +
                                                        std::to_string(inst.joints.size()));
  }
  return r.outcome("k = 1..5 multiply links and joints exactly");
}

struct DoorStats {
  double d_min = 1e300, d_max = -1e300, len_min = 1e300, len_max = -1e300;
  bool consistent = true;
};

DoorStats door_stats(const SamplingOverrides& overrides) {
  DoorStats s;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const GeneratedAsset a = generate_asset("door", seed, overrides);
    const AssetInstance& inst = a.instance;
    const InstanceJoint* hinge = nullptr;
    const InstanceJoint* handle = nullptr;
    for (const auto& j : inst.joints) {
      const std::string& label = inst.find_link(j.child)->label;
      if (label == "panel") hinge = &j;
      if (label == "handle") handle = &j;
    }
    if (hinge == nullptr || handle == nullptr) {
      s.consistent = false;
      continue;
    }
    const auto frames = forward_kinematics(inst, inst.defaults());
    const Vec3 axis = frames.at(hinge->parent).rotate(hinge->spec.axis).normalized();
    const Vec3 r = frames.at(handle->parent).apply(handle->spec.pivot) - frames.at(hinge->parent).apply(hinge->spec.pivot);
    const double d = (r - r.dot(axis) * axis).norm();
    const double len = a.params.at("lever_length");
    s.d_min = std::min(s.d_min, d);
    s.d_max = std::max(s.d_max, d);
    s.len_min = std::min(s.len_min, len);
    s.len_max = std::max(s.len_max, len);
  }
  return s;
}

Outcome criterion_distribution_control() {
  Recorder r;
  const SamplingOverrides base = fixed({{"door_count", 1}, {"handle_type", 0}});
  SamplingOverrides wide = base;
  const double w_lo = 0.55, w_hi = 1.25, l_lo = 0.05, l_hi = 0.3;
  wide["width"] = uniform(w_lo, w_hi);
  wide["lever_length"] = uniform(l_lo, l_hi);
  const auto* width = generator("door").space.find("width");
  const auto* lever = generator("door").space.find("lever_length");
  const auto [dw_lo, dw_hi] = width->interval();
  const auto [dl_lo, dl_hi] = lever->interval();

  const DoorStats def = door_stats(base);
  const DoorStats exp = door_stats(wide);
  r.expect(def.consistent && exp.consistent, "some doors lack a hinge or handle joint");
  // Handle length: the empirical range covers the widened interval.
  const double l_span = l_hi - l_lo;
  r.expect(exp.len_min <= l_lo + 0.02 * l_span && exp.len_max >= l_hi - 0.02 * l_span,
           "lever length does not cover the widened interval");
  r.expect(def.len_min >= dl_lo && def.len_max <= dl_hi, "default lever length escapes its range");
  // Handle-to-hinge distance shifts by the width widening on both sides.
  r.expect(def.d_min - exp.d_min >= 0.8 * (dw_lo - w_lo), "distance minimum did not widen");
  r.expect(exp.d_max - def.d_max >= 0.8 * (w_hi - dw_hi), "distance maximum did not widen");
  std::ostringstream s;
  s << "distance [" << def.d_min << ", " << def.d_max << "] -> [" << exp.d_min << ", " << exp.d_max
    << "], length [" << def.len_min << ", " << def.len_max << "] -> [" << exp.len_min << ", " << exp.len_max << "]";
  return r.outcome(s.str());
}

Outcome criterion_dataset_smoke() {
  Recorder r;
  const fs::path out = scratch("dataset");
  int bundles = 0;
  for (const auto& cat : category_names()) {
    const Shell s = shell("generate --category " + cat + " --seeds 0..249 --format both --quiet --out " + out.string());
    r.expect(s.exit == 0, cat + " generate exit " + std::to_string(s.exit));
    r.expect(s.out.find("generated 250 of 250 " + cat + " assets") != std::string::npos, cat + " summary missing");
    for (std::uint64_t seed = 0; seed < 250; ++seed) {
      char name[64];
      std::snprintf(name, sizeof name, "%s_%04llu", cat.c_str(), static_cast<unsigned long long>(seed));
      const fs::path dir = out / name;
      try {
        const Manifest m = parse_manifest(slurp(dir / "manifest.json"));
        const GeneratedAsset back = regenerate(m);
        const ParsedModel expected = expected_model(back.instance, export_context(back));
        const auto du = compare_models(expected, parse_urdf(dir / "model.urdf"));
        const auto dm = compare_models(expected, parse_mjcf(dir / "model.xml"));
        r.expect(du.empty() && dm.empty(), std::string(name) + " does not round-trip");
        r.expect(slurp(dir / "report.json").find("\"status\": \"ok\"") != std::string::npos,
                 std::string(name) + " report not ok");
        ++bundles;
      } catch (const Error& e) {
        r.expect(false, std::string(name) + ": " + e.what());
      }
    }
  }
  fs::remove_all(out);
  return r.outcome(std::to_string(bundles) + " bundles generated and round-tripped from disk");
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double budget_seconds;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "continuous dimension parity", 1.0, criterion_dof_parity},
      {2, "variation magnitude", 1.0, criterion_variation_magnitude},
      {3, "joint semantics oracle", 30.0, criterion_joint_semantics},
      {4, "composition conformance corpus", 10.0, criterion_conformance},
      {5, "blueprint category invariance", 60.0, criterion_blueprint_invariance},
      {6, "export round trip", 120.0, criterion_export_roundtrip},
      {7, "determinism", 60.0, criterion_determinism},
      {8, "collision sweep soundness and regression", 300.0, criterion_collision},
      {9, "duplicate joints multiplicity", 10.0, criterion_duplicate_multiplicity},
      {10, "distribution control", 60.0, criterion_distribution_control},
      {11, "dataset scale smoke", 1800.0, criterion_dataset_smoke},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > c.budget_seconds) {
      o.pass = false;
      o.detail += " (over the " + std::to_string(static_cast<int>(c.budget_seconds)) + " s budget)";
    }
    failed += !o.pass;
    std::printf("%s %2d %s: %s [%.2f s]\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
