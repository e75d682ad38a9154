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

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <random>
#include <set>

#include <json.hpp>

#include "artigen/collision.hpp"
#include "artigen/error.hpp"

namespace artigen {
namespace {

struct PairTask {
  std::size_t a = 0;  // link indices, a < b
  std::size_t b = 0;
  std::vector<std::size_t> joints;  // joints moving a relative to b
};

// Joint index chain from a link up to the root, child side first.
std::vector<std::size_t> path_to_root(const AssetInstance& inst, const std::string& link,
                                      const std::map<std::string, std::size_t>& joint_into) {
  std::vector<std::size_t> out;
  std::string at = link;
  for (auto it = joint_into.find(at); it != joint_into.end(); it = joint_into.find(at)) {
    out.push_back(it->second);
    at = inst.joints[it->second].parent;
  }
  return out;
}

std::vector<PairTask> pair_tasks(const AssetInstance& inst, PairFilter filter) {
  std::map<std::string, std::size_t> joint_into;
  for (std::size_t i = 0; i < inst.joints.size(); ++i) joint_into[inst.joints[i].child] = i;

  // Passthrough links are serialization helpers, so adjacency looks through them.
  auto physical_parent = [&](const std::string& child) -> std::string {
    auto it = joint_into.find(child);
    if (it == joint_into.end()) return "";
    std::string parent = inst.joints[it->second].parent;
    while (true) {
      const InstanceLink* l = inst.find_link(parent);
      if (l == nullptr || !l->passthrough) break;
      it = joint_into.find(parent);
      if (it == joint_into.end()) break;
      parent = inst.joints[it->second].parent;
    }
    return parent;
  };

  std::vector<PairTask> tasks;
  for (std::size_t a = 0; a < inst.links.size(); ++a) {
    if (inst.links[a].mesh.empty()) continue;
    for (std::size_t b = a + 1; b < inst.links.size(); ++b) {
      if (inst.links[b].mesh.empty()) continue;
      const std::string& ia = inst.links[a].id;
      const std::string& ib = inst.links[b].id;
      if (filter == PairFilter::kAdjacentExcluded && (physical_parent(ia) == ib || physical_parent(ib) == ia)) {
        continue;
      }
      std::vector<std::size_t> pa = path_to_root(inst, ia, joint_into);
      std::vector<std::size_t> pb = path_to_root(inst, ib, joint_into);
      // Drop the shared chain above the common ancestor.
      while (!pa.empty() && !pb.empty() && pa.back() == pb.back()) {
        pa.pop_back();
        pb.pop_back();
      }
      PairTask t{a, b, {}};
      t.joints.insert(t.joints.end(), pa.begin(), pa.end());
      t.joints.insert(t.joints.end(), pb.begin(), pb.end());
      std::sort(t.joints.begin(), t.joints.end());
      tasks.push_back(std::move(t));
    }
  }
  return tasks;
}

double unit_draw(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

struct PreparedMesh {
  TriMesh mesh;
  std::vector<Aabb> boxes;
  Aabb bounds;
};

PreparedMesh prepare(const TriMesh& local, const RigidTransform& frame, bool broadphase) {
  PreparedMesh p;
  p.mesh = apply_transform(local, frame);
  p.bounds = compute_aabb(p.mesh);
  if (broadphase) {
    p.boxes.reserve(p.mesh.triangle_count());
    for (std::size_t i = 0; i < p.mesh.triangle_count(); ++i) p.boxes.push_back(compute_aabb(p.mesh.triangle(i)));
  }
  return p;
}

// Moves the triangle against its normal by `depth` and offsets its edges
// inward by `inset`. Returns nothing when the inset swallows the triangle.
std::optional<Triangle> shrunk(const Triangle& t, double depth, double inset) {
  const Vec3 n = (t[1] - t[0]).cross(t[2] - t[0]);
  const double twice_area = n.norm();
  if (twice_area == 0.0) return std::nullopt;
  const double ea = (t[2] - t[1]).norm();
  const double eb = (t[0] - t[2]).norm();
  const double ec = (t[1] - t[0]).norm();
  const double perimeter = ea + eb + ec;
  const double inradius = twice_area / perimeter;
  if (inradius <= inset) return std::nullopt;
  const Vec3 incenter = (ea * t[0] + eb * t[1] + ec * t[2]) / perimeter;
  const double k = (inradius - inset) / inradius;
  const Vec3 shift = -depth / twice_area * n;
  Triangle out;
  for (int i = 0; i < 3; ++i) out[i] = incenter + k * (t[i] - incenter) + shift;
  return out;
}

bool safe_intersect(const Triangle& a, const Triangle& b) {
  try {
    return triangles_intersect(a, b);
  } catch (const Error&) {
    return false;  // degenerate slivers carry no volume
  }
}

std::optional<std::pair<std::size_t, std::size_t>> first_witness(const PreparedMesh& a, const PreparedMesh& b,
                                                                 const SweepPlan& plan) {
  if (plan.broadphase && !a.bounds.overlaps(b.bounds, plan.tolerance)) return std::nullopt;
  for (std::size_t i = 0; i < a.mesh.triangle_count(); ++i) {
    if (plan.broadphase && !a.boxes[i].overlaps(b.bounds, plan.tolerance)) continue;
    const Triangle ta = a.mesh.triangle(i);
    for (std::size_t j = 0; j < b.mesh.triangle_count(); ++j) {
      if (plan.broadphase && !a.boxes[i].overlaps(b.boxes[j], plan.tolerance)) continue;
      if (triangles_penetrate(ta, b.mesh.triangle(j), plan.tolerance)) return std::make_pair(i, j);
    }
  }
  return std::nullopt;
}

bool config_less(const AssetInstance& inst, const JointConfig& x, const JointConfig& y) {
  for (const auto& j : inst.joints) {
    const double vx = x.at(j.id);
    const double vy = y.at(j.id);
    if (vx != vy) return vx < vy;
  }
  return false;
}

void sort_findings(const AssetInstance& inst, std::vector<CollisionFinding>& findings) {
  std::map<std::string, std::size_t> order;
  for (std::size_t i = 0; i < inst.links.size(); ++i) order[inst.links[i].id] = i;
  std::stable_sort(findings.begin(), findings.end(), [&](const CollisionFinding& x, const CollisionFinding& y) {
    if (config_less(inst, x.config, y.config)) return true;
    if (config_less(inst, y.config, x.config)) return false;
    return std::make_pair(order[x.link_a], order[x.link_b]) < std::make_pair(order[y.link_a], order[y.link_b]);
  });
}

// Tests each pair at each config, one finding per pair and config.
void test_pairs(const AssetInstance& inst, const std::vector<PairTask>& tasks, const std::vector<JointConfig>& configs,
                const SweepPlan& plan, std::vector<CollisionFinding>& out) {
  for (const JointConfig& config : configs) {
    const auto frames = forward_kinematics(inst, config);
    std::vector<std::optional<PreparedMesh>> posed(inst.links.size());
    auto at = [&](std::size_t i) -> const PreparedMesh& {
      if (!posed[i]) posed[i] = prepare(inst.links[i].mesh, frames.at(inst.links[i].id), plan.broadphase);
      return *posed[i];
    };
    for (const PairTask& task : tasks) {
      if (const auto w = first_witness(at(task.a), at(task.b), plan)) {
        out.push_back({inst.links[task.a].id, inst.links[task.b].id, config, *w});
      }
    }
  }
}

}  // namespace

void check_plan(const SweepPlan& plan) {
  if (plan.samples < 1) fail(ErrorCode::kInvalidParameter, "sweep sample count must be at least 1");
  if (!(plan.tolerance >= 0.0)) fail(ErrorCode::kInvalidParameter, "contact tolerance must be non-negative");
}

std::vector<std::vector<double>> grid_samples(const AssetInstance& instance, int n) {
  std::vector<std::vector<double>> out;
  for (const auto& j : instance.joints) {
    const JointSpec& s = j.spec;
    if (n == 1 || s.fixed()) {
      out.push_back({s.fixed() ? s.lower : s.default_value});
      continue;
    }
    std::vector<double> values;
    for (int i = 0; i < n; ++i) {
      values.push_back(i == n - 1 ? s.upper : s.lower + (s.upper - s.lower) * i / (n - 1));
    }
    out.push_back(std::move(values));
  }
  return out;
}

namespace {

using TaskGroups = std::map<std::vector<std::size_t>, std::vector<PairTask>>;

TaskGroups group_tasks(const std::vector<PairTask>& tasks) {
  TaskGroups groups;
  for (const PairTask& t : tasks) groups[t.joints].push_back(t);
  return groups;
}

[[noreturn]] void too_large() {
  fail(ErrorCode::kPlanTooLarge, "sweep covers more than " + std::to_string(kMaxSweepConfigs) +
                                     " configurations; use the random strategy with fewer samples");
}

// Visits every assignment of the group's joints, the others at index 0.
template <typename Fn>
void for_each_assignment(const std::vector<std::size_t>& joints, const std::vector<std::vector<double>>& grid,
                         Fn&& fn) {
  std::vector<std::uint32_t> digits(grid.size(), 0);
  while (true) {
    fn(digits);
    std::size_t k = 0;
    for (; k < joints.size(); ++k) {
      if (++digits[joints[k]] < grid[joints[k]].size()) break;
      digits[joints[k]] = 0;
    }
    if (k == joints.size()) return;
  }
}

// Distinct configurations posed by a grid sweep: the union over pair groups.
std::uint64_t grid_union_size(const TaskGroups& groups, const std::vector<std::vector<double>>& grid) {
  for (const auto& [joints, tasks] : groups) {
    std::uint64_t product = 1;
    for (std::size_t j : joints) {
      product *= grid[j].size();
      if (product > kMaxSweepConfigs) too_large();
    }
  }
  std::set<std::vector<std::uint32_t>> seen;
  seen.insert(std::vector<std::uint32_t>(grid.size(), 0));
  for (const auto& [joints, tasks] : groups) {
    for_each_assignment(joints, grid, [&](const std::vector<std::uint32_t>& d) {
      seen.insert(d);
      if (seen.size() > kMaxSweepConfigs) too_large();
    });
  }
  return seen.size();
}

}  // namespace

std::uint64_t plan_size(const AssetInstance& instance, const SweepPlan& plan) {
  check_plan(plan);
  if (plan.strategy == SampleStrategy::kRandom) {
    if (static_cast<std::uint64_t>(plan.samples) > kMaxSweepConfigs) too_large();
    return static_cast<std::uint64_t>(plan.samples);
  }
  return grid_union_size(group_tasks(pair_tasks(instance, plan.filter)), grid_samples(instance, plan.samples));
}

CollisionReport sweep_check(const AssetInstance& instance, const SweepPlan& plan) {
  CollisionReport report;
  report.configs_tested = plan_size(instance, plan);
  const std::vector<PairTask> tasks = pair_tasks(instance, plan.filter);

  if (plan.strategy == SampleStrategy::kRandom) {
    std::mt19937_64 rng(plan.seed);
    std::vector<JointConfig> configs;
    for (int i = 0; i < plan.samples; ++i) {
      JointConfig c;
      for (const auto& j : instance.joints) {
        const double u = unit_draw(rng);
        c[j.id] = j.spec.fixed() ? j.spec.lower : std::min(j.spec.upper, j.spec.lower + u * (j.spec.upper - j.spec.lower));
      }
      configs.push_back(std::move(c));
    }
    test_pairs(instance, tasks, configs, plan, report.findings);
  } else {
    const auto grid = grid_samples(instance, plan.samples);
    for (const auto& [joints, group] : group_tasks(tasks)) {
      std::vector<JointConfig> configs;
      for_each_assignment(joints, grid, [&](const std::vector<std::uint32_t>& d) {
        JointConfig c;
        for (std::size_t i = 0; i < instance.joints.size(); ++i) c[instance.joints[i].id] = grid[i][d[i]];
        configs.push_back(std::move(c));
      });
      test_pairs(instance, group, configs, plan, report.findings);
    }
  }
  sort_findings(instance, report.findings);
  report.clean = report.findings.empty();
  return report;
}

CollisionReport check_at(const AssetInstance& instance, const JointConfig& config, const SweepPlan& plan) {
  check_plan(plan);
  JointConfig full = instance.defaults();
  for (const auto& [id, value] : config) {
    const InstanceJoint* j = instance.find_joint(id);
    if (j == nullptr) fail(ErrorCode::kInvalidParameter, "unknown joint '" + id + "'");
    if (!std::isfinite(value) || value < j->spec.lower || value > j->spec.upper) {
      fail(ErrorCode::kRange, "joint " + id + " value is outside [" + std::to_string(j->spec.lower) + ", " +
                                  std::to_string(j->spec.upper) + "]");
    }
    full[id] = value;
  }
  CollisionReport report;
  report.configs_tested = 1;
  test_pairs(instance, pair_tasks(instance, plan.filter), {full}, plan, report.findings);
  sort_findings(instance, report.findings);
  report.clean = report.findings.empty();
  return report;
}

bool triangles_penetrate(const Triangle& a, const Triangle& b, double tolerance) {
  // Outward winding makes the normal shift move each face into its own solid,
  // so faces in contact or overlapping by less than the tolerance separate.
  // The smaller in-plane inset keeps coplanar neighbours that only share an
  // edge apart while overlaps deeper than the tolerance still meet.
  if (tolerance == 0.0) return safe_intersect(a, b);
  const auto sa = shrunk(a, tolerance, 0.5 * tolerance);
  const auto sb = shrunk(b, tolerance, 0.5 * tolerance);
  return sa && sb && safe_intersect(*sa, *sb);
}

bool recheck_finding(const AssetInstance& instance, const CollisionFinding& finding, double tolerance) {
  const InstanceLink* a = instance.find_link(finding.link_a);
  const InstanceLink* b = instance.find_link(finding.link_b);
  if (a == nullptr || b == nullptr) return false;
  if (finding.witness.first >= a->mesh.triangle_count() || finding.witness.second >= b->mesh.triangle_count()) {
    return false;
  }
  const auto frames = forward_kinematics(instance, finding.config);
  const TriMesh pa = apply_transform(a->mesh, frames.at(a->id));
  const TriMesh pb = apply_transform(b->mesh, frames.at(b->id));
  return triangles_penetrate(pa.triangle(finding.witness.first), pb.triangle(finding.witness.second), tolerance);
}

std::string report_json(const AssetInstance& instance, const CollisionReport& report, const SweepPlan& plan) {
  nlohmann::ordered_json doc;
  doc["configs_tested"] = report.configs_tested;
  doc["clean"] = report.clean;
  nlohmann::ordered_json p;
  p["strategy"] = plan.strategy == SampleStrategy::kGrid ? "grid" : "random";
  p["samples"] = plan.samples;
  if (plan.strategy == SampleStrategy::kRandom) p["seed"] = plan.seed;
  p["pairs"] = plan.filter == PairFilter::kAllPairs ? "all" : "adjacent-excluded";
  p["tolerance"] = plan.tolerance;
  doc["plan"] = p;
  nlohmann::ordered_json findings = nlohmann::ordered_json::array();
  for (const auto& f : report.findings) {
    nlohmann::ordered_json item;
    const InstanceLink* a = instance.find_link(f.link_a);
    const InstanceLink* b = instance.find_link(f.link_b);
    item["link_a"] = f.link_a;
    item["link_b"] = f.link_b;
    item["label_a"] = a != nullptr ? a->label : "";
    item["label_b"] = b != nullptr ? b->label : "";
    nlohmann::ordered_json joints = nlohmann::ordered_json::object();
    for (const auto& j : instance.joints) joints[j.id] = f.config.at(j.id);
    item["joints"] = joints;
    item["witness"] = {f.witness.first, f.witness.second};
    findings.push_back(item);
  }
  doc["findings"] = findings;
  return doc.dump(2) + "\n";
}

}  // namespace artigen
