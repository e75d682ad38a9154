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

#include <doctest.h>

#include <cmath>
#include <json.hpp>
#include <set>

#include "adversarial.hpp"
#include "artigen/collision.hpp"
#include "artigen/error.hpp"
#include "artigen/patterns.hpp"

using namespace artigen;
using artigen::testing::instance_of;

namespace {

bool throws_code(ErrorCode code, auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code() == code;
  }
  return false;
}

// Separating-axis overlap depth of two convex meshes. Positive means the
// interiors overlap by at least that much along every tested axis.
double sat_depth(const TriMesh& a, const TriMesh& b) {
  std::vector<Vec3> axes;
  auto add_normals = [&](const TriMesh& m) {
    for (std::size_t i = 0; i < m.triangle_count(); ++i) {
      const Triangle t = m.triangle(i);
      axes.push_back((t[1] - t[0]).cross(t[2] - t[0]));
    }
  };
  add_normals(a);
  add_normals(b);
  auto edges = [](const TriMesh& m) {
    std::vector<Vec3> out;
    for (std::size_t i = 0; i < m.triangle_count(); ++i) {
      const Triangle t = m.triangle(i);
      for (int k = 0; k < 3; ++k) out.push_back(t[(k + 1) % 3] - t[k]);
    }
    return out;
  };
  for (const Vec3& ea : edges(a)) {
    for (const Vec3& eb : edges(b)) axes.push_back(ea.cross(eb));
  }
  double depth = std::numeric_limits<double>::infinity();
  for (Vec3 axis : axes) {
    if (axis.norm() < 1e-12) continue;
    axis.normalize();
    double amin = INFINITY, amax = -INFINITY, bmin = INFINITY, bmax = -INFINITY;
    for (const Vec3& v : a.vertices) {
      amin = std::min(amin, axis.dot(v));
      amax = std::max(amax, axis.dot(v));
    }
    for (const Vec3& v : b.vertices) {
      bmin = std::min(bmin, axis.dot(v));
      bmax = std::max(bmax, axis.dot(v));
    }
    depth = std::min(depth, std::min(amax - bmin, bmax - amin));
  }
  return depth;
}

std::set<std::pair<std::string, std::string>> pairs_of(const CollisionReport& r) {
  std::set<std::pair<std::string, std::string>> out;
  for (const auto& f : r.findings) out.insert({f.link_a, f.link_b});
  return out;
}

AssetInstance two_cubes(double gap) {
  GraphBuilder b("cubes");
  const NodeId left = b.label(b.box({1.0, 1.0, 1.0}), "left");
  const NodeId right = b.label(b.translate(b.box({1.0, 1.0, 1.0}), {1.0 + gap, 0.0, 0.0}), "right");
  JointArgs weld;
  weld.labels.joint = "weld";
  return instance_of(b.finish(b.revolute(left, right, weld)));
}

}  // namespace

TEST_CASE("disjoint cubes are clean") {
  SweepPlan plan = SweepPlan::grid(3);
  plan.filter = PairFilter::kAllPairs;
  const CollisionReport r = sweep_check(two_cubes(1.0), plan);
  CHECK(r.clean);
  CHECK(r.findings.empty());
  CHECK(r.configs_tested == 1);
}

TEST_CASE("touching faces are contact, overlap is penetration") {
  SweepPlan plan = SweepPlan::grid(1);
  plan.filter = PairFilter::kAllPairs;
  CHECK(sweep_check(two_cubes(0.0), plan).clean);
  CHECK(sweep_check(two_cubes(1e-7), plan).clean);
  const AssetInstance deep = two_cubes(-0.1);
  const CollisionReport r = sweep_check(deep, plan);
  REQUIRE(r.findings.size() == 1);
  CHECK(recheck_finding(deep, r.findings[0], plan.tolerance));
  // The same pair is jointed, so the default filter skips it.
  CHECK(sweep_check(deep, SweepPlan::grid(1)).clean);
}

TEST_CASE("colliding arms report a re-checkable witness mid range") {
  const AssetInstance inst = instance_of(colliding_arms_graph());
  const CollisionReport r = sweep_check(inst, SweepPlan::grid(3));
  REQUIRE(r.findings.size() == 1);
  CHECK_FALSE(r.clean);
  CHECK(r.configs_tested == 3);
  const auto& f = r.findings[0];
  CHECK(recheck_finding(inst, f, 1e-6));
  const InstanceJoint& swing = inst.joints[1];
  CHECK(f.config.at(swing.id) == doctest::Approx(-1.5));
  const auto doc = nlohmann::json::parse(report_json(inst, r, SweepPlan::grid(3)));
  CHECK(doc["clean"] == false);
  CHECK(doc["findings"].size() == 1);
  CHECK(doc["findings"][0]["label_b"] == "arm_b");
}

TEST_CASE("grid(1) equals check_at(defaults)") {
  for (const auto& inst : artigen::testing::adversarial_set(20)) {
    const CollisionReport sweep = sweep_check(inst, SweepPlan::grid(1));
    const CollisionReport single = check_at(inst, inst.defaults());
    REQUIRE(sweep.findings.size() == single.findings.size());
    for (std::size_t i = 0; i < sweep.findings.size(); ++i) {
      CHECK(sweep.findings[i].config == single.findings[i].config);
      CHECK(sweep.findings[i].witness == single.findings[i].witness);
    }
  }
}

TEST_CASE("check_at rejects out-of-range and unknown joints") {
  const AssetInstance inst = instance_of(colliding_arms_graph());
  const std::string swing = inst.joints[1].id;
  CHECK(throws_code(ErrorCode::kRange, [&] { check_at(inst, {{swing, 0.5}}); }));
  CHECK(throws_code(ErrorCode::kInvalidParameter, [&] { check_at(inst, {{"nope", 0.0}}); }));
  CHECK(check_at(inst, {{swing, 0.0}}).clean);
  CHECK_FALSE(check_at(inst, {{swing, -1.5}}).clean);
}

TEST_CASE("plan validation and configuration cap") {
  CHECK(throws_code(ErrorCode::kInvalidParameter, [] { check_plan(SweepPlan::grid(0)); }));
  SweepPlan bad;
  bad.tolerance = -1.0;
  CHECK(throws_code(ErrorCode::kInvalidParameter, [&] { check_plan(bad); }));

  // A serial chain couples every joint to the end links, so the plan is
  // the full product of all eight grids.
  GraphBuilder b("chain");
  NodeId tip = b.translate(b.box({0.02, 0.02, 0.1}), {0.0, 0.0, 0.85});
  for (int i = 7; i >= 0; --i) {
    const NodeId link = b.translate(b.box({0.02, 0.02, 0.1}), {0.0, 0.0, 0.05 + 0.1 * i});
    JointArgs j;
    j.axis = Vec3::UnitY();
    j.pivot = {0.0, 0.0, 0.1 * (i + 1)};
    j.lower = -0.1;
    j.upper = 0.1;
    tip = b.revolute(link, tip, j);
  }
  const AssetInstance inst = instance_of(b.finish(tip));
  REQUIRE(inst.joints.size() == 8);
  CHECK(throws_code(ErrorCode::kPlanTooLarge, [&] { sweep_check(inst, SweepPlan::grid(10)); }));
  CHECK(plan_size(inst, SweepPlan::grid(4)) == 65536);
  CHECK(sweep_check(inst, SweepPlan::random(200, 3)).configs_tested == 200);

  // Sibling joints only pair up two at a time: the base config, eight single
  // sweeps and 28 pairwise grids.
  GraphBuilder s("siblings");
  const NodeId plate = s.box({1.0, 1.0, 0.02});
  const NodeId knob = s.translate(s.cylinder(0.02, 0.02), {0.0, 0.0, 0.03});
  DuplicateArgs dup;
  dup.joint.lower = 0.0;
  dup.joint.upper = 1.0;
  for (int i = 0; i < 8; ++i) dup.points.push_back(Vec3(-0.4 + 0.1 * i, 0.0, 0.0));
  const AssetInstance knobs = instance_of(s.finish(s.duplicate(plate, knob, dup)));
  CHECK(plan_size(knobs, SweepPlan::grid(10)) == 1 + 8 * 9 + 28 * 81);
  CHECK(sweep_check(knobs, SweepPlan::grid(10)).configs_tested == 1 + 8 * 9 + 28 * 81);
}

TEST_CASE("adversarial set: witnesses re-verify and agree with a separating-axis oracle") {
  int with_findings = 0;
  for (const auto& inst : artigen::testing::adversarial_set(50)) {
    CAPTURE(inst.name);
    const CollisionReport r = sweep_check(inst, SweepPlan::grid(7));
    with_findings += !r.clean;
    for (const auto& f : r.findings) {
      CHECK(recheck_finding(inst, f, 1e-6));
      const auto frames = forward_kinematics(inst, f.config);
      const TriMesh a = apply_transform(inst.find_link(f.link_a)->mesh, frames.at(f.link_a));
      const TriMesh b = apply_transform(inst.find_link(f.link_b)->mesh, frames.at(f.link_b));
      CHECK(sat_depth(a, b) > 0.0);
    }
    // Face-contact fixtures never penetrate.
    if (inst.name.back() == '2' || inst.name.back() == '7') CHECK(r.clean);
  }
  CHECK(with_findings >= 10);
}

TEST_CASE("broadphase never changes findings") {
  for (const auto& inst : artigen::testing::adversarial_set(25)) {
    SweepPlan on = SweepPlan::grid(5);
    SweepPlan off = on;
    off.broadphase = false;
    const CollisionReport a = sweep_check(inst, on);
    const CollisionReport b = sweep_check(inst, off);
    REQUIRE(a.findings.size() == b.findings.size());
    for (std::size_t i = 0; i < a.findings.size(); ++i) {
      CHECK(a.findings[i].config == b.findings[i].config);
      CHECK(a.findings[i].witness == b.findings[i].witness);
    }
  }
}

TEST_CASE("finer aligned grids find a superset of pairs") {
  for (const auto& inst : artigen::testing::adversarial_set(25)) {
    for (int n : {2, 3, 4}) {
      const auto coarse = pairs_of(sweep_check(inst, SweepPlan::grid(n)));
      const auto fine = pairs_of(sweep_check(inst, SweepPlan::grid(2 * n - 1)));
      for (const auto& p : coarse) CHECK(fine.count(p) == 1);
    }
  }
}

TEST_CASE("findings are unordered pairs") {
  for (const auto& inst : artigen::testing::adversarial_set(15)) {
    SweepPlan plan = SweepPlan::grid(5);
    plan.filter = PairFilter::kAllPairs;
    for (const auto& f : sweep_check(inst, plan).findings) {
      CHECK(f.link_a != f.link_b);
      const auto& links = inst.links;
      const auto ia = std::find_if(links.begin(), links.end(), [&](auto& l) { return l.id == f.link_a; });
      const auto ib = std::find_if(links.begin(), links.end(), [&](auto& l) { return l.id == f.link_b; });
      CHECK(ia < ib);
    }
  }
}

TEST_CASE("random plans are reproducible") {
  const AssetInstance inst = instance_of(colliding_arms_graph());
  const CollisionReport a = sweep_check(inst, SweepPlan::random(64, 11));
  const CollisionReport b = sweep_check(inst, SweepPlan::random(64, 11));
  REQUIRE(a.findings.size() == b.findings.size());
  CHECK_FALSE(a.clean);
  for (std::size_t i = 0; i < a.findings.size(); ++i) CHECK(a.findings[i].config == b.findings[i].config);
}

TEST_CASE("screw cap stays clean across its travel") {
  const AssetInstance inst = instance_of(composition_pattern("screw_cap"));
  CHECK(sweep_check(inst, SweepPlan::grid(5)).clean);
  JointConfig open = inst.defaults();
  for (const auto& j : inst.joints) open[j.id] = j.spec.upper;
  CHECK(check_at(inst, open).clean);
  for (const auto& name : composition_pattern_names()) {
    CAPTURE(name);
    CHECK(check_at(instance_of(composition_pattern(name)), {}).clean);
  }
}
