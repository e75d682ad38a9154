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
#include <fstream>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

#include "artigen/builder.hpp"
#include "artigen/error.hpp"
#include "artigen/graph.hpp"
#include "artigen/patterns.hpp"

using namespace artigen;

namespace {

bool throws_code(ErrorCode code, auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code() == code;
  }
  return false;
}

bool has_code(const std::vector<Diagnostic>& diags, const std::string& code) {
  for (const auto& d : diags) {
    if (d.code == code) return true;
  }
  return false;
}

// Rodrigues rotation written out component-wise, independent of Eigen's
// quaternion path used by the library.
Vec3 rotate_about(const Vec3& p, const Vec3& pivot, const Vec3& axis, double theta) {
  const Vec3 k = axis.normalized();
  const Vec3 v = p - pivot;
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const double kv = k.x() * v.x() + k.y() * v.y() + k.z() * v.z();
  const Vec3 cross(k.y() * v.z() - k.z() * v.y(), k.z() * v.x() - k.x() * v.z(), k.x() * v.y() - k.y() * v.x());
  return pivot + v * c + cross * s + k * (kv * (1.0 - c));
}

// Rod from x=1..2 hinged at (1,0,0) about +Z on a small base.
NodeGraph hinge_graph(JointType type, Vec3 axis, double lower, double upper) {
  GraphBuilder b("hinge");
  const NodeId base = b.translate(b.box({0.2, 0.2, 0.2}), {-0.5, 0.0, 0.0});
  const NodeId rod = b.translate(b.box({1.0, 0.1, 0.1}), {1.5, 0.0, 0.0});
  JointArgs args;
  args.axis = axis;
  args.pivot = {1.0, 0.0, 0.0};
  args.lower = lower;
  args.upper = upper;
  const NodeId j = type == JointType::kRevolute ? b.revolute(base, rod, args) : b.prismatic(base, rod, args);
  return b.finish(j);
}

std::vector<Vec3> world_vertices(const EvaluatedBody& body, std::size_t link) {
  return body.posed_mesh(link).vertices;
}

}  // namespace

TEST_CASE("add_node assigns fresh ids and normalizes joint axes") {
  NodeGraph g("t");
  Node box;
  box.kind = NodeKind::kPrimitive;
  box.scalars = {{"size_x", 1.0}, {"size_y", 1.0}, {"size_z", 1.0}};
  const NodeId a = g.add_node(box);
  CHECK(g.nodes().size() == 1);
  const NodeId c = g.add_node(box);
  CHECK(g.nodes().size() == 2);
  CHECK(a != c);

  Node joint;
  joint.kind = NodeKind::kJointRevolute;
  joint.axis = Vec3(0, 0, 2);
  joint.inputs = {a, c};
  joint.scalars = {{"lower", 0.0}, {"upper", 1.0}};
  const NodeId j = g.add_node(joint);
  CHECK((g.node(j).axis - Vec3(0, 0, 1)).norm() < 1e-15);

  Node zero_axis = joint;
  zero_axis.axis = Vec3::Zero();
  CHECK(throws_code(ErrorCode::kInvalidParameter, [&] { g.add_node(zero_axis); }));
  Node bad_box = box;
  bad_box.scalars["size_x"] = -1.0;
  CHECK(throws_code(ErrorCode::kInvalidParameter, [&] { g.add_node(bad_box); }));
  Node stray = box;
  stray.scalars["radius"] = 1.0;
  CHECK(throws_code(ErrorCode::kInvalidParameter, [&] { g.add_node(stray); }));
}

TEST_CASE("division by a constant zero is accepted at build time and fails at evaluation") {
  NodeGraph g("div");
  Node div;
  div.kind = NodeKind::kScalarMath;
  div.op = MathOp::kDiv;
  div.scalars = {{"a", 1.0}, {"b", 0.0}};
  const NodeId d = g.add_node(div);
  Node box;
  box.kind = NodeKind::kPrimitive;
  box.scalars = {{"size_x", Scalar::wire(d)}, {"size_y", 1.0}, {"size_z", 1.0}};
  g.set_output(g.add_node(box));
  CHECK(throws_code(ErrorCode::kArithmetic, [&] { evaluate(g, {}); }));
}

TEST_CASE("connect rejects cycles and port type mismatches") {
  GraphBuilder b("wiring");
  const NodeId box = b.box({1.0, 1.0, 1.0});
  Node t;
  t.kind = NodeKind::kTransform;
  NodeGraph& g = b.graph();
  const NodeId tr = g.add_node(t);
  g.connect(box, {tr, "geometry"});
  CHECK(g.node(tr).inputs == std::vector<NodeId>{box});

  const NodeId merge = b.merge({tr});
  CHECK(throws_code(ErrorCode::kGraphCycle, [&] { g.connect(merge, {tr, "geometry"}); }));

  b.parameters().add_continuous("w", 0.0, 1.0);
  const Scalar w = b.add(b.param("w"), 1.0);
  CHECK(throws_code(ErrorCode::kPortType, [&] { g.connect(w.node, {tr, "geometry"}); }));
  CHECK(throws_code(ErrorCode::kPortType, [&] { g.connect(box, {tr, "tx"}); }));
  g.connect(w.node, {tr, "tx"});
  CHECK(g.node(tr).scalars.at("tx").node == w.node);
}

TEST_CASE("joint evaluation matches the closed-form motion") {
  SUBCASE("quarter turn about an offset pivot") {
    const NodeGraph g = hinge_graph(JointType::kRevolute, Vec3::UnitZ(), -M_PI, M_PI);
    const EvaluatedBody body = evaluate(g, {}, JointValues{{"j" + std::to_string(g.output()), M_PI / 2}});
    REQUIRE(body.links.size() == 2);
    // (2,0,0) is the centre of the rod's far face, not a mesh vertex.
    const Vec3 mapped = body.links[1].frame.apply(Vec3(2.0, 0.0, 0.0) - body.links[1].origin);
    CHECK((mapped - Vec3(1.0, 1.0, 0.0)).norm() < 1e-9);
  }
  SUBCASE("zero value leaves the child unposed") {
    const NodeGraph g = hinge_graph(JointType::kRevolute, Vec3::UnitZ(), -1.0, 1.0);
    const EvaluatedBody rest = evaluate(g, {});
    const EvaluatedBody zero = evaluate(g, {}, JointValues{{"j" + std::to_string(g.output()), 0.0}});
    CHECK(world_vertices(rest, 1) == world_vertices(zero, 1));
  }
  SUBCASE("prismatic translation along the axis") {
    const NodeGraph g = hinge_graph(JointType::kPrismatic, Vec3::UnitZ(), 0.0, 0.5);
    const EvaluatedBody rest = evaluate(g, {});
    const EvaluatedBody moved = evaluate(g, {}, JointValues{{"j" + std::to_string(g.output()), 0.2}});
    const auto a = world_vertices(rest, 1);
    const auto c = world_vertices(moved, 1);
    REQUIRE(a.size() == c.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK((c[i] - a[i] - Vec3(0, 0, 0.2)).norm() < 1e-15);
  }
  SUBCASE("random specs against the Rodrigues oracle") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
      const bool revolute = trial % 2 == 0;
      Vec3 axis(u(rng), u(rng), u(rng));
      if (axis.norm() < 1e-3) axis = Vec3::UnitX();
      GraphBuilder b("r");
      const NodeId base = b.box({0.3, 0.3, 0.3});
      const NodeId child = b.translate(b.box({0.2, 0.1, 0.3}), {u(rng), u(rng), u(rng)});
      JointArgs args;
      args.axis = axis;
      const Vec3 pivot(u(rng), u(rng), u(rng));
      args.pivot = {pivot.x(), pivot.y(), pivot.z()};
      args.lower = -2.0;
      args.upper = 2.0;
      const NodeId j = revolute ? b.revolute(base, child, args) : b.prismatic(base, child, args);
      const NodeGraph g = b.finish(j);
      const double q = 2.0 * u(rng);
      const EvaluatedBody rest = evaluate(g, {});
      const EvaluatedBody posed = evaluate(g, {}, JointValues{{"j" + std::to_string(j), q}});
      const auto a = world_vertices(rest, 1);
      const auto c = world_vertices(posed, 1);
      for (std::size_t i = 0; i < a.size(); ++i) {
        const Vec3 expected = revolute ? rotate_about(a[i], pivot, axis, q) : a[i] + q * axis.normalized();
        CHECK((c[i] - expected).norm() < 1e-9);
      }
    }
  }
}

TEST_CASE("evaluating at v then -v composes to the identity") {
  const NodeGraph g = hinge_graph(JointType::kRevolute, Vec3(1, 2, 3), -1.0, 1.0);
  const EvaluatedBody rest = evaluate(g, {});
  const std::string id = "j" + std::to_string(g.output());
  const EvaluatedBody fwd = evaluate(g, {}, JointValues{{id, 0.7}});
  const EvaluatedBody back = evaluate(g, {}, JointValues{{id, -0.7}});
  const RigidTransform round = back.links[1].frame * rest.links[1].frame.inverse() * fwd.links[1].frame;
  const auto a = world_vertices(rest, 1);
  for (const Vec3& v : rest.links[1].mesh.vertices) {
    const Vec3 world = rest.links[1].frame.apply(v);
    CHECK((round.apply(v) - world).norm() < 1e-9);
  }
  CHECK(!a.empty());
}

TEST_CASE("joint values outside the range are rejected") {
  const NodeGraph g = hinge_graph(JointType::kRevolute, Vec3::UnitZ(), -0.5, 0.25);
  const std::string id = "j" + std::to_string(g.output());
  CHECK_NOTHROW(evaluate(g, {}, JointValues{{id, -0.5}}));
  CHECK_NOTHROW(evaluate(g, {}, JointValues{{id, 0.25}}));
  CHECK(throws_code(ErrorCode::kRange, [&] { evaluate(g, {}, JointValues{{id, 0.26}}); }));
  CHECK(throws_code(ErrorCode::kRange, [&] { evaluate(g, {}, JointValues{{id, -0.51}}); }));
  CHECK(throws_code(ErrorCode::kInvalidParameter, [&] { evaluate(g, {}, JointValues{{"j999", 0.0}}); }));
}

TEST_CASE("evaluation reports missing parameters and is repeatable") {
  GraphBuilder b("params");
  b.parameters().add_continuous("w", 0.1, 1.0);
  const NodeGraph g = b.finish(b.box({b.param("w"), 1.0, 1.0}));
  CHECK(throws_code(ErrorCode::kMissingParameter, [&] { evaluate(g, {}); }));
  ParamVector p;
  p.set("w", 0.5);
  const EvaluatedBody one = evaluate(g, p);
  const EvaluatedBody two = evaluate(g, p);
  CHECK(one.links[0].mesh.vertices == two.links[0].mesh.vertices);
  CHECK(compute_aabb(one.links[0].mesh).extents().x() == doctest::Approx(0.5));
}

TEST_CASE("composition patterns validate and evaluate") {
  for (const auto& name : composition_pattern_names()) {
    CAPTURE(name);
    const NodeGraph g = composition_pattern(name);
    const auto diags = validate(g);
    for (const auto& d : diags) MESSAGE(d.code << ": " << d.message);
    CHECK(diags.empty());
    const EvaluatedBody body = evaluate(g, {});
    CHECK(body.links.front().id == body.root);
    if (name == "simple_revolute" || name == "simple_prismatic") {
      CHECK(body.links.size() == 2);
      CHECK(body.joints.size() == 1);
    }
    if (name == "duplicated_bodies") {
      CHECK(body.links.size() == 5);
      CHECK(body.joints.size() == 4);
    }
    if (name == "chained_joints") {
      REQUIRE(body.links.size() == 3);
      CHECK(body.joints[1].parent == body.joints[0].child);
    }
    if (name == "shared_parent") {
      REQUIRE(body.joints.size() == 2);
      CHECK(body.joints[0].parent == body.root);
      CHECK(body.joints[1].parent == body.root);
    }
    if (name == "screw_cap") {
      CHECK(body.links.size() == 2);
      REQUIRE(body.joints.size() == 2);
      CHECK(body.joints[0].child == body.joints[1].child);
      CHECK(composite_joints(g).size() == 1);
    }
  }
  CHECK(throws_code(ErrorCode::kInvalidParameter, [] { composition_pattern("nope"); }));
}

TEST_CASE("chained joints inherit the ancestor motion") {
  const NodeGraph g = composition_pattern("chained_joints");
  const EvaluatedBody body = evaluate(g, {});
  std::string turn;
  std::string elbow;
  for (const auto& j : body.joints) (j.spec.labels.joint == "turntable" ? turn : elbow) = j.id;
  const EvaluatedBody posed = evaluate(g, {}, JointValues{{turn, M_PI / 2}, {elbow, 0.0}});
  const std::size_t tip = body.links.size() - 1;
  // The far end of the upper rod at (0.42, 0, 0.47) swings onto +Y.
  const Vec3 local = Vec3(0.42, 0.0, 0.47) - posed.links[tip].origin;
  CHECK((posed.links[tip].frame.apply(local) - Vec3(0.0, 0.42, 0.47)).norm() < 1e-9);
}

TEST_CASE("validate reports a joint self-loop") {
  GraphBuilder b("loop");
  const NodeId box = b.box({1.0, 1.0, 1.0});
  JointArgs args;
  args.upper = 1.0;
  const NodeGraph g = b.finish(b.revolute(box, box, args));
  CHECK(has_code(validate(g), "joint self-loop"));
}

TEST_CASE("validate reports structural problems") {
  SUBCASE("missing output") {
    NodeGraph g("empty");
    CHECK(has_code(validate(g), "output"));
  }
  SUBCASE("selector that can leave the option range") {
    GraphBuilder b("sel");
    b.parameters().add_count("k", 0, 3);
    const NodeId a = b.box({1.0, 1.0, 1.0});
    const NodeId c = b.sphere(0.5);
    const NodeGraph g = b.finish(b.select(b.param("k"), {a, c}));
    CHECK(has_code(validate(g), "switch-selector"));
  }
  SUBCASE("cycle introduced without connect") {
    GraphBuilder b("cyc");
    const NodeId a = b.box({1.0, 1.0, 1.0});
    const NodeId t = b.translate(a, {1.0, 0.0, 0.0});
    const NodeId m = b.merge({t});
    NodeGraph g = b.finish(m);
    g.mutable_node(t).inputs = {m};
    CHECK(has_code(validate(g), "graph-cycle"));
  }
}

TEST_CASE("expand_duplicates multiplies links and joints by the point count") {
  const NodeGraph g = composition_pattern("simple_revolute");
  const EvaluatedBody body = evaluate(g, {});
  BodyFragment fragment;
  fragment.links = {body.links[1]};
  fragment.links[0].mesh = body.posed_mesh(1);
  fragment.joints = body.joints;
  for (int k = 1; k <= 5; ++k) {
    std::vector<Vec3> points;
    for (int i = 0; i < k; ++i) points.emplace_back(0.1 * i, 0.0, 0.0);
    const BodyFragment out = expand_duplicates(fragment, points);
    CHECK(out.links.size() == static_cast<std::size_t>(k) * fragment.links.size());
    CHECK(out.joints.size() == static_cast<std::size_t>(k) * fragment.joints.size());
    std::set<std::string> ids;
    for (const auto& l : out.links) ids.insert(l.id);
    CHECK(ids.size() == out.links.size());
  }
  const Vec3 origin = Vec3::Zero();
  const BodyFragment single = expand_duplicates(fragment, std::span<const Vec3>(&origin, 1));
  CHECK(single.links[0].mesh.vertices == fragment.links[0].mesh.vertices);
  CHECK(single.links[0].id == fragment.links[0].id + "#0");
  CHECK(single.links[0].label == fragment.links[0].label + "_0");
  CHECK(throws_code(ErrorCode::kInvalidParameter, [&] { expand_duplicates(fragment, {}); }));
}

TEST_CASE("duplication node yields k copies for k points") {
  for (int k = 1; k <= 5; ++k) {
    GraphBuilder b("dup");
    const NodeId top = b.box({1.0, 1.0, 0.1});
    const NodeId knob = b.translate(b.cylinder(0.03, 0.02), {0.0, 0.0, 0.1});
    DuplicateArgs args;
    args.joint.upper = 1.0;
    for (int i = 0; i < k; ++i) args.points.emplace_back(0.1 * i, 0.0, 0.0);
    const NodeGraph g = b.finish(b.duplicate(top, knob, args));
    const EvaluatedBody body = evaluate(g, {});
    CHECK(body.joints.size() == static_cast<std::size_t>(k));
    CHECK(body.links.size() == static_cast<std::size_t>(k) + 1);
  }
}

TEST_CASE("label injection") {
  const NodeGraph g = composition_pattern("simple_revolute");
  const NodeGraph once = inject_label_attributes(g);
  std::size_t added = 0;
  for (const auto& n : once.nodes()) added += n.kind == NodeKind::kStoreAttribute;
  CHECK(added == 2);
  CHECK(inject_label_attributes(once) == once);

  for (const auto& name : composition_pattern_names()) {
    CAPTURE(name);
    const NodeGraph injected = inject_label_attributes(composition_pattern(name));
    CHECK(validate(injected).empty());
    const EvaluatedBody body = evaluate(injected, {});
    std::size_t unlabeled = 0;
    for (const auto& l : body.links) {
      CHECK(l.mesh.face_labels.size() == l.mesh.triangle_count());
      for (auto f : l.mesh.face_labels) unlabeled += f < 0;
    }
    CHECK(unlabeled == 0);
  }
}

TEST_CASE("serialization round-trips and is deterministic") {
  for (const auto& name : composition_pattern_names()) {
    CAPTURE(name);
    const NodeGraph g = inject_label_attributes(composition_pattern(name));
    const std::string text = serialize(g);
    CHECK(serialize(g) == text);
    const NodeGraph back = deserialize(text);
    CHECK(back == g);
    CHECK(serialize(back) == text);
  }
  GraphBuilder b("scalars");
  b.parameters().add_continuous("w", 0.1, 1.0);
  b.parameters().add_discrete("style", {"a", "b"});
  b.parameters().add_count("n", 1, 4);
  const Scalar w = b.mul(b.param("w"), 1.0 / 3.0);
  const NodeGraph g = b.finish(b.box({w, 1e-7, 12345.678}));
  CHECK(deserialize(serialize(g)) == g);
}

TEST_CASE("deserialize reports malformed documents") {
  const std::string text = serialize(composition_pattern("simple_revolute"));
  const std::string truncated = text.substr(0, text.size() / 2);
  try {
    deserialize(truncated);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() > 1);
    CHECK(e.column() >= 1);
  }
  CHECK(throws_code(ErrorCode::kParse, [] { deserialize(""); }));
  CHECK(throws_code(ErrorCode::kParse, [] { deserialize(R"({"schema": 1, "nodes": [], "output": -1, "extra": 1})"); }));
  CHECK(throws_code(ErrorCode::kSchemaVersion, [] { deserialize(R"({"schema": 2, "nodes": [], "output": -1})"); }));
  CHECK(throws_code(ErrorCode::kSchemaVersion, [] {
    deserialize(R"({"schema": 1, "nodes": [{"id": 0, "kind": "Teleport"}], "output": 0})");
  }));
}

TEST_CASE("shipped graph fixtures match the pattern builders") {
  for (const auto& name : composition_pattern_names()) {
    CAPTURE(name);
    std::ifstream in(std::string(ARTIGEN_SOURCE_DIR) + "/fixtures/articulations/" + name + ".json");
    REQUIRE(in.good());
    std::stringstream buffer;
    buffer << in.rdbuf();
    CHECK(deserialize(buffer.str()) == composition_pattern(name));
  }
}
