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

#include "artigen/patterns.hpp"

#include <cmath>
#include <functional>
#include <map>

#include "artigen/builder.hpp"
#include "artigen/error.hpp"

namespace artigen {
namespace {

NodeGraph simple_revolute() {
  GraphBuilder b("simple_revolute");
  const NodeId base = b.translate(b.box({0.4, 0.4, 0.05}), {0.0, 0.0, 0.025});
  const NodeId rod = b.translate(b.box({0.5, 0.04, 0.04}), {0.25, 0.0, 0.1});
  JointArgs hinge;
  hinge.axis = Vec3::UnitZ();
  hinge.pivot = {0.0, 0.0, 0.1};
  hinge.lower = -M_PI;
  hinge.upper = M_PI;
  hinge.labels = {"hinge", "base", "rod"};
  return b.finish(b.revolute(base, rod, hinge));
}

NodeGraph simple_prismatic() {
  GraphBuilder b("simple_prismatic");
  const NodeId panel = b.translate(b.box({0.2, 0.2, 0.05}), {0.0, 0.0, 0.025});
  const NodeId button = b.translate(b.cylinder(0.03, 0.02), {0.0, 0.0, 0.07});
  JointArgs press;
  press.axis = -Vec3::UnitZ();
  press.pivot = {0.0, 0.0, 0.06};
  press.lower = 0.0;
  press.upper = 0.01;
  press.labels = {"press", "panel", "button"};
  return b.finish(b.prismatic(panel, button, press));
}

NodeGraph duplicated_bodies() {
  GraphBuilder b("duplicated_bodies");
  const NodeId top = b.translate(b.box({0.6, 0.6, 0.04}), {0.0, 0.0, 0.02});
  const NodeId knob = b.translate(b.cylinder(0.03, 0.02), {0.0, 0.0, 0.05});
  DuplicateArgs grid;
  grid.type = JointType::kRevolute;
  grid.joint.axis = Vec3::UnitZ();
  grid.joint.lower = 0.0;
  grid.joint.upper = 1.5 * M_PI;
  grid.joint.labels = {"knob_joint", "cooktop", "knob"};
  grid.points = {Vec3(-0.15, -0.15, 0.0), Vec3(0.15, -0.15, 0.0), Vec3(-0.15, 0.15, 0.0), Vec3(0.15, 0.15, 0.0)};
  return b.finish(b.duplicate(top, knob, grid));
}

NodeGraph chained_joints() {
  GraphBuilder b("chained_joints");
  const NodeId base = b.translate(b.box({0.3, 0.3, 0.05}), {0.0, 0.0, 0.025});
  const NodeId lower_rod = b.translate(b.box({0.04, 0.04, 0.4}), {0.0, 0.0, 0.25});
  const NodeId upper_rod = b.translate(b.box({0.4, 0.04, 0.04}), {0.22, 0.0, 0.47});
  JointArgs elbow;
  elbow.axis = Vec3::UnitY();
  elbow.pivot = {0.0, 0.0, 0.47};
  elbow.lower = -0.5;
  elbow.upper = 0.5;
  elbow.labels = {"elbow", "lower_rod", "upper_rod"};
  const NodeId arm = b.revolute(lower_rod, upper_rod, elbow);
  JointArgs turn;
  turn.axis = Vec3::UnitZ();
  turn.pivot = {0.0, 0.0, 0.05};
  turn.lower = -M_PI;
  turn.upper = M_PI;
  turn.labels = {"turntable", "base", ""};
  return b.finish(b.revolute(base, arm, turn));
}

NodeGraph shared_parent() {
  GraphBuilder b("shared_parent");
  const NodeId ball = b.sphere(0.1);
  const NodeId rod_a = b.translate(b.box({0.3, 0.03, 0.03}), {0.26, 0.0, 0.0});
  const NodeId rod_b = b.translate(b.box({0.3, 0.03, 0.03}), {-0.26, 0.0, 0.0});
  JointArgs yaw;
  yaw.axis = Vec3::UnitZ();
  yaw.lower = -0.5;
  yaw.upper = 0.5;
  yaw.labels = {"yaw", "ball", "rod_a"};
  const NodeId first = b.revolute(ball, rod_a, yaw);
  JointArgs pitch;
  pitch.axis = Vec3::UnitY();
  pitch.lower = -0.5;
  pitch.upper = 0.5;
  pitch.labels = {"pitch", "", "rod_b"};
  return b.finish(b.revolute(first, rod_b, pitch));
}

NodeGraph screw_cap() {
  GraphBuilder b("screw_cap");
  const NodeId bottle = b.label(b.translate(b.cylinder(0.04, 0.2), {0.0, 0.0, 0.1}), "bottle");
  const NodeId cap = b.label(b.translate(b.cylinder(0.045, 0.03), {0.0, 0.0, 0.215}), "cap");
  JointArgs twist;
  twist.axis = Vec3::UnitZ();
  twist.pivot = {0.0, 0.0, 0.2};
  twist.lower = 0.0;
  twist.upper = 4.0 * M_PI;
  twist.labels.joint = "twist";
  JointArgs lift;
  lift.axis = Vec3::UnitZ();
  lift.pivot = {0.0, 0.0, 0.2};
  lift.lower = 0.0;
  lift.upper = 0.02;
  lift.labels.joint = "lift";
  const NodeId hinge = b.revolute(bottle, cap, twist);
  const NodeId slide = b.prismatic(bottle, cap, lift);
  return b.finish(b.merge({hinge, slide}));
}

const std::map<std::string, std::function<NodeGraph()>>& registry() {
  static const std::map<std::string, std::function<NodeGraph()>> patterns = {
      {"simple_revolute", simple_revolute}, {"simple_prismatic", simple_prismatic},
      {"duplicated_bodies", duplicated_bodies}, {"chained_joints", chained_joints},
      {"shared_parent", shared_parent},     {"screw_cap", screw_cap},
  };
  return patterns;
}

}  // namespace

std::vector<std::string> composition_pattern_names() {
  return {"simple_revolute", "simple_prismatic", "duplicated_bodies", "chained_joints", "shared_parent", "screw_cap"};
}

NodeGraph composition_pattern(const std::string& name) {
  const auto it = registry().find(name);
  if (it == registry().end()) fail(ErrorCode::kInvalidParameter, "unknown composition pattern '" + name + "'");
  return it->second();
}

NodeGraph colliding_arms_graph() {
  GraphBuilder b("colliding_arms");
  const NodeId base = b.translate(b.box({0.4, 0.4, 0.04}), {0.0, 0.0, 0.02});
  const NodeId arm_a = b.translate(b.box({0.3, 0.04, 0.04}), {0.18, 0.0, 0.1});
  const NodeId arm_b = b.translate(b.box({0.04, 0.3, 0.04}), {0.0, 0.18, 0.1});
  JointArgs fixed;
  fixed.axis = Vec3::UnitZ();
  fixed.pivot = {0.0, 0.0, 0.1};
  fixed.labels = {"arm_a_mount", "base", "arm_a"};
  const NodeId with_a = b.revolute(base, arm_a, fixed);
  JointArgs swing;
  swing.axis = Vec3::UnitZ();
  swing.pivot = {0.0, 0.0, 0.1};
  swing.lower = -3.0;
  swing.upper = 0.0;
  swing.labels = {"arm_b_swing", "", "arm_b"};
  return b.finish(b.revolute(with_a, arm_b, swing));
}

}  // namespace artigen
