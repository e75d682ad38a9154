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

#include "artigen/builder.hpp"

#include <algorithm>

#include "artigen/error.hpp"

namespace artigen {

Scalar GraphBuilder::param(const std::string& name) const {
  if (!graph_.parameters().contains(name)) fail(ErrorCode::kMissingParameter, "undeclared parameter '" + name + "'");
  return Scalar::param(name);
}

Scalar GraphBuilder::math(MathOp op, const Scalar& a, const Scalar& b) {
  if (a.is_constant() && b.is_constant()) {
    switch (op) {
      case MathOp::kAdd: return a.value + b.value;
      case MathOp::kSub: return a.value - b.value;
      case MathOp::kMul: return a.value * b.value;
      case MathOp::kDiv:
        if (b.value == 0.0) fail(ErrorCode::kArithmetic, "division by zero");
        return a.value / b.value;
      case MathOp::kMin: return std::min(a.value, b.value);
      case MathOp::kMax: return std::max(a.value, b.value);
    }
  }
  if (op == MathOp::kMul && b.is_constant() && b.value == 1.0) return a;
  if ((op == MathOp::kAdd || op == MathOp::kSub) && b.is_constant() && b.value == 0.0) return a;
  if (op == MathOp::kAdd && a.is_constant() && a.value == 0.0) return b;
  Node n;
  n.kind = NodeKind::kScalarMath;
  n.op = op;
  n.scalars = {{"a", a}, {"b", b}};
  return Scalar::wire(graph_.add_node(std::move(n)));
}

NodeId GraphBuilder::primitive(PrimitiveShape shape, std::map<std::string, Scalar> scalars, int segments,
                               const std::string& material) {
  Node n;
  n.kind = NodeKind::kPrimitive;
  n.shape = shape;
  n.segments = segments;
  n.material = material;
  n.scalars = std::move(scalars);
  return graph_.add_node(std::move(n));
}

NodeId GraphBuilder::box(const ScalarVec3& size, const std::string& material) {
  return primitive(PrimitiveShape::kBox, {{"size_x", size.x}, {"size_y", size.y}, {"size_z", size.z}},
                   kDefaultSegments, material);
}

NodeId GraphBuilder::rounded_box(const ScalarVec3& size, const Scalar& bevel, const std::string& material) {
  return primitive(PrimitiveShape::kRoundedBox,
                   {{"size_x", size.x}, {"size_y", size.y}, {"size_z", size.z}, {"bevel", bevel}}, kDefaultSegments,
                   material);
}

NodeId GraphBuilder::cylinder(const Scalar& radius, const Scalar& height, int segments, const std::string& material) {
  return primitive(PrimitiveShape::kCylinder, {{"radius", radius}, {"height", height}}, segments, material);
}

NodeId GraphBuilder::sphere(const Scalar& radius, int segments, const std::string& material) {
  return primitive(PrimitiveShape::kSphere, {{"radius", radius}}, segments, material);
}

NodeId GraphBuilder::ngon_prism(const Scalar& radius, const Scalar& height, const Scalar& sides,
                                const std::string& material) {
  return primitive(PrimitiveShape::kNgonPrism, {{"radius", radius}, {"height", height}, {"sides", sides}},
                   kDefaultSegments, material);
}

NodeId GraphBuilder::transform(NodeId input, const Pose& pose) {
  Node n;
  n.kind = NodeKind::kTransform;
  n.inputs = {input};
  const std::pair<const char*, const Scalar*> ports[] = {
      {"tx", &pose.translation.x}, {"ty", &pose.translation.y}, {"tz", &pose.translation.z},
      {"roll", &pose.roll},        {"pitch", &pose.pitch},      {"yaw", &pose.yaw}};
  for (const auto& [port, s] : ports) {
    if (!(s->is_constant() && s->value == 0.0)) n.scalars[port] = *s;
  }
  return graph_.add_node(std::move(n));
}

NodeId GraphBuilder::translate(NodeId input, const ScalarVec3& offset) {
  Pose pose;
  pose.translation = offset;
  return transform(input, pose);
}

NodeId GraphBuilder::merge(const std::vector<NodeId>& inputs) {
  Node n;
  n.kind = NodeKind::kMerge;
  n.inputs = inputs;
  return graph_.add_node(std::move(n));
}

NodeId GraphBuilder::select(const Scalar& selector, const std::vector<NodeId>& options) {
  Node n;
  n.kind = NodeKind::kSwitch;
  n.inputs = options;
  n.scalars["selector"] = selector;
  return graph_.add_node(std::move(n));
}

NodeId GraphBuilder::label(NodeId input, const std::string& label) {
  Node n;
  n.kind = NodeKind::kSemanticLabel;
  n.inputs = {input};
  n.label = label;
  return graph_.add_node(std::move(n));
}

NodeId GraphBuilder::store_attribute(NodeId input, const std::string& label) {
  Node n;
  n.kind = NodeKind::kStoreAttribute;
  n.inputs = {input};
  n.label = label;
  return graph_.add_node(std::move(n));
}

void GraphBuilder::set_joint(Node& n, const JointArgs& args) {
  n.axis = args.axis;
  n.labels = args.labels;
  n.scalars["pivot_x"] = args.pivot.x;
  n.scalars["pivot_y"] = args.pivot.y;
  n.scalars["pivot_z"] = args.pivot.z;
  n.scalars["lower"] = args.lower;
  n.scalars["upper"] = args.upper;
  if (args.default_value) n.scalars["default"] = *args.default_value;
}

NodeId GraphBuilder::revolute(NodeId parent, NodeId child, const JointArgs& args) {
  Node n;
  n.kind = NodeKind::kJointRevolute;
  n.inputs = {parent, child};
  set_joint(n, args);
  return graph_.add_node(std::move(n));
}

NodeId GraphBuilder::prismatic(NodeId parent, NodeId child, const JointArgs& args) {
  Node n;
  n.kind = NodeKind::kJointPrismatic;
  n.inputs = {parent, child};
  set_joint(n, args);
  return graph_.add_node(std::move(n));
}

NodeId GraphBuilder::duplicate(NodeId parent, NodeId child, const DuplicateArgs& args) {
  Node n;
  n.kind = NodeKind::kDuplicateJointsOnPoints;
  n.joint_type = args.type;
  n.inputs = {parent, child};
  set_joint(n, args.joint);
  n.points = args.points;
  if (args.count) {
    const std::pair<const char*, const Scalar*> ports[] = {
        {"origin_x", &args.origin.x}, {"origin_y", &args.origin.y}, {"origin_z", &args.origin.z},
        {"step_x", &args.step.x},     {"step_y", &args.step.y},     {"step_z", &args.step.z},
        {"step2_x", &args.step2.x},   {"step2_y", &args.step2.y},   {"step2_z", &args.step2.z}};
    for (const auto& [port, s] : ports) {
      if (!(s->is_constant() && s->value == 0.0)) n.scalars[port] = *s;
    }
    n.scalars["count"] = *args.count;
    if (args.count2) n.scalars["count2"] = *args.count2;
  }
  return graph_.add_node(std::move(n));
}

NodeGraph GraphBuilder::finish(NodeId output) {
  graph_.set_output(output);
  return graph_;
}

}  // namespace artigen
