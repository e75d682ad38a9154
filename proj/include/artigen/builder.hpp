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

#include <optional>
#include <string>
#include <vector>

#include "artigen/graph.hpp"

namespace artigen {

struct ScalarVec3 {
  Scalar x = 0.0;
  Scalar y = 0.0;
  Scalar z = 0.0;
};

struct Pose {
  ScalarVec3 translation;
  Scalar roll = 0.0;
  Scalar pitch = 0.0;
  Scalar yaw = 0.0;
};

struct JointArgs {
  Vec3 axis = Vec3::UnitZ();
  ScalarVec3 pivot;
  Scalar lower = 0.0;
  Scalar upper = 0.0;
  std::optional<Scalar> default_value;
  JointLabels labels;
};

/// Duplication either along explicit points or along a one- or
/// two-dimensional pattern: origin + i * step + j * step2.
struct DuplicateArgs {
  JointType type = JointType::kRevolute;
  JointArgs joint;
  std::vector<Vec3> points;
  ScalarVec3 origin;
  ScalarVec3 step;
  ScalarVec3 step2;
  std::optional<Scalar> count;
  std::optional<Scalar> count2;
};

/// Convenience layer over NodeGraph. Math on two constants folds to a
/// constant instead of adding a ScalarMath node.
class GraphBuilder {
 public:
  explicit GraphBuilder(std::string name) : graph_(std::move(name)) {}

  ParameterSpace& parameters() { return graph_.parameters(); }
  /// Reference to a declared parameter; throws kMissingParameter otherwise.
  Scalar param(const std::string& name) const;

  Scalar add(const Scalar& a, const Scalar& b) { return math(MathOp::kAdd, a, b); }
  Scalar sub(const Scalar& a, const Scalar& b) { return math(MathOp::kSub, a, b); }
  Scalar mul(const Scalar& a, const Scalar& b) { return math(MathOp::kMul, a, b); }
  Scalar div(const Scalar& a, const Scalar& b) { return math(MathOp::kDiv, a, b); }
  Scalar min(const Scalar& a, const Scalar& b) { return math(MathOp::kMin, a, b); }
  Scalar max(const Scalar& a, const Scalar& b) { return math(MathOp::kMax, a, b); }
  Scalar half(const Scalar& a) { return mul(a, 0.5); }
  Scalar neg(const Scalar& a) { return mul(a, -1.0); }
  Scalar math(MathOp op, const Scalar& a, const Scalar& b);

  NodeId box(const ScalarVec3& size, const std::string& material = "");
  NodeId rounded_box(const ScalarVec3& size, const Scalar& bevel, const std::string& material = "");
  NodeId cylinder(const Scalar& radius, const Scalar& height, int segments = kDefaultSegments,
                  const std::string& material = "");
  NodeId sphere(const Scalar& radius, int segments = kDefaultSegments, const std::string& material = "");
  NodeId ngon_prism(const Scalar& radius, const Scalar& height, const Scalar& sides, const std::string& material = "");

  NodeId transform(NodeId input, const Pose& pose);
  NodeId translate(NodeId input, const ScalarVec3& offset);
  NodeId merge(const std::vector<NodeId>& inputs);
  NodeId select(const Scalar& selector, const std::vector<NodeId>& options);
  NodeId label(NodeId input, const std::string& label);
  NodeId store_attribute(NodeId input, const std::string& label);

  NodeId revolute(NodeId parent, NodeId child, const JointArgs& args);
  NodeId prismatic(NodeId parent, NodeId child, const JointArgs& args);
  NodeId duplicate(NodeId parent, NodeId child, const DuplicateArgs& args);

  NodeGraph& graph() { return graph_; }
  NodeGraph finish(NodeId output);

 private:
  NodeId primitive(PrimitiveShape shape, std::map<std::string, Scalar> scalars, int segments,
                   const std::string& material);
  static void set_joint(Node& node, const JointArgs& args);

  NodeGraph graph_;
};

}  // namespace artigen
