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

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "artigen/builder.hpp"
#include "artigen/graph.hpp"

namespace artigen::detail {

NodeGraph build_door(const ParameterSpace& space, const ParamVector& params);
NodeGraph build_toaster(const ParameterSpace& space, const ParamVector& params);
NodeGraph build_fridge(const ParameterSpace& space, const ParamVector& params);
NodeGraph build_dishwasher(const ParameterSpace& space, const ParamVector& params);
NodeGraph build_lamp(const ParameterSpace& space, const ParamVector& params);

inline constexpr int kRoundSegments = 16;
inline constexpr int kSphereSegments = 12;

/// Geometry helpers over GraphBuilder. Sizes and centres are computed from
/// the sampled values; only selectors, counts and joint limits stay wired to
/// parameters, which keeps the node topology identical for every sample.
class Shop {
 public:
  Shop(const std::string& name, const ParameterSpace& space, const ParamVector& params)
      : b(name), p_(params) {
    b.parameters() = space;
  }

  GraphBuilder b;

  double v(const std::string& name) const { return p_.at(name); }
  int i(const std::string& name) const { return static_cast<int>(std::lround(p_.at(name))); }
  Scalar param(const std::string& name) const { return b.param(name); }

  static ScalarVec3 s3(const Vec3& v) { return {v.x(), v.y(), v.z()}; }

  NodeId box(const Vec3& size, const Vec3& center, const std::string& material = "") {
    return b.translate(b.box(s3(size), material), s3(center));
  }
  NodeId rbox(const Vec3& size, const Vec3& center, double bevel, const std::string& material = "") {
    const double limit = 0.45 * size.minCoeff();
    const double r = std::clamp(bevel, 0.0, limit);
    if (r <= 1e-5) return box(size, center, material);
    return b.translate(b.rounded_box(s3(size), r, material), s3(center));
  }
  /// Cylinder with its axis along 'x', 'y' or 'z'.
  NodeId cyl(double radius, double length, const Vec3& center, char axis, const std::string& material = "",
             int segments = kRoundSegments) {
    const NodeId c = b.cylinder(radius, length, segments, material);
    Pose pose;
    pose.translation = s3(center);
    if (axis == 'x') pose.pitch = M_PI / 2.0;
    if (axis == 'y') pose.roll = M_PI / 2.0;
    return b.transform(c, pose);
  }
  NodeId ngon(double radius, double height, int sides, const Vec3& center, const std::string& material = "") {
    return b.translate(b.ngon_prism(radius, height, static_cast<double>(sides), material), s3(center));
  }
  NodeId sphere(double radius, const Vec3& center, const std::string& material = "") {
    return b.translate(b.sphere(radius, kSphereSegments, material), s3(center));
  }
  NodeId posed(NodeId input, const Vec3& at, double roll, double pitch, double yaw) {
    Pose pose;
    pose.translation = s3(at);
    pose.roll = roll;
    pose.pitch = pitch;
    pose.yaw = yaw;
    return b.transform(input, pose);
  }
  NodeId merge(const std::vector<NodeId>& parts) { return parts.size() == 1 ? parts.front() : b.merge(parts); }
  NodeId part(const std::vector<NodeId>& parts, const std::string& label) { return b.label(merge(parts), label); }

  static JointArgs joint(const Vec3& axis, const Vec3& pivot, Scalar lower, Scalar upper, const std::string& name,
                         const std::string& parent_label, const std::string& child_label) {
    JointArgs a;
    a.axis = axis;
    a.pivot = s3(pivot);
    a.lower = std::move(lower);
    a.upper = std::move(upper);
    a.labels = {name, parent_label, child_label};
    return a;
  }

 private:
  const ParamVector& p_;
};

}  // namespace artigen::detail
