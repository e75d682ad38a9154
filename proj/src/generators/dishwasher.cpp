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

#include <cmath>

#include "generators/internal.hpp"

namespace artigen::detail {

namespace {

constexpr double kWall = 0.02;
constexpr double kDoorFloor = 0.01;
constexpr int kRackRods = 8;
constexpr double kButtonPitch = 0.03;
constexpr double kButtonTravel = 0.004;

class DishwasherBuilder {
 public:
  DishwasherBuilder(const ParameterSpace& space, const ParamVector& params) : s_("dishwasher", space, params) {
    W_ = s_.v("width");
    D_ = s_.v("depth");
    H_ = s_.v("height");
    dt_ = s_.v("door_thickness");
    front_ = -D_ / 2.0;
    hd_ = H_ - kDoorFloor - 0.002;
  }

  NodeGraph build() {
    GraphBuilder& b = s_.b;
    const NodeId tub = s_.part({s_.box({W_, kWall, H_}, {0.0, D_ / 2.0 - kWall / 2.0, H_ / 2.0}, "metal"),
                                s_.box({kWall, D_ - kWall, H_}, {-W_ / 2.0 + kWall / 2.0, -kWall / 2.0, H_ / 2.0}, "metal"),
                                s_.box({kWall, D_ - kWall, H_}, {W_ / 2.0 - kWall / 2.0, -kWall / 2.0, H_ / 2.0}, "metal"),
                                s_.box({W_ - 2.0 * kWall, D_ - kWall, kWall}, {0.0, -kWall / 2.0, kWall / 2.0}, "metal"),
                                s_.box({W_ - 2.0 * kWall, D_ - kWall, kWall}, {0.0, -kWall / 2.0, H_ - kWall / 2.0}, "metal")},
                               "body");

    DuplicateArgs buttons;
    buttons.type = JointType::kPrismatic;
    buttons.joint = Shop::joint(Vec3::UnitY(), {0.0, 0.0, 0.0}, 0.0, kButtonTravel, "button_joint", "door", "button");
    const double row_x = (s_.v("button_position") - 0.5) * (W_ - 0.3);
    buttons.origin = {row_x - 2.5 * kButtonPitch, 0.0, 0.0};
    buttons.step = {kButtonPitch, 0.0, 0.0};
    buttons.count = s_.param("button_count");
    const NodeId door_asm = b.duplicate(door_geometry(), button_geometry(), buttons);

    const Vec3 pivot(0.0, front_ - dt_, kDoorFloor);
    const NodeId hinged =
        b.revolute(tub, door_asm, Shop::joint(Vec3::UnitX(), pivot, 0.0, M_PI / 2.0, "door_hinge", "body", "door"));
    return b.finish(b.merge({hinged, racks(tub)}));
  }

 private:
  NodeId door_geometry() {
    GraphBuilder& b = s_.b;
    const NodeId panel = s_.rbox({W_ - 0.004, dt_, hd_}, {0.0, front_ - dt_ / 2.0, kDoorFloor + hd_ / 2.0}, 0.004, "metal");
    const double hr = s_.v("handle_radius");
    const double standoff = s_.v("handle_curvature");
    const double len = 0.6 * W_;
    const double z = kDoorFloor + std::min(s_.v("handle_position") * hd_, hd_ - 0.07);
    const double face = front_ - dt_;
    const double y_bar = face - standoff - hr;
    const double post = 1.6 * hr;
    const double px = len / 2.0 - post;
    auto posts = [&] {
      return std::vector<NodeId>{s_.box({post, standoff, post}, {-px, face - standoff / 2.0, z}, "metal"),
                                 s_.box({post, standoff, post}, {px, face - standoff / 2.0, z}, "metal")};
    };
    auto handle = [&](bool round, bool curved) {
      std::vector<NodeId> parts = posts();
      parts.push_back(round ? s_.cyl(hr, len, {0.0, y_bar, z}, 'x', "metal")
                            : s_.box({len, 2.0 * hr, 2.0 * hr}, {0.0, y_bar, z}, "metal"));
      if (curved) {
        parts.push_back(s_.sphere(hr, {-len / 2.0, y_bar, z}, "metal"));
        parts.push_back(s_.sphere(hr, {len / 2.0, y_bar, z}, "metal"));
      } else {
        parts.push_back(s_.box({post, 2.0 * hr, 2.0 * hr}, {-len / 2.0, y_bar, z}, "metal"));
        parts.push_back(s_.box({post, 2.0 * hr, 2.0 * hr}, {len / 2.0, y_bar, z}, "metal"));
      }
      return s_.merge(parts);
    };
    const Scalar curve = s_.param("handle_curvature_kind");
    const NodeId square = b.select(curve, {handle(false, true), handle(false, false)});
    const NodeId circle = b.select(curve, {handle(true, true), handle(true, false)});
    const NodeId grip = b.select(s_.param("handle_type"), {square, circle});
    return b.merge({b.label(panel, "door"), b.label(grip, "handle")});
  }

  /// One button at x = 0 on the control strip.
  NodeId button_geometry() {
    const double size = 0.018;
    const double z = kDoorFloor + hd_ - 0.025;
    const double depth = 0.008;
    const double y = front_ - dt_ - kButtonTravel - depth / 2.0 + 0.002;
    const NodeId sq = s_.box({size, depth, size}, {0.0, y, z}, "plastic");
    const NodeId round = s_.cyl(size / 2.0, depth, {0.0, y, z}, 'y', "plastic");
    return s_.part({s_.b.select(s_.param("button_type"), {sq, round})}, "button");
  }

  NodeId racks(NodeId tub) {
    const double r = s_.v("rack_radius");
    const double rh = s_.v("rack_height");
    const double rd = std::min(s_.v("rack_depth"), D_ - kWall - 0.03);
    const double w = W_ - 2.0 * kWall - 0.04;
    const double y_back = D_ / 2.0 - kWall - 0.005;
    const double y_front = y_back - rd;
    const double yc = (y_back + y_front) / 2.0;
    const double spread = s_.v("density_of_supports_in_rack") * (w - 4.0 * r);

    std::vector<NodeId> rods;
    for (int k = 0; k < kRackRods; ++k) {
      const double x = -spread / 2.0 + spread * k / (kRackRods - 1);
      rods.push_back(s_.cyl(r, rd - 2.0 * r, {x, yc, r}, 'y', "metal", 8));
    }
    for (double y : {y_front + r, y_back - r}) {
      rods.push_back(s_.cyl(r, w, {0.0, y, r}, 'x', "metal", 8));
      rods.push_back(s_.cyl(r, w, {0.0, y, rh - r}, 'x', "metal", 8));
    }
    for (double x : {-w / 2.0 + r, w / 2.0 - r}) {
      rods.push_back(s_.cyl(r, rd - 2.0 * r, {x, yc, rh - r}, 'y', "metal", 8));
      for (double y : {y_front + r, y_back - r}) rods.push_back(s_.cyl(r, rh, {x, y, rh / 2.0}, 'z', "metal", 8));
    }
    const NodeId rack = s_.part(rods, "rack");

    const double z0 = kWall + 0.05;
    const double avail = H_ - 2.0 * kWall - 0.06 - rh;
    const double pitch = std::max(rh + 0.015, s_.v("number_of_racks") * avail / 2.0);
    DuplicateArgs dup;
    dup.type = JointType::kPrismatic;
    const double travel = y_front - (front_ + 0.005);
    dup.joint = Shop::joint(-Vec3::UnitY(), {0.0, 0.0, 0.0}, 0.0, travel, "rack_slide", "body", "rack");
    dup.origin = {0.0, 0.0, z0};
    dup.step = {0.0, 0.0, pitch};
    dup.count = s_.param("rack_count");
    return s_.b.duplicate(tub, rack, dup);
  }

  Shop s_;
  double W_ = 0, D_ = 0, H_ = 0, dt_ = 0, front_ = 0, hd_ = 0;
};

}  // namespace

NodeGraph build_dishwasher(const ParameterSpace& space, const ParamVector& params) {
  return DishwasherBuilder(space, params).build();
}

}  // namespace artigen::detail
