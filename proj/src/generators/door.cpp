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

constexpr double kHandleInset = 0.07;
constexpr double kFloorGap = 0.01;
constexpr double kHingeClearance = 0.003;
constexpr int kLouverSlats = 12;

struct Leaf {
  double x0 = 0.0;  // hinge edge
  double side = 1.0;  // +1 when the leaf extends toward +x from its hinge
  double width = 0.0;
  double z0 = 0.0;
  double height = 0.0;
};

class DoorBuilder {
 public:
  DoorBuilder(const ParameterSpace& space, const ParamVector& params) : s_("door", space, params) {
    W_ = s_.v("width");
    H_ = s_.v("height");
    d_ = s_.v("depth");
    gap_ = s_.v("shrink_width") + kHingeClearance;
  }

  NodeGraph build() {
    GraphBuilder& b = s_.b;
    const NodeId frame = frame_geometry();

    const bool hinge_left = s_.i("hinge_side") == 0;
    Leaf single;
    single.width = W_ - 2.0 * gap_;
    single.side = hinge_left ? 1.0 : -1.0;
    single.x0 = hinge_left ? -W_ / 2.0 + gap_ : W_ / 2.0 - gap_;
    Leaf left, right;
    left.width = right.width = W_ / 2.0 - 2.0 * gap_;
    left.x0 = -W_ / 2.0 + gap_;
    left.side = 1.0;
    right.x0 = W_ / 2.0 - gap_;
    right.side = -1.0;
    for (Leaf* l : {&single, &left, &right}) {
      l->z0 = kFloorGap;
      l->height = H_ - kFloorGap - s_.v("shrink_width");
    }

    const NodeId one = hinged(frame, single);
    const NodeId two = b.merge({hinged(frame, left), hinged(frame, right)});
    return b.finish(b.select(b.sub(s_.param("door_count"), 1.0), {one, two}));
  }

 private:
  NodeId frame_geometry() {
    const double fw = s_.v("door_frame_width");
    const double fd = d_ + 0.03;
    const double jamb_h = H_ + fw;
    return s_.part({s_.box({fw, fd, jamb_h}, {-(W_ + fw) / 2.0, 0.0, jamb_h / 2.0}, "wood"),
                    s_.box({fw, fd, jamb_h}, {(W_ + fw) / 2.0, 0.0, jamb_h / 2.0}, "wood"),
                    s_.box({W_, fd, fw}, {0.0, 0.0, H_ + fw / 2.0}, "wood")},
                   "frame");
  }

  double cx(const Leaf& l) const { return l.x0 + l.side * l.width / 2.0; }
  double handle_x(const Leaf& l) const { return l.x0 + l.side * (l.width - kHandleInset); }
  double handle_z() const { return s_.v("handle_height"); }

  NodeId slab(const Leaf& l) {
    return s_.rbox({l.width, d_, l.height}, {cx(l), 0.0, l.z0 + l.height / 2.0}, s_.v("bevel_width"), "wood");
  }

  NodeId panel_leaf(const Leaf& l) {
    const double m = std::min(s_.v("panel_margin"), 0.3 * l.width);
    const double pw = l.width - 2.0 * m;
    const double ph = (l.height - 3.0 * m) / 2.0;
    const double y = -d_ / 2.0 - 0.003;
    return s_.merge({slab(l), s_.box({pw, 0.006, ph}, {cx(l), y, l.z0 + m + ph / 2.0}, "wood"),
                     s_.box({pw, 0.006, ph}, {cx(l), y, l.z0 + 2.0 * m + 1.5 * ph}, "wood")});
  }

  /// Stiles and rails around an opening, as four boxes.
  std::vector<NodeId> surround(const Leaf& l, double m, double& ow, double& oh) {
    ow = l.width - 2.0 * m;
    oh = l.height - 2.0 * m;
    const double zc = l.z0 + l.height / 2.0;
    return {s_.box({m, d_, l.height}, {cx(l) - (l.width - m) / 2.0, 0.0, zc}, "wood"),
            s_.box({m, d_, l.height}, {cx(l) + (l.width - m) / 2.0, 0.0, zc}, "wood"),
            s_.box({ow, d_, m}, {cx(l), 0.0, l.z0 + m / 2.0}, "wood"),
            s_.box({ow, d_, m}, {cx(l), 0.0, l.z0 + l.height - m / 2.0}, "wood")};
  }

  NodeId glass_leaf(const Leaf& l) {
    double ow = 0.0, oh = 0.0;
    auto parts = surround(l, std::min(s_.v("panel_margin"), 0.3 * l.width), ow, oh);
    parts.push_back(s_.box({ow, d_ / 3.0, oh}, {cx(l), 0.0, l.z0 + l.height / 2.0}, "glass"));
    return s_.merge(parts);
  }

  NodeId louver_leaf(const Leaf& l) {
    double ow = 0.0, oh = 0.0;
    auto parts = surround(l, std::min(s_.v("louver_margin"), 0.3 * l.width), ow, oh);
    const double a = s_.v("louver_angle");
    const double t = s_.v("louver_size");
    const double chord = std::min(s_.v("louver_width"), (d_ - t * std::sin(a)) / std::cos(a));
    const double pitch = oh / kLouverSlats;
    for (int k = 0; k < kLouverSlats; ++k) {
      const double z = l.z0 + (l.height - oh) / 2.0 + pitch * (k + 0.5);
      parts.push_back(s_.posed(s_.b.box({ow, chord, t}, "wood"), {cx(l), 0.0, z}, a, 0.0, 0.0));
    }
    return s_.merge(parts);
  }

  NodeId lever(const Leaf& l) {
    const double x = handle_x(l), z = handle_z();
    const double rose_d = s_.v("lever_depth");
    const double neck_r = s_.v("lever_middle_radius");
    const double neck_d = s_.v("lever_middle_depth");
    const double len = s_.v("lever_length");
    const double y_rose = -d_ / 2.0 - rose_d / 2.0;
    const double y_neck = -d_ / 2.0 - rose_d - neck_d / 2.0;
    const double arm_t = 2.0 * neck_r * (0.8 + 0.4 * s_.v("lever_type"));
    const double arm_d = 0.018;
    const double y_arm = -d_ / 2.0 - rose_d - neck_d + arm_d / 2.0;
    // The arm points back toward the hinge.
    const double arm_x = x - l.side * len / 2.0;
    return s_.part({s_.cyl(s_.v("lever_radius"), rose_d, {x, y_rose, z}, 'y', "metal"),
                    s_.cyl(neck_r, neck_d, {x, y_neck, z}, 'y', "metal"),
                    s_.rbox({len, arm_d, arm_t}, {arm_x, y_arm, z}, 0.5 * s_.v("lever_type") * arm_t, "metal")},
                   "handle");
  }

  NodeId knob(const Leaf& l) {
    const double x = handle_x(l), z = handle_z();
    const double kd = s_.v("knob_depth");
    const double md = s_.v("knob_middle_depth");
    const double base_d = 0.3 * kd;
    double y = -d_ / 2.0;
    const NodeId base = s_.cyl(s_.v("knob_base_radius"), base_d, {x, y - base_d / 2.0, z}, 'y', "metal");
    y -= base_d;
    const NodeId neck = s_.cyl(s_.v("knob_middle_radius"), md, {x, y - md / 2.0, z}, 'y', "metal");
    y -= md;
    const NodeId head = s_.cyl(s_.v("knob_radius"), kd, {x, y - kd / 2.0, z}, 'y', "metal");
    y -= kd;
    const NodeId cap = s_.cyl(s_.v("knob_central_radius"), 0.004, {x, y - 0.002, z}, 'y', "metal");
    return s_.part({base, neck, head, cap}, "handle");
  }

  double bar_length(const Leaf& l) const { return std::min(s_.v("push_bar_length"), 0.85 * l.width); }
  double bar_z() const { return handle_z() + s_.v("push_bar_overall_z_offset"); }
  static constexpr double kBarGap = 0.015;

  NodeId crash_bar(const Leaf& l) {
    const double t = s_.v("push_bar_thickness");
    const double depth = t * s_.v("push_bar_aspect_ratio");
    const double len = bar_length(l) * s_.v("push_bar_length_ratio");
    const double h = t * s_.v("push_bar_height_ratio") + 0.5 * t;
    const double y = -d_ / 2.0 - kBarGap - depth / 2.0;
    return s_.part({s_.rbox({len, depth, h}, {cx(l), y, bar_z()}, 0.2 * h, "metal")}, "handle");
  }

  NodeId crash_bar_housings(const Leaf& l) {
    const double t = s_.v("push_bar_thickness");
    const double depth = t * s_.v("push_bar_aspect_ratio") + kBarGap;
    const double total = bar_length(l);
    const double end = total * s_.v("push_bar_end_length_ratio");
    const double h = t * s_.v("push_bar_end_height_ratio");
    const double inner = total * s_.v("push_bar_length_ratio") / 2.0;
    const double off = std::max(inner + end / 2.0 + 0.004, total / 2.0 - end / 2.0);
    const double y = -d_ / 2.0 - depth / 2.0;
    return s_.merge({s_.box({end, depth, h}, {cx(l) - off, y, bar_z()}, "metal"),
                     s_.box({end, depth, h}, {cx(l) + off, y, bar_z()}, "metal")});
  }

  NodeId pull_bar(const Leaf& l) {
    const double x = handle_x(l), z = handle_z();
    const double size = s_.v("pull_handle_size");
    const double r = s_.v("pull_handle_pull_radius");
    const double standoff = s_.v("pull_handle_depth");
    const double bar_w = s_.v("pull_handle_width");
    const double bar_d = s_.v("pull_handle_bevel_side_length");
    const double bar_len = size + 2.0 * s_.v("pull_handle_extension");
    const double yp = -d_ / 2.0 - standoff / 2.0;
    return s_.part({s_.cyl(r, standoff, {x, yp, z - size / 2.0}, 'y', "metal"),
                    s_.cyl(r, standoff, {x, yp, z + size / 2.0}, 'y', "metal"),
                    s_.rbox({bar_w, bar_d, bar_len}, {x, -d_ / 2.0 - standoff - bar_d / 2.0, z},
                            s_.v("pull_handle_bevel_width"), "metal")},
                   "handle");
  }

  NodeId hinged(NodeId frame, const Leaf& l) {
    GraphBuilder& b = s_.b;
    const NodeId body = b.select(s_.param("door_type"), {louver_leaf(l), glass_leaf(l), panel_leaf(l)});
    const NodeId leaf = b.label(body, "panel");
    const NodeId with_housings = b.merge({leaf, crash_bar_housings(l)});

    const Vec3 pivot(handle_x(l), 0.0, handle_z());
    const double s = l.side;
    const NodeId levered =
        b.revolute(leaf, lever(l), Shop::joint(Vec3::UnitY(), pivot, std::min(0.0, -s * M_PI / 4.0),
                                               std::max(0.0, -s * M_PI / 4.0), "handle_joint", "panel", "handle"));
    const NodeId knobbed = b.revolute(leaf, knob(l),
                                      Shop::joint(Vec3::UnitY(), pivot, 0.0, M_PI / 2.0, "handle_joint", "panel", "handle"));
    const NodeId pulled = b.merge({leaf, pull_bar(l)});
    const double t = s_.v("push_bar_thickness");
    const double h = t * s_.v("push_bar_height_ratio") + 0.5 * t;
    const Vec3 bar_pivot(cx(l), -d_ / 2.0 - kBarGap, bar_z() + h / 2.0);
    const NodeId barred = b.revolute(with_housings, crash_bar(l),
                                     Shop::joint(Vec3::UnitX(), bar_pivot, 0.0, 0.25, "handle_joint", "panel", "handle"));
    const NodeId with_handle = b.select(s_.param("handle_type"), {levered, knobbed, pulled, barred, leaf});

    // Opens toward +y for either hinge side.
    const Vec3 hinge_pivot(l.x0, d_ / 2.0, 0.0);
    return b.revolute(frame, with_handle,
                      Shop::joint(Vec3::UnitZ(), hinge_pivot, std::min(0.0, s * M_PI / 2.0),
                                  std::max(0.0, s * M_PI / 2.0), "hinge", "frame", "panel"));
  }

  Shop s_;
  double W_ = 0.0, H_ = 0.0, d_ = 0.0, gap_ = 0.0;
};

}  // namespace

NodeGraph build_door(const ParameterSpace& space, const ParamVector& params) {
  return DoorBuilder(space, params).build();
}

}  // namespace artigen::detail
