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

#include <array>
#include <cmath>

#include "generators/internal.hpp"

namespace artigen::detail {

namespace {

constexpr double kBarSwing = 0.5;
constexpr double kBarSlide = 0.08;
constexpr double kHeadTilt = 0.4;
constexpr double kStringPull = 0.02;
constexpr int kMaxBars = 3;

class LampBuilder {
 public:
  LampBuilder(const ParameterSpace& space, const ParamVector& params) : s_("lamp", space, params) {
    r_ = s_.v("radius");
    gap_y_ = 2.0 * r_ + 0.006;
    bh_ = s_.v("base_height");
    top_ = bh_ + s_.v("height");
    len_ = {s_.v("length_of_bar_1"), s_.v("length_of_bar_2"), 0.0};
    len_[2] = 0.5 * (len_[0] + len_[1]);
    pivot_z_[0] = top_;
    pivot_z_[1] = pivot_z_[0] + s_.v("location_of_bar_2_joint_on_bar_1") * len_[0];
    pivot_z_[2] = pivot_z_[1] + s_.v("location_of_bar_3_joint_on_bar_2") * len_[1];
    socket_r_ = r_ + s_.v("rack_thickness") + 0.004;
  }

  NodeGraph build() {
    GraphBuilder& b = s_.b;
    const NodeId base = base_with_switch();

    std::array<NodeId, kMaxBars> bars{};
    for (int j = 0; j < kMaxBars; ++j) bars[j] = bar(j);

    std::vector<NodeId> options;
    for (int k = 0; k <= kMaxBars; ++k) {
      const double tip = k == 0 ? top_ : pivot_z_[k - 1] + len_[k - 1];
      const Vec3 head_pivot(0.0, y_of(k + 1), tip);
      const NodeId parent = k == 0 ? base : bars[k - 1];
      NodeId x = b.revolute(parent, head_with_switch(k, tip),
                            Shop::joint(Vec3::UnitY(), head_pivot, -kHeadTilt, kHeadTilt, "head_joint",
                                        k == 0 ? "base" : "rod", "head"));
      for (int j = k; j >= 1; --j) {
        const NodeId up = j == 1 ? base : bars[j - 2];
        const std::string up_label = j == 1 ? "base" : "rod";
        const Vec3 pivot(0.0, y_of(j), pivot_z_[j - 1]);
        const NodeId swing = b.revolute(up, x, Shop::joint(Vec3::UnitY(), pivot, -kBarSwing, kBarSwing,
                                                           "segment_joint", up_label, "rod"));
        const NodeId slide =
            b.prismatic(up, x, Shop::joint(Vec3::UnitZ(), pivot, 0.0, kBarSlide, "segment_joint", up_label, "rod"));
        x = b.select(s_.param("segment_" + std::to_string(j) + "_joint"), {swing, slide});
      }
      options.push_back(x);
    }
    return b.finish(b.select(s_.param("arm_segments"), options));
  }

 private:
  double y_of(int slot) const { return slot * gap_y_; }

  NodeId bar(int j) {
    const double z0 = pivot_z_[j];
    const double y = y_of(j + 1);
    const double y_prev = y_of(j);
    const double hub_len = y + r_ - y_prev;
    return s_.part({s_.cyl(r_, len_[j], {0.0, y, z0 + len_[j] / 2.0}, 'z', "metal"),
                    s_.cyl(0.9 * r_, hub_len, {0.0, y_prev + hub_len / 2.0, z0}, 'y', "metal")},
                   "rod");
  }

  NodeId head(int k, double tip) {
    const double y = y_of(k + 1);
    const double rh = s_.v("rack_height");
    const double sh = s_.v("shade_height");
    const int sides = static_cast<int>(std::lround(s_.v("number_of_sides_on_shade")));
    const double hub_len = y + socket_r_ - y_of(k);
    return s_.part({s_.cyl(0.9 * r_, hub_len, {0.0, y_of(k) + hub_len / 2.0, tip}, 'y', "metal"),
                    s_.cyl(socket_r_, rh, {0.0, y, tip + rh / 2.0}, 'z', "metal"),
                    s_.ngon(s_.v("top_radius"), sh / 2.0, sides, {0.0, y, tip + rh + sh / 4.0}, "plastic"),
                    s_.ngon(s_.v("bottom_radius"), sh / 2.0, sides, {0.0, y, tip + rh + 0.75 * sh}, "plastic")},
                   "head");
  }

  /// Switch parts on a mount whose outward normal is +y (head) or +z (base).
  struct Mount {
    Vec3 at;
    bool up = false;  // normal +z
    std::string label;
  };

  Vec3 along(const Mount& m, double d) const { return m.at + (m.up ? Vec3(0, 0, d) : Vec3(0, d, 0)); }
  char normal_axis(const Mount& m) const { return m.up ? 'z' : 'y'; }
  Vec3 normal(const Mount& m) const { return m.up ? Vec3::UnitZ() : Vec3::UnitY(); }

  NodeId rocker(NodeId parent, const Mount& m) {
    GraphBuilder& b = s_.b;
    const double base = s_.v("switch_base_size");
    const double size = s_.v("switch_size");
    const double plate_t = 0.004;
    const double paddle_t = 0.006;
    const Vec3 plate_size = m.up ? Vec3(base, base, plate_t) : Vec3(base, plate_t, base);
    const NodeId mounted = b.merge({parent, s_.box(plate_size, along(m, plate_t / 2.0), "plastic")});
    const Vec3 paddle_size = m.up ? Vec3(1.6 * size, size, paddle_t) : Vec3(size, paddle_t, 1.6 * size);
    const Vec3 c = along(m, plate_t + 0.004 + paddle_t / 2.0);
    const NodeId paddle = s_.part({s_.box(paddle_size, c, "plastic")}, "switch");
    const double tilt = s_.v("switch_curvature");
    const Vec3 axis = m.up ? Vec3::UnitY() : Vec3::UnitX();
    return b.revolute(mounted, paddle, Shop::joint(axis, c, -tilt, tilt, "switch_joint", m.label, "switch"));
  }

  NodeId twist(NodeId parent, const Mount& m) {
    GraphBuilder& b = s_.b;
    const double base_r = 0.5 * s_.v("twist_button_base_size");
    const double knob_r = 0.5 * s_.v("twist_button_size");
    const double knob_h = s_.v("twist_button_height");
    const double fin_h = s_.v("twist_button_twister_height");
    const double plate_t = 0.003;
    const NodeId mounted = b.merge({parent, s_.cyl(base_r, plate_t, along(m, plate_t / 2.0), normal_axis(m), "plastic")});
    const double gap = 0.001;
    const NodeId knob = s_.cyl(knob_r, knob_h, along(m, plate_t + gap + knob_h / 2.0), normal_axis(m), "plastic");
    const Vec3 fin_size = m.up ? Vec3(2.0 * knob_r, 0.002, fin_h) : Vec3(2.0 * knob_r, fin_h, 0.002);
    const NodeId fin = s_.box(fin_size, along(m, plate_t + gap + knob_h + fin_h / 2.0), "plastic");
    return b.revolute(mounted, s_.part({knob, fin}, "switch"),
                      Shop::joint(normal(m), m.at, 0.0, M_PI, "switch_joint", m.label, "switch"));
  }

  NodeId push(NodeId parent, const Mount& m) {
    GraphBuilder& b = s_.b;
    const double base = s_.v("button_base_size");
    const double size = s_.v("button_size");
    const double h = s_.v("button_height");
    const double plate_t = 0.004;
    const double travel = 0.5 * h;
    const Vec3 plate_size = m.up ? Vec3(base, base, plate_t) : Vec3(base, plate_t, base);
    const NodeId mounted = b.merge({parent, s_.box(plate_size, along(m, plate_t / 2.0), "plastic")});
    const NodeId button =
        s_.part({s_.cyl(size / 2.0, h, along(m, plate_t + travel + 0.001 + h / 2.0), normal_axis(m), "plastic")},
                "switch");
    return b.prismatic(mounted, button, Shop::joint(-normal(m), m.at, 0.0, travel, "switch_joint", m.label, "switch"));
  }

  NodeId pull_string(NodeId head_node, int k, double tip) {
    const double sr = s_.v("pull_string_radius");
    const double base_h = s_.v("pull_string_base_height");
    const double len = s_.v("pull_string_length");
    const double y = y_of(k + 1) + socket_r_ + 0.004 + 2.0 * sr;
    const double z0 = tip + 0.5 * s_.v("rack_height");
    const NodeId anchor = s_.cyl(2.0 * sr, base_h, {0.0, y, z0 - base_h / 2.0}, 'z', "plastic");
    const NodeId cord = s_.cyl(sr, len, {0.0, y, z0 - base_h - len / 2.0}, 'z', "plastic", 8);
    const NodeId bead = s_.sphere(2.0 * sr, {0.0, y, z0 - base_h - len}, "plastic");
    return s_.b.prismatic(head_node, s_.part({anchor, cord, bead}, "switch"),
                          Shop::joint(-Vec3::UnitZ(), {0.0, y, z0}, 0.0, kStringPull, "switch_joint", "head", "switch"));
  }

  NodeId with_switch(NodeId parent, const Mount& m, std::optional<NodeId> pull) {
    GraphBuilder& b = s_.b;
    const Scalar loc = s_.param("switch_location");
    const bool at_head = pull.has_value();
    auto placed = [&](NodeId jointed) {
      return at_head ? b.select(loc, {parent, jointed}) : b.select(loc, {jointed, parent});
    };
    return b.select(s_.param("switch_type"),
                    {placed(rocker(parent, m)), placed(twist(parent, m)), placed(push(parent, m)), pull ? *pull : parent});
  }

  NodeId head_with_switch(int k, double tip) {
    const NodeId h = head(k, tip);
    const Mount m{Vec3(0.0, y_of(k + 1) + socket_r_, tip + 0.5 * s_.v("rack_height")), false, "head"};
    return with_switch(h, m, pull_string(h, k, tip));
  }

  NodeId base_with_switch() {
    const double rb = s_.v("radius_of_base");
    const int sides = static_cast<int>(std::lround(s_.v("number_of_sides_on_base")));
    const NodeId base = s_.part({s_.ngon(rb, bh_, sides, {0.0, 0.0, bh_ / 2.0}, "metal"),
                                 s_.cyl(r_, top_ - bh_, {0.0, 0.0, (bh_ + top_) / 2.0}, 'z', "metal")},
                                "base");
    const double half = 0.5 * std::max({s_.v("switch_base_size") * 1.3, s_.v("twist_button_base_size"),
                                        s_.v("button_base_size")});
    const double inner = r_ + half + 0.005;
    const double outer = std::max(inner, rb * std::cos(M_PI / sides) - half - 0.005);
    const double x = inner + s_.v("button_x_location") * (outer - inner);
    return with_switch(base, Mount{Vec3(x, 0.0, bh_), true, "base"}, std::nullopt);
  }

  Shop s_;
  double r_ = 0, gap_y_ = 0, bh_ = 0, top_ = 0, socket_r_ = 0;
  std::array<double, kMaxBars> len_{};
  std::array<double, kMaxBars> pivot_z_{};
};

}  // namespace

NodeGraph build_lamp(const ParameterSpace& space, const ParamVector& params) {
  return LampBuilder(space, params).build();
}

}  // namespace artigen::detail
