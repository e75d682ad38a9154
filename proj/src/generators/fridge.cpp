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

constexpr double kCenterGap = 0.016;
constexpr double kDrawerGap = 0.01;

class FridgeBuilder {
 public:
  FridgeBuilder(const ParameterSpace& space, const ParamVector& params) : s_("fridge", space, params) {
    S_ = s_.v("size");
    H_ = 2.4 * S_;
    D_ = 0.8 * S_;
    t_ = s_.v("wall_thickness");
    th_ = t_ + 0.01;
    dh_ = s_.v("drawer_height");
    ext_h_ = dh_ + 0.04;
    z_ext_ = t_ + s_.i("external_drawer_count") * ext_h_;
    z_c0_ = z_ext_ + t_;
    z_top_ = H_ - t_;
    front_ = -D_ / 2.0;
    inset_ = s_.v("door_shelf_size") + 0.015 + s_.v("shelf_board_margin");
    inner_w_ = S_ - 2.0 * t_;
    usable_d_ = D_ - t_ - inset_ - s_.v("shelf_margin");
    drawer_zone_top_ = z_c0_ + 2.0 * (dh_ + kDrawerGap);
  }

  NodeGraph build() {
    GraphBuilder& b = s_.b;
    const NodeId body = body_geometry();

    const double lm = s_.v("door_left_margin"), rm = s_.v("door_right_margin");
    const double z0 = z_ext_ + s_.v("door_lower_margin");
    const double z1 = H_ - s_.v("door_upper_margin");
    const double span = S_ - lm - rm;
    const NodeId one = door(body, -S_ / 2.0 + lm, 1.0, span, z0, z1);
    const double half = (span - kCenterGap) / 2.0;
    const NodeId two = b.merge({door(body, -S_ / 2.0 + lm, 1.0, half, z0, z1), door(body, S_ / 2.0 - rm, -1.0, half, z0, z1)});
    const NodeId doors = b.select(b.sub(s_.param("door_count"), 1.0), {one, two});

    return b.finish(b.merge({doors, internal_shelves(body), internal_drawers(body), external_drawers(body)}));
  }

 private:
  NodeId body_geometry() {
    const double r = s_.v("body_outer_roundness");
    const double yc = 0.0;
    return s_.part({s_.rbox({S_, t_, H_}, {0.0, D_ / 2.0 - t_ / 2.0, H_ / 2.0}, r, "metal"),
                    s_.rbox({t_, D_, H_}, {-S_ / 2.0 + t_ / 2.0, yc, H_ / 2.0}, r, "metal"),
                    s_.rbox({t_, D_, H_}, {S_ / 2.0 - t_ / 2.0, yc, H_ / 2.0}, r, "metal"),
                    s_.rbox({inner_w_, D_ - t_, t_}, {0.0, -t_ / 2.0, t_ / 2.0}, r, "metal"),
                    s_.rbox({inner_w_, D_ - t_, t_}, {0.0, -t_ / 2.0, H_ - t_ / 2.0}, r, "metal"),
                    s_.rbox({inner_w_, D_ - t_, t_}, {0.0, -t_ / 2.0, z_ext_ + t_ / 2.0}, s_.v("body_inner_roundness"),
                            "metal")},
                   "body");
  }

  /// Bar handle standing off a front face at y = face, centred at (x, z).
  std::vector<NodeId> bar_handle(const std::string& prefix, double x, double z, double face, bool vertical) {
    const double len = s_.v(prefix + "_top_size");
    const double thick = s_.v(prefix + "_top_thickness");
    const double standoff = s_.v(prefix + "_support_size");
    const double margin = std::min(s_.v(prefix + "_support_margin"), 0.3 * len);
    const double r = s_.v(prefix + "_top_roundness");
    const double y_bar = face - standoff - thick / 2.0;
    const double y_sup = face - standoff / 2.0;
    const double off = len / 2.0 - margin - thick / 2.0;
    const Vec3 bar_size = vertical ? Vec3(thick, thick, len) : Vec3(len, thick, thick);
    const Vec3 sup_size(thick * 0.8, standoff, thick * 0.8);
    const Vec3 d = vertical ? Vec3(0.0, 0.0, off) : Vec3(off, 0.0, 0.0);
    return {s_.rbox(bar_size, {x, y_bar, z}, r, "metal"),
            s_.box(sup_size, Vec3(x, y_sup, z) - d, "metal"),
            s_.box(sup_size, Vec3(x, y_sup, z) + d, "metal")};
  }

  NodeId door(NodeId body, double hinge_x, double side, double w, double z0, double z1) {
    GraphBuilder& b = s_.b;
    const double cx = hinge_x + side * w / 2.0;
    const double y_door = front_ - th_ / 2.0;
    std::vector<NodeId> parts = {s_.rbox({w, th_, z1 - z0}, {cx, y_door, (z0 + z1) / 2.0}, s_.v("body_outer_roundness"), "metal")};
    const double hx = hinge_x + side * (w - s_.v("door_handle_margin"));
    const double hz = std::min((z0 + z1) / 2.0, z1 - 0.5 * s_.v("door_handle_top_size") - 0.05);
    for (NodeId h : bar_handle("door_handle", hx, hz, front_ - th_, true)) parts.push_back(h);
    const NodeId leaf = s_.part(parts, "door");

    // Door shelves ride on the inner face above the drawer zone.
    const double dsm = s_.v("door_shelf_margin");
    const double ss = s_.v("door_shelf_size");
    const double st = s_.v("door_shelf_thickness");
    const double x_lo = t_ + dsm, x_hi = w - dsm - 0.04;
    const double sw = x_hi - x_lo;
    const double sx = hinge_x + side * (x_lo + x_hi) / 2.0;
    const double first = drawer_zone_top_ + 0.03;
    const double step = s_.v("door_shelf_num") * (z_top_ - 0.02 - first) / 4.0;
    const double lip = std::min(0.04, 0.8 * step);
    const NodeId shelf = s_.part({s_.box({sw, ss, st}, {0.0, front_ + ss / 2.0, st / 2.0}, "plastic"),
                                  s_.box({sw, st, lip}, {0.0, front_ + ss - st / 2.0, lip / 2.0}, "plastic")},
                                 "door_shelf");
    DuplicateArgs shelves;
    shelves.type = JointType::kPrismatic;
    shelves.joint = Shop::joint(Vec3::UnitZ(), {0.0, 0.0, 0.0}, 0.0, 0.0, "door_shelf_mount", "door", "door_shelf");
    shelves.origin = {sx, 0.0, first};
    shelves.step = {0.0, 0.0, step};
    shelves.count = s_.param("shelves_per_door");
    const NodeId door_asm = b.duplicate(leaf, shelf, shelves);

    const Vec3 pivot(hinge_x, front_ - th_, 0.0);
    return b.revolute(body, door_asm,
                      Shop::joint(Vec3::UnitZ(), pivot, std::min(0.0, -side * M_PI / 2.0),
                                  std::max(0.0, -side * M_PI / 2.0), "door_hinge", "body", "door"));
  }

  NodeId internal_shelves(NodeId body) {
    const double m = s_.v("shelf_margin");
    const double st = s_.v("shelf_thickness");
    const double w = inner_w_ - 2.0 * m;
    const double yc = front_ + inset_ + usable_d_ / 2.0;
    const double first = drawer_zone_top_ + 0.05;
    const NodeId shelf = s_.part({s_.box({w, usable_d_, st}, {0.0, yc, st / 2.0}, "glass")}, "shelf");
    DuplicateArgs dup;
    dup.type = JointType::kPrismatic;
    dup.joint = Shop::joint(Vec3::UnitZ(), {0.0, 0.0, 0.0}, 0.0, 0.0, "shelf_mount", "body", "shelf");
    dup.origin = {0.0, 0.0, first};
    dup.step = {0.0, 0.0, (z_top_ - first) / 4.0};
    dup.count = s_.param("internal_shelf_count");
    return s_.b.duplicate(body, shelf, dup);
  }

  /// Open-topped bin with slides and a front handle, bottom at z = 0.
  std::vector<NodeId> bin(double w, double d, double h, double y_front) {
    const double wt = s_.v("drawer_wall_thickness");
    const double rb = s_.v("drawer_body_roundness");
    const double yc = y_front + d / 2.0;
    const double slide = s_.v("drawer_slide_roundness");
    return {s_.rbox({w, d, wt}, {0.0, yc, wt / 2.0}, s_.v("drawer_inner_roundness"), "plastic"),
            s_.rbox({w, wt, h}, {0.0, y_front + wt / 2.0, h / 2.0}, rb, "plastic"),
            s_.rbox({w, wt, h}, {0.0, y_front + d - wt / 2.0, h / 2.0}, rb, "plastic"),
            s_.rbox({wt, d, h}, {-w / 2.0 + wt / 2.0, yc, h / 2.0}, rb, "plastic"),
            s_.rbox({wt, d, h}, {w / 2.0 - wt / 2.0, yc, h / 2.0}, rb, "plastic"),
            s_.rbox({0.004, 0.8 * d, 0.01}, {-w / 2.0 - 0.002, yc, 0.6 * h}, slide, "metal"),
            s_.rbox({0.004, 0.8 * d, 0.01}, {w / 2.0 + 0.002, yc, 0.6 * h}, slide, "metal")};
  }

  double handle_protrusion() const {
    return s_.v("drawer_handle_support_size") + s_.v("drawer_handle_top_thickness");
  }

  NodeId internal_drawers(NodeId body) {
    const double w = inner_w_ - 0.03;
    const double y_front = front_ + inset_;
    const double h = dh_;
    auto parts = bin(w, usable_d_, h, y_front);
    for (NodeId n : bar_handle("drawer_handle", 0.0, h - s_.v("drawer_handle_margin"), y_front, false)) parts.push_back(n);
    const NodeId drawer = s_.part(parts, "drawer");
    const double travel = std::max(0.01, inset_ - 0.01 - handle_protrusion());
    DuplicateArgs dup;
    dup.type = JointType::kPrismatic;
    dup.joint = Shop::joint(-Vec3::UnitY(), {0.0, 0.0, 0.0}, 0.0, travel, "drawer_slide", "body", "drawer");
    dup.origin = {0.0, 0.0, z_c0_ + 0.005};
    dup.step = {0.0, 0.0, dh_ + kDrawerGap};
    dup.count = s_.param("internal_drawer_count");
    return s_.b.duplicate(body, drawer, dup);
  }

  NodeId external_drawers(NodeId body) {
    const double lm = s_.v("door_left_margin"), rm = s_.v("door_right_margin");
    const double panel_w = S_ - lm - rm;
    const double panel_h = ext_h_ - 0.006;
    const double d = D_ - t_ - 0.03;
    const double h = ext_h_ - 0.03;
    auto parts = bin(inner_w_ - 0.03, d, h, front_ + 0.002);
    parts.push_back(s_.rbox({panel_w, th_, panel_h}, {(lm - rm) / 2.0, front_ - th_ / 2.0, panel_h / 2.0},
                            s_.v("body_outer_roundness"), "metal"));
    for (NodeId n : bar_handle("drawer_handle", (lm - rm) / 2.0, panel_h - s_.v("drawer_handle_margin"), front_ - th_,
                               false)) {
      parts.push_back(n);
    }
    const NodeId drawer = s_.part(parts, "drawer");
    DuplicateArgs dup;
    dup.type = JointType::kPrismatic;
    dup.joint = Shop::joint(-Vec3::UnitY(), {0.0, 0.0, 0.0}, 0.0, 0.7 * d, "drawer_slide", "body", "drawer");
    dup.origin = {0.0, 0.0, t_ + 0.003};
    dup.step = {0.0, 0.0, ext_h_};
    dup.count = s_.param("external_drawer_count");
    return s_.b.duplicate(body, drawer, dup);
  }

  Shop s_;
  double S_ = 0, H_ = 0, D_ = 0, t_ = 0, th_ = 0, dh_ = 0, ext_h_ = 0, z_ext_ = 0, z_c0_ = 0, z_top_ = 0;
  double front_ = 0, inset_ = 0, inner_w_ = 0, usable_d_ = 0, drawer_zone_top_ = 0;
};

}  // namespace

NodeGraph build_fridge(const ParameterSpace& space, const ParamVector& params) {
  return FridgeBuilder(space, params).build();
}

}  // namespace artigen::detail
