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

constexpr double kSideWall = 0.025;
constexpr double kKnobZone = 0.06;
constexpr double kSlotWall = 0.03;
constexpr double kStemLength = 0.025;
constexpr double kPlateDepth = 0.006;
constexpr double kButtonTravel = 0.003;

class ToasterBuilder {
 public:
  ToasterBuilder(const ParameterSpace& space, const ParamVector& params) : s_("toaster", space, params) {
    n_ = s_.i("slot_count");
    pitch_ = s_.v("slot_width") + kSlotWall;
    X_ = 2.0 * kSideWall + n_ * pitch_ + kKnobZone;
    Y_ = s_.v("toaster_length");
    H_ = s_.v("slot_depth") + 0.09;
    prot_ = s_.v("protrusion_parameter");
    along_y_ = s_.i("protrusion_axis") == 1;
    front_ = Y_ / 2.0 + (along_y_ ? prot_ : 0.0);
    lever_z_ = H_ - 0.015 - std::max(0.0, 0.5 * s_.v("dimension_of_lever_handle") - 0.01);
  }

  NodeGraph build() {
    GraphBuilder& b = s_.b;
    const NodeId body = body_geometry();

    DuplicateArgs front;
    front.type = JointType::kPrismatic;
    front.joint = Shop::joint(-Vec3::UnitZ(), {0.0, 0.0, lever_z_}, 0.0, s_.param("slot_depth"), "lever_joint",
                              "body", "lever");
    front.origin = {slot_x(0), 0.0, 0.0};
    front.step = {pitch_, 0.0, 0.0};
    front.count = s_.param("slot_count");
    const NodeId front_levers = b.duplicate(body, lever_with_buttons(-1.0), front);

    DuplicateArgs back = front;
    back.count = b.mul(s_.param("slot_count"), b.sub(s_.param("levers_per_slot"), 1.0));
    const NodeId back_levers = b.duplicate(body, lever_with_buttons(1.0), back);

    const double kr = s_.v("knob_size");
    const double zone_lo = X_ / 2.0 - kSideWall - kKnobZone + kr + 0.004;
    const double zone_hi = X_ / 2.0 - kSideWall - kr;
    const double kx = zone_lo + s_.v("knob_horizontal_location") * (zone_hi - zone_lo);
    const double kz = std::clamp(s_.v("knob_vertical_location") * H_, kr + 0.01, H_ - kr - 0.01);
    const double kd = 0.015;
    const NodeId knob = s_.part({s_.cyl(kr, kd, {kx, -front_ - kd / 2.0, kz}, 'y', "plastic"),
                                 s_.box({0.003, 0.004, 0.8 * kr}, {kx, -front_ - kd - 0.002, kz + 0.5 * kr}, "plastic")},
                                "knob");
    const NodeId knobbed =
        b.revolute(body, knob, Shop::joint(Vec3::UnitY(), {kx, -front_, kz}, 0.0, M_PI, "knob_joint", "body", "knob"));

    return b.finish(b.merge({front_levers, back_levers, knobbed}));
  }

 private:
  double slot_x(int i) const { return -X_ / 2.0 + kSideWall + pitch_ * (i + 0.5); }

  NodeId body_geometry() {
    GraphBuilder& b = s_.b;
    const double band_h = 0.7 * H_;
    const NodeId shell = s_.rbox({X_, Y_, H_}, {0.0, 0.0, H_ / 2.0}, 0.012, "metal");
    const NodeId band = along_y_ ? s_.box({0.8 * X_, Y_ + 2.0 * prot_, band_h}, {0.0, 0.0, H_ / 2.0}, "metal")
                                 : s_.box({X_ + 2.0 * prot_, 0.8 * Y_, band_h}, {0.0, 0.0, H_ / 2.0}, "metal");
    const double sw = s_.v("slot_width");
    const double sl = std::min(s_.v("slot_length"), Y_ - 0.04);
    std::vector<NodeId> rim_sets;
    for (int count = 1; count <= 3; ++count) {
      std::vector<NodeId> rims;
      for (int i = 0; i < count; ++i) {
        rims.push_back(s_.box({sw + 0.006, sl + 0.006, 0.004}, {slot_x(i), 0.0, H_ + 0.002}, "plastic"));
      }
      rim_sets.push_back(s_.merge(rims));
    }
    const NodeId rims = b.select(b.sub(s_.param("slot_count"), 1.0), rim_sets);
    return s_.part({shell, band, rims}, "body");
  }

  /// Lever on the front (side -1) or back (side +1) face, built at x = 0.
  NodeId lever_with_buttons(double side) {
    GraphBuilder& b = s_.b;
    const double D = s_.v("dimension_of_lever_handle");
    const double face = side * front_;
    const double y_stem = face + side * kStemLength / 2.0;
    const double y_handle = face + side * (kStemLength + 0.2 * D);
    const double z = lever_z_;
    const NodeId stem = s_.box({0.008, kStemLength, 0.008}, {0.0, y_stem, z}, "plastic");

    const std::vector<NodeId> shapes = {
        s_.cyl(0.3 * D, D, {0.0, y_handle, z}, 'x', "plastic"),
        s_.rbox({D, 0.5 * D, 0.35 * D}, {0.0, y_handle, z}, 0.15 * D, "plastic"),
        s_.merge({s_.sphere(0.3 * D, {0.0, y_handle, z}, "plastic"), s_.sphere(0.2 * D, {-0.3 * D, y_handle, z}, "plastic"),
                  s_.sphere(0.2 * D, {0.3 * D, y_handle, z}, "plastic")}),
        s_.sphere(0.4 * D, {0.0, y_handle, z}, "plastic"),
        s_.box({D, 0.4 * D, 0.12 * D}, {0.0, y_handle, z}, "plastic")};
    const NodeId handle = b.select(s_.param("lever_type"), shapes);

    const double ibd = s_.v("inter_button_distances");
    const double bvo = s_.v("button_vertical_offset");
    const double bho = s_.v("button_horizontal_offset");
    const double sq = s_.v("square_button_width");
    const double top = z + 0.006;
    const double first = z - 0.012 - bvo - sq / 2.0;
    const double bottom = first - 2.0 * ibd - sq / 2.0 - 0.004;
    const double plate_w = sq + 2.0 * std::abs(bho) + 0.008;
    const double y_plate = face + side * (0.001 + kPlateDepth / 2.0);
    const NodeId plate = s_.box({plate_w, kPlateDepth, top - bottom}, {0.0, y_plate, (top + bottom) / 2.0}, "plastic");
    const NodeId lever = s_.part({stem, handle, plate}, "lever");

    // Button at the origin; the duplicate places it.
    const double cr = s_.v("circular_button_size");
    const double y_btn = face + side * (0.001 + kPlateDepth + kButtonTravel + 0.001);
    const NodeId button = s_.part({s_.box({sq, 0.002, sq}, {0.0, side * 0.001, 0.0}, "plastic"),
                                   s_.cyl(cr, 0.003, {0.0, side * 0.0035, 0.0}, 'y', "plastic")},
                                  "button");
    DuplicateArgs buttons;
    buttons.type = JointType::kPrismatic;
    buttons.joint = Shop::joint(-side * Vec3::UnitY(), {0.0, 0.0, 0.0}, 0.0, kButtonTravel, "button_joint", "lever",
                                "button");
    buttons.origin = {bho, y_btn, first};
    buttons.step = {0.0, 0.0, -ibd};
    buttons.count = s_.param("buttons_per_lever");
    return b.duplicate(lever, button, buttons);
  }

  Shop s_;
  int n_ = 1;
  double pitch_ = 0.0, X_ = 0.0, Y_ = 0.0, H_ = 0.0, prot_ = 0.0, front_ = 0.0, lever_z_ = 0.0;
  bool along_y_ = false;
};

}  // namespace

NodeGraph build_toaster(const ParameterSpace& space, const ParamVector& params) {
  return ToasterBuilder(space, params).build();
}

}  // namespace artigen::detail
