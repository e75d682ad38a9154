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

#include <string>

#include "artigen/exporters.hpp"
#include "common/format.hpp"

namespace artigen::detail {

std::string xml_escape(std::string_view text);
/// XML comments cannot contain "--".
std::string comment_text(std::string_view text);
std::string real_text(double value);
std::string vec_text(const Vec3& v);
/// Roll, pitch, yaw with R = Rz(yaw) Ry(pitch) Rx(roll).
Vec3 rotation_to_rpy(const Eigen::Quaterniond& q);
Eigen::Quaterniond rpy_to_rotation(const Vec3& rpy);

/// Child frame relative to the parent frame at joint value 0. Fixed joints
/// bake their single admissible value into the origin.
RigidTransform joint_origin(const InstanceJoint& joint);
bool exported_fixed(const InstanceJoint& joint);

}  // namespace artigen::detail
