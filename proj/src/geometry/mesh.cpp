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
#include <cstdio>
#include <ostream>
#include <sstream>

#include "artigen/error.hpp"
#include "artigen/geometry.hpp"

namespace artigen {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidParameter: return "invalid-parameter";
    case ErrorCode::kDegeneracy: return "degeneracy";
    case ErrorCode::kGraphCycle: return "graph-cycle";
    case ErrorCode::kPortType: return "port-type";
    case ErrorCode::kMissingParameter: return "missing-parameter";
    case ErrorCode::kRange: return "range";
    case ErrorCode::kArithmetic: return "arithmetic";
    case ErrorCode::kParse: return "parse";
    case ErrorCode::kSchemaVersion: return "schema-version";
    case ErrorCode::kStructural: return "structural";
    case ErrorCode::kCycle: return "cycle";
    case ErrorCode::kIo: return "io";
    case ErrorCode::kPlanTooLarge: return "plan-too-large";
  }
  return "unknown";
}

RigidTransform RigidTransform::from_translation(const Vec3& offset) {
  RigidTransform t;
  t.translation = offset;
  return t;
}

RigidTransform RigidTransform::from_axis_angle(const Vec3& axis, double angle) {
  const double norm = axis.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    fail(ErrorCode::kInvalidParameter, "rotation axis must be non-zero and finite");
  }
  RigidTransform t;
  t.rotation = Eigen::Quaterniond(Eigen::AngleAxisd(angle, axis / norm));
  t.rotation.normalize();
  return t;
}

RigidTransform RigidTransform::about_axis(const Vec3& pivot, const Vec3& axis, double angle) {
  RigidTransform t = from_axis_angle(axis, angle);
  t.translation = pivot - t.rotation * pivot;
  return t;
}

RigidTransform RigidTransform::operator*(const RigidTransform& rhs) const {
  RigidTransform out;
  out.rotation = (rotation * rhs.rotation).normalized();
  out.translation = rotation * rhs.translation + translation;
  return out;
}

RigidTransform RigidTransform::inverse() const {
  RigidTransform out;
  out.rotation = rotation.conjugate();
  out.translation = -(out.rotation * translation);
  return out;
}

bool Aabb::overlaps(const Aabb& other, double margin) const {
  for (int i = 0; i < 3; ++i) {
    if (min[i] - margin > other.max[i] || other.min[i] - margin > max[i]) return false;
  }
  return true;
}

bool Aabb::contains(const Aabb& inner, double tolerance) const {
  for (int i = 0; i < 3; ++i) {
    if (inner.min[i] < min[i] - tolerance || inner.max[i] > max[i] + tolerance) return false;
  }
  return true;
}

TriMesh apply_transform(const TriMesh& mesh, const RigidTransform& transform) {
  TriMesh out = mesh;
  const bool identity = transform.rotation.coeffs() == Eigen::Quaterniond::Identity().coeffs() &&
                        transform.translation.isZero(0.0);
  if (identity) return out;
  const Mat3 r = transform.matrix();
  for (auto& v : out.vertices) v = r * v + transform.translation;
  return out;
}

TriMesh merge_meshes(std::span<const TriMesh> meshes) {
  if (meshes.empty()) fail(ErrorCode::kInvalidParameter, "merge_meshes: empty input list");
  if (meshes.size() == 1) return meshes.front();
  TriMesh out;
  bool any_labels = false;
  for (const auto& m : meshes) any_labels = any_labels || m.has_labels();
  for (const auto& m : meshes) {
    const auto base = static_cast<std::uint32_t>(out.vertices.size());
    out.vertices.insert(out.vertices.end(), m.vertices.begin(), m.vertices.end());
    for (const auto& t : m.triangles) out.triangles.push_back({t[0] + base, t[1] + base, t[2] + base});
    if (any_labels) {
      if (m.has_labels()) {
        out.face_labels.insert(out.face_labels.end(), m.face_labels.begin(), m.face_labels.end());
      } else {
        out.face_labels.insert(out.face_labels.end(), m.triangles.size(), -1);
      }
    }
    if (!out.material_tag && m.material_tag) out.material_tag = m.material_tag;
  }
  return out;
}

TriMesh with_face_label(TriMesh mesh, std::int32_t label) {
  mesh.face_labels.assign(mesh.triangles.size(), label);
  return mesh;
}

Aabb compute_aabb(const TriMesh& mesh) {
  Aabb box;
  for (const auto& v : mesh.vertices) box.extend(v);
  return box;
}

Aabb compute_aabb(const Triangle& triangle) {
  Aabb box;
  for (const auto& v : triangle) box.extend(v);
  return box;
}

double triangle_area(const Triangle& t) {
  return 0.5 * (t[1] - t[0]).cross(t[2] - t[0]).norm();
}

double surface_area(const TriMesh& mesh) {
  double total = 0.0;
  for (std::size_t i = 0; i < mesh.triangle_count(); ++i) total += triangle_area(mesh.triangle(i));
  return total;
}

double signed_volume(const TriMesh& mesh) {
  double six_v = 0.0;
  for (std::size_t i = 0; i < mesh.triangle_count(); ++i) {
    const Triangle t = mesh.triangle(i);
    six_v += t[0].dot(t[1].cross(t[2]));
  }
  return six_v / 6.0;
}

void check_mesh(const TriMesh& mesh) {
  for (const auto& v : mesh.vertices) {
    if (!v.allFinite()) fail(ErrorCode::kInvalidParameter, "mesh has a non-finite vertex");
  }
  const auto n = mesh.vertices.size();
  for (std::size_t i = 0; i < mesh.triangle_count(); ++i) {
    for (auto index : mesh.triangles[i]) {
      if (index >= n) fail(ErrorCode::kInvalidParameter, "triangle index out of range");
    }
    if (!(triangle_area(mesh.triangle(i)) > kDegenerateArea)) {
      fail(ErrorCode::kInvalidParameter, "degenerate triangle " + std::to_string(i));
    }
  }
  if (mesh.has_labels() && mesh.face_labels.size() != mesh.triangle_count()) {
    fail(ErrorCode::kInvalidParameter, "face label count differs from triangle count");
  }
}

namespace {

void append_coordinate(std::string& line, double value) {
  char buffer[40];
  if (value == 0.0) value = 0.0;  // folds -0
  std::snprintf(buffer, sizeof(buffer), "%.9g", value);
  line += ' ';
  line += buffer;
}

}  // namespace

void write_obj(std::ostream& out, const TriMesh& mesh, const std::string& object_name) {
  out << format_obj(mesh, object_name);
}

std::string format_obj(const TriMesh& mesh, const std::string& object_name) {
  std::string text;
  text.reserve(mesh.vertices.size() * 40 + mesh.triangles.size() * 24);
  if (!object_name.empty()) text += "o " + object_name + "\n";
  for (const auto& v : mesh.vertices) {
    text += 'v';
    append_coordinate(text, v.x());
    append_coordinate(text, v.y());
    append_coordinate(text, v.z());
    text += '\n';
  }
  for (const auto& t : mesh.triangles) {
    text += "f " + std::to_string(t[0] + 1) + ' ' + std::to_string(t[1] + 1) + ' ' +
            std::to_string(t[2] + 1) + '\n';
  }
  return text;
}

}  // namespace artigen
