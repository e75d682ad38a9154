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

#include <array>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Geometry>

namespace artigen {

// Right-handed, Z-up, meters and radians throughout.
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Triangle = std::array<Vec3, 3>;

inline constexpr int kDefaultSegments = 32;
inline constexpr double kDegenerateArea = 1e-12;

/// Rotation (unit quaternion) followed by translation: x -> R x + p.
struct RigidTransform {
  Eigen::Quaterniond rotation = Eigen::Quaterniond::Identity();
  Vec3 translation = Vec3::Zero();

  static RigidTransform identity() { return {}; }
  static RigidTransform from_translation(const Vec3& offset);
  /// Rotation about an axis through the origin; the axis need not be unit.
  static RigidTransform from_axis_angle(const Vec3& axis, double angle);
  /// Rotation by `angle` about the line through `pivot` along `axis`.
  static RigidTransform about_axis(const Vec3& pivot, const Vec3& axis, double angle);

  Vec3 apply(const Vec3& point) const { return rotation * point + translation; }
  Vec3 rotate(const Vec3& direction) const { return rotation * direction; }
  Mat3 matrix() const { return rotation.toRotationMatrix(); }

  RigidTransform operator*(const RigidTransform& rhs) const;
  RigidTransform inverse() const;
};

struct Aabb {
  Vec3 min = Vec3::Constant(std::numeric_limits<double>::infinity());
  Vec3 max = Vec3::Constant(-std::numeric_limits<double>::infinity());

  bool empty() const { return (min.array() > max.array()).any(); }
  void extend(const Vec3& p) {
    min = min.cwiseMin(p);
    max = max.cwiseMax(p);
  }
  void extend(const Aabb& other) {
    min = min.cwiseMin(other.min);
    max = max.cwiseMax(other.max);
  }
  Vec3 extents() const { return max - min; }
  Vec3 center() const { return 0.5 * (min + max); }
  /// Closed-interval overlap, grown by `margin` on every side.
  bool overlaps(const Aabb& other, double margin = 0.0) const;
  bool contains(const Aabb& inner, double tolerance = 0.0) const;
};

/// Indexed triangle mesh. `face_labels` is either empty or one label id per
/// triangle; -1 marks an unlabeled face.
struct TriMesh {
  std::vector<Vec3> vertices;
  std::vector<std::array<std::uint32_t, 3>> triangles;
  std::vector<std::int32_t> face_labels;
  std::optional<std::string> material_tag;

  std::size_t vertex_count() const { return vertices.size(); }
  std::size_t triangle_count() const { return triangles.size(); }
  bool empty() const { return triangles.empty(); }
  bool has_labels() const { return !face_labels.empty(); }
  Triangle triangle(std::size_t i) const {
    const auto& t = triangles[i];
    return {vertices[t[0]], vertices[t[1]], vertices[t[2]]};
  }
};

// Primitives. Every closed primitive is centered at the origin with outward
// (counter-clockwise from outside) winding. Errors: kInvalidParameter.
TriMesh make_box(const Vec3& dimensions);
TriMesh make_cylinder(double radius, double height, int segments = kDefaultSegments);
TriMesh make_sphere(double radius, int segments = kDefaultSegments);
/// Box whose 12 edges and 8 corners are cut by a single 45 degree chamfer.
/// A bevel of exactly zero returns make_box(dimensions).
TriMesh make_rounded_box(const Vec3& dimensions, double bevel);
/// Prism over a regular polygon with circumradius `radius`, axis along +Z.
TriMesh make_ngon_prism(double radius, double height, int sides);

TriMesh apply_transform(const TriMesh& mesh, const RigidTransform& transform);
TriMesh merge_meshes(std::span<const TriMesh> meshes);
/// Writes `label` into every face of the mesh.
TriMesh with_face_label(TriMesh mesh, std::int32_t label);

Aabb compute_aabb(const TriMesh& mesh);
Aabb compute_aabb(const Triangle& triangle);
double triangle_area(const Triangle& triangle);
double surface_area(const TriMesh& mesh);
/// Divergence-theorem volume of a closed, outward-wound mesh.
double signed_volume(const TriMesh& mesh);

/// Throws kInvalidParameter when an invariant of TriMesh is violated.
void check_mesh(const TriMesh& mesh);

/// Closed-triangle intersection, coplanar overlap included.
/// Throws kInvalidParameter for a degenerate triangle.
bool triangles_intersect(const Triangle& a, const Triangle& b);

/// Convex hull of the mesh vertices, outward wound. Throws kDegeneracy when
/// fewer than four non-coplanar vertices exist.
TriMesh convex_hull(const TriMesh& mesh);
/// Largest signed distance of `point` outside any hull face plane
/// (non-positive when the point is inside or on the hull).
double hull_excess(const TriMesh& hull, const Vec3& point);

/// ASCII OBJ body: optional `o` record, `v` records with 9 significant
/// digits, then 1-based `f` records.
void write_obj(std::ostream& out, const TriMesh& mesh, const std::string& object_name);
std::string format_obj(const TriMesh& mesh, const std::string& object_name);

}  // namespace artigen
