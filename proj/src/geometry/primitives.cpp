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
#include <numbers>

#include "artigen/error.hpp"
#include "artigen/geometry.hpp"

namespace artigen {
namespace {

// Every primitive here is convex and contains the origin in its interior, so
// a face is outward exactly when its normal points away from the origin.
void add_outward(TriMesh& mesh, std::uint32_t a, std::uint32_t b, std::uint32_t c) {
  const Vec3& pa = mesh.vertices[a];
  const Vec3& pb = mesh.vertices[b];
  const Vec3& pc = mesh.vertices[c];
  const Vec3 normal = (pb - pa).cross(pc - pa);
  const Vec3 centroid = (pa + pb + pc) / 3.0;
  if (normal.dot(centroid) >= 0.0) {
    mesh.triangles.push_back({a, b, c});
  } else {
    mesh.triangles.push_back({a, c, b});
  }
}

void add_quad(TriMesh& mesh, std::uint32_t a, std::uint32_t b, std::uint32_t c, std::uint32_t d) {
  add_outward(mesh, a, b, c);
  add_outward(mesh, a, c, d);
}

void require_positive(double value, const char* what) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    fail(ErrorCode::kInvalidParameter, std::string(what) + " must be positive and finite");
  }
}

std::uint32_t push(TriMesh& mesh, const Vec3& v) {
  mesh.vertices.push_back(v);
  return static_cast<std::uint32_t>(mesh.vertices.size() - 1);
}

}  // namespace

TriMesh make_box(const Vec3& dimensions) {
  for (int i = 0; i < 3; ++i) require_positive(dimensions[i], "box dimension");
  const Vec3 h = 0.5 * dimensions;
  TriMesh mesh;
  // Vertex i has sign bits (x: bit 0, y: bit 1, z: bit 2).
  for (int i = 0; i < 8; ++i) {
    mesh.vertices.emplace_back((i & 1) ? h.x() : -h.x(), (i & 2) ? h.y() : -h.y(),
                               (i & 4) ? h.z() : -h.z());
  }
  add_quad(mesh, 0, 2, 3, 1);  // -z
  add_quad(mesh, 4, 5, 7, 6);  // +z
  add_quad(mesh, 0, 1, 5, 4);  // -y
  add_quad(mesh, 2, 6, 7, 3);  // +y
  add_quad(mesh, 0, 4, 6, 2);  // -x
  add_quad(mesh, 1, 3, 7, 5);  // +x
  return mesh;
}

TriMesh make_ngon_prism(double radius, double height, int sides) {
  require_positive(radius, "radius");
  require_positive(height, "height");
  if (sides < 3) fail(ErrorCode::kInvalidParameter, "a prism needs at least 3 sides");
  TriMesh mesh;
  const double hz = 0.5 * height;
  const auto n = static_cast<std::uint32_t>(sides);
  for (std::uint32_t i = 0; i < n; ++i) {
    const double a = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n);
    push(mesh, Vec3(radius * std::cos(a), radius * std::sin(a), -hz));
    push(mesh, Vec3(radius * std::cos(a), radius * std::sin(a), hz));
  }
  const std::uint32_t bottom = push(mesh, Vec3(0, 0, -hz));
  const std::uint32_t top = push(mesh, Vec3(0, 0, hz));
  for (std::uint32_t i = 0; i < n; ++i) {
    const std::uint32_t j = (i + 1) % n;
    add_quad(mesh, 2 * i, 2 * j, 2 * j + 1, 2 * i + 1);
    add_outward(mesh, bottom, 2 * j, 2 * i);
    add_outward(mesh, top, 2 * i + 1, 2 * j + 1);
  }
  return mesh;
}

TriMesh make_cylinder(double radius, double height, int segments) {
  if (segments < 3) fail(ErrorCode::kInvalidParameter, "a cylinder needs at least 3 segments");
  return make_ngon_prism(radius, height, segments);
}

TriMesh make_sphere(double radius, int segments) {
  require_positive(radius, "radius");
  if (segments < 3) fail(ErrorCode::kInvalidParameter, "a sphere needs at least 3 segments");
  // An even ring count puts a ring on the equator, so the extents reach the
  // radius along x and y whenever `segments` is a multiple of four.
  int rings = segments / 2;
  if (rings % 2 == 1) ++rings;
  rings = std::max(rings, 2);
  TriMesh mesh;
  const auto n = static_cast<std::uint32_t>(segments);
  const std::uint32_t south = push(mesh, Vec3(0, 0, -radius));
  for (int r = 1; r < rings; ++r) {
    const double polar = std::numbers::pi * static_cast<double>(r) / static_cast<double>(rings);
    const double z = -radius * std::cos(polar);
    const double rho = radius * std::sin(polar);
    for (std::uint32_t i = 0; i < n; ++i) {
      const double a = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n);
      push(mesh, Vec3(rho * std::cos(a), rho * std::sin(a), z));
    }
  }
  const std::uint32_t north = push(mesh, Vec3(0, 0, radius));
  auto ring_vertex = [n](int ring, std::uint32_t i) {
    return 1 + static_cast<std::uint32_t>(ring - 1) * n + (i % n);
  };
  for (std::uint32_t i = 0; i < n; ++i) {
    add_outward(mesh, south, ring_vertex(1, i), ring_vertex(1, i + 1));
    add_outward(mesh, north, ring_vertex(rings - 1, i), ring_vertex(rings - 1, i + 1));
  }
  for (int r = 1; r + 1 < rings; ++r) {
    for (std::uint32_t i = 0; i < n; ++i) {
      add_quad(mesh, ring_vertex(r, i), ring_vertex(r, i + 1), ring_vertex(r + 1, i + 1),
               ring_vertex(r + 1, i));
    }
  }
  return mesh;
}

TriMesh make_rounded_box(const Vec3& dimensions, double bevel) {
  for (int i = 0; i < 3; ++i) require_positive(dimensions[i], "box dimension");
  const double limit = 0.5 * dimensions.minCoeff();
  if (!(bevel >= 0.0) || !(bevel < limit)) {
    fail(ErrorCode::kInvalidParameter, "bevel must lie in [0, min(dimensions)/2)");
  }
  if (bevel == 0.0) return make_box(dimensions);

  const Vec3 h = 0.5 * dimensions;
  TriMesh mesh;
  // Corner c (sign bits as in make_box) owns three vertices, one per axis a:
  // the vertex that sits on the face normal to axis a.
  auto sign = [](int c, int axis) { return (c >> axis) & 1 ? 1.0 : -1.0; };
  for (int c = 0; c < 8; ++c) {
    for (int axis = 0; axis < 3; ++axis) {
      Vec3 v;
      for (int k = 0; k < 3; ++k) {
        const double extent = (k == axis) ? h[k] : h[k] - bevel;
        v[k] = sign(c, k) * extent;
      }
      push(mesh, v);
    }
  }
  auto vid = [](int corner, int axis) { return static_cast<std::uint32_t>(corner * 3 + axis); };

  // Six face rectangles.
  for (int axis = 0; axis < 3; ++axis) {
    const int u = (axis + 1) % 3;
    const int w = (axis + 2) % 3;
    for (int side = 0; side < 2; ++side) {
      const int base = side << axis;
      const int c00 = base;
      const int c10 = base | (1 << u);
      const int c11 = base | (1 << u) | (1 << w);
      const int c01 = base | (1 << w);
      add_quad(mesh, vid(c00, axis), vid(c10, axis), vid(c11, axis), vid(c01, axis));
    }
  }
  // Twelve edge strips: an edge runs along `axis` between corners that differ
  // only in that bit; the strip joins the vertices on the two adjacent faces.
  for (int axis = 0; axis < 3; ++axis) {
    const int u = (axis + 1) % 3;
    const int w = (axis + 2) % 3;
    for (int su = 0; su < 2; ++su) {
      for (int sw = 0; sw < 2; ++sw) {
        const int lo = (su << u) | (sw << w);
        const int hi = lo | (1 << axis);
        add_quad(mesh, vid(lo, u), vid(hi, u), vid(hi, w), vid(lo, w));
      }
    }
  }
  // Eight corner triangles.
  for (int c = 0; c < 8; ++c) add_outward(mesh, vid(c, 0), vid(c, 1), vid(c, 2));
  return mesh;
}

}  // namespace artigen
