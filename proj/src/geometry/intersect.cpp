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

#include <algorithm>
#include <cmath>

#include "artigen/error.hpp"
#include "artigen/geometry.hpp"

namespace artigen {
namespace {

// Signed volume of (a, b, c, d): positive when d lies below the plane of
// a, b, c seen counter-clockwise.
double orient3d(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d) {
  return (a - d).dot((b - d).cross(c - d));
}

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

struct Point2 {
  double x;
  double y;
};

double orient2d(const Point2& a, const Point2& b, const Point2& c) {
  return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
}

bool on_segment(const Point2& a, const Point2& b, const Point2& p) {
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
         p.y <= std::max(a.y, b.y);
}

bool segments_intersect_2d(const Point2& p1, const Point2& p2, const Point2& q1, const Point2& q2) {
  const int d1 = sign_of(orient2d(q1, q2, p1));
  const int d2 = sign_of(orient2d(q1, q2, p2));
  const int d3 = sign_of(orient2d(p1, p2, q1));
  const int d4 = sign_of(orient2d(p1, p2, q2));
  if (d1 * d2 < 0 && d3 * d4 < 0) return true;
  if (d1 == 0 && on_segment(q1, q2, p1)) return true;
  if (d2 == 0 && on_segment(q1, q2, p2)) return true;
  if (d3 == 0 && on_segment(p1, p2, q1)) return true;
  if (d4 == 0 && on_segment(p1, p2, q2)) return true;
  return false;
}

bool point_in_triangle_2d(const Point2& p, const std::array<Point2, 3>& t) {
  const double a = orient2d(t[0], t[1], p);
  const double b = orient2d(t[1], t[2], p);
  const double c = orient2d(t[2], t[0], p);
  return (a >= 0 && b >= 0 && c >= 0) || (a <= 0 && b <= 0 && c <= 0);
}

// Drops the coordinate along which the plane normal is largest.
struct Projector {
  int u = 0;
  int v = 1;
  explicit Projector(const Vec3& normal) {
    const Vec3 n = normal.cwiseAbs();
    if (n.x() >= n.y() && n.x() >= n.z()) {
      u = 1;
      v = 2;
    } else if (n.y() >= n.z()) {
      u = 0;
      v = 2;
    }
  }
  Point2 operator()(const Vec3& p) const { return {p[u], p[v]}; }
};

bool coplanar_segment_triangle(const Vec3& p, const Vec3& q, const Triangle& t, const Projector& proj) {
  const std::array<Point2, 3> t2 = {proj(t[0]), proj(t[1]), proj(t[2])};
  const Point2 p2 = proj(p);
  const Point2 q2 = proj(q);
  if (point_in_triangle_2d(p2, t2) || point_in_triangle_2d(q2, t2)) return true;
  for (int i = 0; i < 3; ++i) {
    if (segments_intersect_2d(p2, q2, t2[i], t2[(i + 1) % 3])) return true;
  }
  return false;
}

bool coplanar_triangles(const Triangle& a, const Triangle& b) {
  const Projector proj((a[1] - a[0]).cross(a[2] - a[0]));
  const std::array<Point2, 3> a2 = {proj(a[0]), proj(a[1]), proj(a[2])};
  const std::array<Point2, 3> b2 = {proj(b[0]), proj(b[1]), proj(b[2])};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (segments_intersect_2d(a2[i], a2[(i + 1) % 3], b2[j], b2[(j + 1) % 3])) return true;
    }
  }
  return point_in_triangle_2d(a2[0], b2) || point_in_triangle_2d(b2[0], a2);
}

// Segment [p, q] against the closed triangle t, given the orientations of p
// and q relative to the plane of t.
bool segment_hits_triangle(const Vec3& p, const Vec3& q, double op, double oq, const Triangle& t) {
  const int sp = sign_of(op);
  const int sq = sign_of(oq);
  if (sp * sq > 0) return false;
  if (sp == 0 && sq == 0) {
    return coplanar_segment_triangle(p, q, t, Projector((t[1] - t[0]).cross(t[2] - t[0])));
  }
  const int s0 = sign_of(orient3d(p, q, t[0], t[1]));
  const int s1 = sign_of(orient3d(p, q, t[1], t[2]));
  const int s2 = sign_of(orient3d(p, q, t[2], t[0]));
  return (s0 >= 0 && s1 >= 0 && s2 >= 0) || (s0 <= 0 && s1 <= 0 && s2 <= 0);
}

void require_nondegenerate(const Triangle& t) {
  if (!(triangle_area(t) > kDegenerateArea)) {
    fail(ErrorCode::kInvalidParameter, "triangles_intersect: degenerate triangle");
  }
}

}  // namespace

bool triangles_intersect(const Triangle& a, const Triangle& b) {
  require_nondegenerate(a);
  require_nondegenerate(b);

  std::array<double, 3> da{};
  std::array<double, 3> db{};
  for (int i = 0; i < 3; ++i) da[i] = orient3d(b[0], b[1], b[2], a[i]);
  if ((da[0] > 0 && da[1] > 0 && da[2] > 0) || (da[0] < 0 && da[1] < 0 && da[2] < 0)) return false;
  for (int i = 0; i < 3; ++i) db[i] = orient3d(a[0], a[1], a[2], b[i]);
  if ((db[0] > 0 && db[1] > 0 && db[2] > 0) || (db[0] < 0 && db[1] < 0 && db[2] < 0)) return false;
  if (da[0] == 0 && da[1] == 0 && da[2] == 0) return coplanar_triangles(a, b);

  // Non-coplanar: the intersection, when non-empty, is a segment on the line
  // shared by both planes, and one of its endpoints lies on an edge of a or b.
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3;
    if (segment_hits_triangle(a[i], a[j], da[i], da[j], b)) return true;
  }
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3;
    if (segment_hits_triangle(b[i], b[j], db[i], db[j], a)) return true;
  }
  return false;
}

}  // namespace artigen
