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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <set>

#include "artigen/error.hpp"
#include "artigen/geometry.hpp"

using namespace artigen;

namespace {

bool throws_code(ErrorCode code, auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code() == code;
  }
  return false;
}

std::set<std::array<double, 3>> vertex_set(const TriMesh& m) {
  std::set<std::array<double, 3>> out;
  for (const auto& v : m.vertices) out.insert({v.x(), v.y(), v.z()});
  return out;
}

// Every directed edge of a closed, consistently wound mesh appears once and
// its reverse appears once.
bool closed_and_consistent(const TriMesh& m) {
  std::map<std::pair<std::uint32_t, std::uint32_t>, int> edges;
  for (const auto& t : m.triangles) {
    for (int k = 0; k < 3; ++k) ++edges[{t[k], t[(k + 1) % 3]}];
  }
  for (const auto& [e, count] : edges) {
    if (count != 1) return false;
    const auto it = edges.find({e.second, e.first});
    if (it == edges.end() || it->second != 1) return false;
  }
  return true;
}

// Outward winding: each face normal points away from the mesh centroid.
bool outward(const TriMesh& m) {
  Vec3 c = Vec3::Zero();
  for (const auto& v : m.vertices) c += v;
  c /= static_cast<double>(m.vertices.size());
  for (std::size_t i = 0; i < m.triangle_count(); ++i) {
    const Triangle t = m.triangle(i);
    const Vec3 n = (t[1] - t[0]).cross(t[2] - t[0]);
    if (n.dot((t[0] + t[1] + t[2]) / 3.0 - c) <= 0.0) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Independent triangle-triangle oracles.

enum class Verdict { kYes, kNo, kUnsure };

// Non-coplanar pairs: clip each triangle against the other's plane, project
// both crossing segments on the common line and compare intervals.
Verdict interval_oracle(const Triangle& a, const Triangle& b) {
  const double margin = 1e-7;
  auto plane = [](const Triangle& t) {
    Vec3 n = (t[1] - t[0]).cross(t[2] - t[0]).normalized();
    return std::pair<Vec3, double>(n, n.dot(t[0]));
  };
  const auto [na, oa] = plane(a);
  const auto [nb, ob] = plane(b);
  if (na.cross(nb).norm() < 1e-6) return Verdict::kUnsure;
  std::array<double, 3> da{};
  std::array<double, 3> db{};
  for (int i = 0; i < 3; ++i) {
    da[i] = nb.dot(a[i]) - ob;
    db[i] = na.dot(b[i]) - oa;
  }
  for (double d : da) {
    if (std::abs(d) < margin) return Verdict::kUnsure;
  }
  for (double d : db) {
    if (std::abs(d) < margin) return Verdict::kUnsure;
  }
  auto same_side = [](const std::array<double, 3>& d) {
    return (d[0] > 0 && d[1] > 0 && d[2] > 0) || (d[0] < 0 && d[1] < 0 && d[2] < 0);
  };
  if (same_side(da) || same_side(db)) return Verdict::kNo;
  const Vec3 dir = na.cross(nb).normalized();
  auto interval = [&dir](const Triangle& t, const std::array<double, 3>& d) {
    std::vector<double> ts;
    for (int i = 0; i < 3; ++i) {
      const int j = (i + 1) % 3;
      if ((d[i] > 0) != (d[j] > 0)) {
        const double s = d[i] / (d[i] - d[j]);
        ts.push_back(dir.dot(t[i] + s * (t[j] - t[i])));
      }
    }
    return std::pair<double, double>(std::min(ts[0], ts[1]), std::max(ts[0], ts[1]));
  };
  const auto ia = interval(a, da);
  const auto ib = interval(b, db);
  const double gap = std::max(ia.first, ib.first) - std::min(ia.second, ib.second);
  if (std::abs(gap) < margin) return Verdict::kUnsure;
  return gap < 0 ? Verdict::kYes : Verdict::kNo;
}

using P2 = std::array<double, 2>;

double cross2(const P2& o, const P2& a, const P2& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

double polygon_area(const std::vector<P2>& poly) {
  double s = 0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const auto& p = poly[i];
    const auto& q = poly[(i + 1) % poly.size()];
    s += p[0] * q[1] - q[0] * p[1];
  }
  return 0.5 * std::abs(s);
}

// Sutherland-Hodgman clip of `subject` by the convex counter-clockwise `clip`.
std::vector<P2> clip_polygon(std::vector<P2> subject, std::array<P2, 3> clip) {
  if (cross2(clip[0], clip[1], clip[2]) < 0) std::swap(clip[1], clip[2]);
  for (int e = 0; e < 3 && !subject.empty(); ++e) {
    const P2 c0 = clip[e];
    const P2 c1 = clip[(e + 1) % 3];
    std::vector<P2> out;
    for (std::size_t i = 0; i < subject.size(); ++i) {
      const P2 p = subject[i];
      const P2 q = subject[(i + 1) % subject.size()];
      const double sp = cross2(c0, c1, p);
      const double sq = cross2(c0, c1, q);
      if (sp >= 0) out.push_back(p);
      if ((sp >= 0) != (sq >= 0)) {
        const double s = sp / (sp - sq);
        out.push_back({p[0] + s * (q[0] - p[0]), p[1] + s * (q[1] - p[1])});
      }
    }
    subject = std::move(out);
  }
  return subject;
}

double point_segment_distance(const P2& p, const P2& a, const P2& b) {
  const double dx = b[0] - a[0];
  const double dy = b[1] - a[1];
  double s = ((p[0] - a[0]) * dx + (p[1] - a[1]) * dy) / (dx * dx + dy * dy);
  s = std::clamp(s, 0.0, 1.0);
  return std::hypot(p[0] - a[0] - s * dx, p[1] - a[1] - s * dy);
}

// Coplanar pairs in z = 0: positive overlap area means intersecting; a
// positive boundary distance means disjoint. Slivers stay undecided.
Verdict coplanar_oracle(const std::array<P2, 3>& a, const std::array<P2, 3>& b) {
  const double margin = 1e-7;
  const auto clipped = clip_polygon({a[0], a[1], a[2]}, b);
  if (clipped.size() >= 3 && polygon_area(clipped) > margin) return Verdict::kYes;
  if (clipped.size() >= 3) return Verdict::kUnsure;
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      best = std::min(best, point_segment_distance(a[i], b[j], b[(j + 1) % 3]));
      best = std::min(best, point_segment_distance(b[i], a[j], a[(j + 1) % 3]));
    }
  }
  if (best > margin) return Verdict::kNo;
  return Verdict::kUnsure;
}

Triangle random_triangle(std::mt19937_64& rng, double spread) {
  std::uniform_real_distribution<double> u(-spread, spread);
  Triangle t;
  do {
    for (auto& v : t) v = Vec3(u(rng), u(rng), u(rng));
  } while (triangle_area(t) < 1e-3);
  return t;
}

}  // namespace

TEST_CASE("box primitive") {
  const TriMesh cube = make_box(Vec3(1, 1, 1));
  CHECK(cube.vertex_count() == 8);
  CHECK(cube.triangle_count() == 12);
  const Aabb box = compute_aabb(cube);
  CHECK(box.min == Vec3(-0.5, -0.5, -0.5));
  CHECK(box.max == Vec3(0.5, 0.5, 0.5));
  CHECK(compute_aabb(make_box(Vec3(2, 1, 0.1))).extents().isApprox(Vec3(2, 1, 0.1), 1e-15));
  CHECK(closed_and_consistent(cube));
  CHECK(outward(cube));
  CHECK_NOTHROW(check_mesh(cube));

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.01, 3.0);
  for (int i = 0; i < 50; ++i) {
    const double a = u(rng), b = u(rng), c = u(rng);
    const TriMesh m = make_box(Vec3(a, b, c));
    CHECK(surface_area(m) == doctest::Approx(2 * (a * b + b * c + c * a)).epsilon(1e-12));
    CHECK(signed_volume(m) == doctest::Approx(a * b * c).epsilon(1e-12));
  }
  CHECK(throws_code(ErrorCode::kInvalidParameter, [] { make_box(Vec3(1, 0, 1)); }));
  CHECK(throws_code(ErrorCode::kInvalidParameter, [] { make_box(Vec3(1, -2, 1)); }));
}

TEST_CASE("cylinder primitive") {
  const TriMesh cyl = make_cylinder(0.5, 1.0, 32);
  CHECK(cyl.triangle_count() == 4 * 32);
  const Aabb box = compute_aabb(cyl);
  CHECK(box.min.isApprox(Vec3(-0.5, -0.5, -0.5), 1e-15));
  CHECK(box.max.isApprox(Vec3(0.5, 0.5, 0.5), 1e-15));
  CHECK(closed_and_consistent(cyl));
  CHECK(outward(cyl));

  for (double r : {0.1, 0.5, 2.0}) {
    for (double h : {0.05, 1.0, 3.0}) {
      const double exact = std::numbers::pi * r * r * h;
      CHECK(std::abs(signed_volume(make_cylinder(r, h, 32)) - exact) / exact < 0.01);
    }
  }
  CHECK(throws_code(ErrorCode::kInvalidParameter, [] { make_cylinder(0.5, 1, 2); }));
  CHECK(throws_code(ErrorCode::kInvalidParameter, [] { make_cylinder(0, 1, 8); }));
}

TEST_CASE("sphere and prism primitives") {
  const TriMesh s = make_sphere(0.3, 32);
  const Aabb box = compute_aabb(s);
  CHECK(box.min.isApprox(Vec3(-0.3, -0.3, -0.3), 1e-12));
  CHECK(box.max.isApprox(Vec3(0.3, 0.3, 0.3), 1e-12));
  CHECK(closed_and_consistent(s));
  CHECK(outward(s));
  CHECK_NOTHROW(check_mesh(s));

  const TriMesh hex = make_ngon_prism(1.0, 0.5, 6);
  CHECK(hex.vertex_count() == 14);
  CHECK(hex.triangle_count() == 24);
  CHECK(closed_and_consistent(hex));
  // Regular hexagon area is (3 sqrt 3 / 2) r^2.
  CHECK(signed_volume(hex) == doctest::Approx(1.5 * std::sqrt(3.0) * 0.5).epsilon(1e-12));
  CHECK(throws_code(ErrorCode::kInvalidParameter, [] { make_ngon_prism(1, 1, 2); }));
}

TEST_CASE("rounded box") {
  CHECK(vertex_set(make_rounded_box(Vec3(1, 1, 1), 0.0)) == vertex_set(make_box(Vec3(1, 1, 1))));

  const TriMesh rb = make_rounded_box(Vec3(1, 1, 1), 0.1);
  const Aabb box = compute_aabb(rb);
  CHECK(box.extents().isApprox(Vec3(1, 1, 1), 1e-15));
  CHECK(closed_and_consistent(rb));
  CHECK(outward(rb));
  CHECK_NOTHROW(check_mesh(rb));
  // Convex: the hull keeps every vertex and nothing pokes outside it.
  const TriMesh hull = convex_hull(rb);
  CHECK(vertex_set(hull) == vertex_set(rb));
  for (const auto& v : rb.vertices) CHECK(hull_excess(hull, v) <= 1e-12);
  // Chamfered volume: each edge loses a triangular prism of section b^2/2
  // over length 1 - 2b, each corner cube of side b keeps a b^3/6 tetrahedron.
  const double b = 0.1;
  const double edge_loss = 12 * 0.5 * b * b * (1 - 2 * b);
  const double corner_loss = 8 * (b * b * b - b * b * b / 6.0);
  const double expected = 1.0 - edge_loss - corner_loss;
  CHECK(signed_volume(rb) == doctest::Approx(expected).epsilon(1e-12));

  CHECK(throws_code(ErrorCode::kInvalidParameter, [] { make_rounded_box(Vec3(1, 1, 1), 0.6); }));
  CHECK(throws_code(ErrorCode::kInvalidParameter, [] { make_rounded_box(Vec3(1, 1, 1), 0.5); }));
  CHECK(throws_code(ErrorCode::kInvalidParameter, [] { make_rounded_box(Vec3(1, 1, 1), -0.1); }));
}

TEST_CASE("transforms") {
  const TriMesh cube = make_box(Vec3(1, 1, 1));
  const TriMesh same = apply_transform(cube, RigidTransform::identity());
  CHECK(same.vertices == cube.vertices);

  const Aabb shifted = compute_aabb(apply_transform(cube, RigidTransform::from_translation(Vec3(1, 0, 0))));
  CHECK(shifted.min == Vec3(0.5, -0.5, -0.5));
  CHECK(shifted.max == Vec3(1.5, 0.5, 0.5));

  const auto plus = RigidTransform::from_axis_angle(Vec3::UnitZ(), std::numbers::pi / 2);
  const auto minus = RigidTransform::from_axis_angle(Vec3::UnitZ(), -std::numbers::pi / 2);
  const TriMesh back = apply_transform(apply_transform(cube, plus), minus);
  for (std::size_t i = 0; i < cube.vertices.size(); ++i) {
    CHECK((back.vertices[i] - cube.vertices[i]).norm() < 1e-9);
  }

  // Rotation about a pivot, checked in closed form.
  const auto about = RigidTransform::about_axis(Vec3(1, 0, 0), Vec3(0, 0, 1), std::numbers::pi / 2);
  CHECK((about.apply(Vec3(2, 0, 0)) - Vec3(1, 1, 0)).norm() < 1e-12);

  // Rigidity and associativity on random inputs.
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-2, 2);
  const TriMesh sphere = make_sphere(0.7, 12);
  for (int trial = 0; trial < 20; ++trial) {
    auto random_t = [&] {
      RigidTransform t = RigidTransform::about_axis(Vec3(u(rng), u(rng), u(rng)), Vec3(u(rng), u(rng), u(rng) + 3),
                                                    u(rng) * 3);
      t.translation += Vec3(u(rng), u(rng), u(rng));
      return t;
    };
    const RigidTransform a = random_t(), b = random_t(), c = random_t();
    CHECK(std::abs((a * b).rotation.norm() - 1.0) < 1e-9);
    const RigidTransform l = (a * b) * c;
    const RigidTransform r = a * (b * c);
    const Vec3 p(u(rng), u(rng), u(rng));
    CHECK((l.apply(p) - r.apply(p)).norm() < 1e-9);
    CHECK((a.inverse().apply(a.apply(p)) - p).norm() < 1e-9);

    const TriMesh moved = apply_transform(sphere, a);
    CHECK(moved.triangles == sphere.triangles);
    for (std::size_t i = 0; i + 1 < sphere.vertices.size(); i += 3) {
      const double d0 = (sphere.vertices[i] - sphere.vertices[i + 1]).norm();
      const double d1 = (moved.vertices[i] - moved.vertices[i + 1]).norm();
      CHECK(std::abs(d0 - d1) < 1e-9);
    }
  }
}

TEST_CASE("merge") {
  const TriMesh cube = make_box(Vec3(1, 1, 1));
  const std::vector<TriMesh> one = {cube};
  CHECK(merge_meshes(one).vertices == cube.vertices);
  const std::vector<TriMesh> two = {cube, cube};
  const TriMesh merged = merge_meshes(two);
  CHECK(merged.vertex_count() == 16);
  CHECK(merged.triangle_count() == 24);
  CHECK_NOTHROW(check_mesh(merged));

  const std::vector<TriMesh> labeled = {with_face_label(cube, 3), make_cylinder(0.2, 1, 8),
                                        with_face_label(make_sphere(0.1, 8), 7)};
  const TriMesh m = merge_meshes(labeled);
  std::multiset<std::int32_t> expected;
  for (const auto& part : labeled) {
    for (std::size_t i = 0; i < part.triangle_count(); ++i) expected.insert(part.has_labels() ? part.face_labels[i] : -1);
  }
  CHECK(std::multiset<std::int32_t>(m.face_labels.begin(), m.face_labels.end()) == expected);
  // Labels stay attached to the faces they came from.
  for (std::size_t i = 0; i < 12; ++i) CHECK(m.face_labels[i] == 3);
  CHECK(m.face_labels.back() == 7);

  const std::vector<TriMesh> none;
  CHECK(throws_code(ErrorCode::kInvalidParameter, [&] { merge_meshes(none); }));
}

TEST_CASE("triangle intersection: constructed cases") {
  const Triangle a = {Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(0, 1, 0)};
  const Triangle crossing = {Vec3(0.2, 0.2, -1), Vec3(0.3, 0.2, 1), Vec3(0.2, 0.3, 1)};
  CHECK(triangles_intersect(a, crossing));
  CHECK(triangles_intersect(crossing, a));

  Triangle lifted = a;
  for (auto& v : lifted) v.z() += 1.0;
  CHECK_FALSE(triangles_intersect(a, lifted));

  // Shared vertex only: closed triangles touch.
  const Triangle corner = {Vec3(1, 0, 0), Vec3(2, 0, 1), Vec3(2, 1, 0)};
  CHECK(triangles_intersect(a, corner));
  // Coplanar overlap, coplanar containment and coplanar disjoint.
  const Triangle overlap = {Vec3(0.5, 0.1, 0), Vec3(1.5, 0.1, 0), Vec3(0.5, 1.0, 0)};
  CHECK(triangles_intersect(a, overlap));
  const Triangle inside = {Vec3(0.1, 0.1, 0), Vec3(0.2, 0.1, 0), Vec3(0.1, 0.2, 0)};
  CHECK(triangles_intersect(a, inside));
  CHECK(triangles_intersect(inside, a));
  const Triangle far = {Vec3(2, 2, 0), Vec3(3, 2, 0), Vec3(2, 3, 0)};
  CHECK_FALSE(triangles_intersect(a, far));
  // An edge lying in the other plane, crossing it.
  const Triangle edge_in_plane = {Vec3(-0.5, 0.25, 0), Vec3(1.5, 0.25, 0), Vec3(0.5, 0.25, 1)};
  CHECK(triangles_intersect(a, edge_in_plane));
  // Piercing a face near its edge but outside.
  const Triangle miss = {Vec3(0.6, 0.6, -1), Vec3(0.7, 0.6, 1), Vec3(0.6, 0.7, 1)};
  CHECK_FALSE(triangles_intersect(a, miss));

  const Triangle degenerate = {Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(2, 0, 0)};
  CHECK(throws_code(ErrorCode::kInvalidParameter, [&] { triangles_intersect(a, degenerate); }));
  CHECK(throws_code(ErrorCode::kInvalidParameter, [&] { triangles_intersect(degenerate, a); }));
}

TEST_CASE("triangle intersection agrees with interval oracle on random pairs") {
  std::mt19937_64 rng(20240611);
  int decided = 0, hits = 0;
  int mismatches = 0;
  for (int i = 0; i < 10000; ++i) {
    const Triangle a = random_triangle(rng, 1.0);
    const Triangle b = random_triangle(rng, 1.0);
    const Verdict v = interval_oracle(a, b);
    if (v == Verdict::kUnsure) continue;
    ++decided;
    const bool got = triangles_intersect(a, b);
    if (got) ++hits;
    if (got != (v == Verdict::kYes) || got != triangles_intersect(b, a)) ++mismatches;
  }
  CHECK(mismatches == 0);
  CHECK(decided > 9500);
  CHECK(hits > 500);  // both outcomes are well represented
  CHECK(decided - hits > 500);
}

TEST_CASE("coplanar triangle intersection agrees with clipping oracle") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(-1, 1);
  int decided = 0, hits = 0, mismatches = 0;
  for (int i = 0; i < 10000; ++i) {
    std::array<P2, 3> a2, b2;
    Triangle a, b;
    do {
      for (int k = 0; k < 3; ++k) {
        a2[k] = {u(rng), u(rng)};
        b2[k] = {u(rng), u(rng)};
        a[k] = Vec3(a2[k][0], a2[k][1], 0);
        b[k] = Vec3(b2[k][0], b2[k][1], 0);
      }
    } while (triangle_area(a) < 1e-3 || triangle_area(b) < 1e-3);
    const Verdict v = coplanar_oracle(a2, b2);
    if (v == Verdict::kUnsure) continue;
    ++decided;
    const bool got = triangles_intersect(a, b);
    if (got) ++hits;
    if (got != (v == Verdict::kYes) || got != triangles_intersect(b, a)) {
      ++mismatches;
    }
  }
  CHECK(mismatches == 0);
  CHECK(decided > 9500);
  CHECK(hits > 500);
  CHECK(decided - hits > 500);
}

TEST_CASE("convex hull") {
  const TriMesh cube = make_box(Vec3(1, 1, 1));
  const TriMesh hull = convex_hull(cube);
  CHECK(hull.vertex_count() == 8);
  CHECK(closed_and_consistent(hull));
  CHECK(signed_volume(hull) == doctest::Approx(1.0).epsilon(1e-12));

  TriMesh with_inner = cube;
  with_inner.vertices.emplace_back(0.1, 0.0, -0.2);
  const TriMesh h2 = convex_hull(with_inner);
  CHECK(h2.vertex_count() == 8);
  CHECK(vertex_set(h2).count({0.1, 0.0, -0.2}) == 0);

  std::mt19937_64 rng(5);
  std::normal_distribution<double> n(0, 1);
  for (int trial = 0; trial < 30; ++trial) {
    TriMesh cloud;
    const int count = 20 + trial * 20;
    for (int i = 0; i < count; ++i) cloud.vertices.emplace_back(n(rng), n(rng), 0.3 * n(rng));
    const TriMesh h = convex_hull(cloud);
    CHECK(closed_and_consistent(h));
    CHECK(signed_volume(h) > 0);
    double worst = -1;
    for (const auto& v : cloud.vertices) worst = std::max(worst, hull_excess(h, v));
    CHECK(worst <= 1e-9);
    // Idempotence.
    CHECK(vertex_set(convex_hull(h)) == vertex_set(h));
  }

  TriMesh flat;
  for (int i = 0; i < 10; ++i) flat.vertices.emplace_back(i * 0.1, (i * i) % 7 * 0.1, 0.0);
  CHECK(throws_code(ErrorCode::kDegeneracy, [&] { convex_hull(flat); }));
  TriMesh tiny;
  tiny.vertices = {Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(0, 1, 0)};
  CHECK(throws_code(ErrorCode::kDegeneracy, [&] { convex_hull(tiny); }));
}

TEST_CASE("obj output") {
  const TriMesh cube = make_box(Vec3(1, 2, 3));
  const std::string text = format_obj(cube, "part");
  CHECK(text.rfind("o part\n", 0) == 0);
  CHECK(text.find("v -0.5 -1 -1.5\n") != std::string::npos);
  CHECK(text.find("f 1 ") != std::string::npos);
  CHECK(std::count(text.begin(), text.end(), '\n') == 1 + 8 + 12);
  CHECK(format_obj(cube, "part") == text);
  TriMesh third = cube;
  third.vertices[0] = Vec3(1.0 / 3.0, -0.0, 2e-7);
  CHECK(format_obj(third, "").rfind("v 0.333333333 0 2e-07\n", 0) == 0);
}
