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
#include <deque>
#include <map>
#include <unordered_map>

#include "artigen/error.hpp"
#include "artigen/geometry.hpp"

namespace artigen {
namespace {

struct Face {
  std::array<int, 3> v;
  Vec3 normal;
  double offset = 0.0;
  std::vector<int> outside;
  bool alive = true;
};

struct EdgeKey {
  int a;
  int b;
  bool operator==(const EdgeKey& o) const { return a == o.a && b == o.b; }
};

struct EdgeHash {
  std::size_t operator()(const EdgeKey& e) const {
    return std::hash<std::int64_t>()((static_cast<std::int64_t>(e.a) << 32) ^ static_cast<std::uint32_t>(e.b));
  }
};

class Quickhull {
 public:
  explicit Quickhull(const std::vector<Vec3>& points) : points_(points) {
    Aabb box;
    for (const auto& p : points_) box.extend(p);
    double scale = box.extents().maxCoeff();
    scale = std::max(scale, std::max(box.min.cwiseAbs().maxCoeff(), box.max.cwiseAbs().maxCoeff()));
    eps_ = 1e-10 * std::max(scale, 1e-300);
  }

  // Returns the indices (into the input) of the hull vertices and the faces.
  void run() {
    build_simplex();
    for (;;) {
      int face = -1;
      for (std::size_t i = 0; i < faces_.size(); ++i) {
        if (faces_[i].alive && !faces_[i].outside.empty()) {
          face = static_cast<int>(i);
          break;
        }
      }
      if (face < 0) break;
      add_point(face);
    }
  }

  std::vector<std::array<int, 3>> faces() const {
    std::vector<std::array<int, 3>> out;
    for (const auto& f : faces_) {
      if (f.alive) out.push_back(f.v);
    }
    return out;
  }

 private:
  double distance(const Face& f, int p) const { return f.normal.dot(points_[p]) - f.offset; }

  int make_face(int a, int b, int c) {
    Face f;
    f.v = {a, b, c};
    Vec3 n = (points_[b] - points_[a]).cross(points_[c] - points_[a]);
    const double len = n.norm();
    f.normal = len > 0.0 ? Vec3(n / len) : Vec3::Zero();
    f.offset = f.normal.dot(points_[a]);
    faces_.push_back(std::move(f));
    const int id = static_cast<int>(faces_.size() - 1);
    edges_[{a, b}] = id;
    edges_[{b, c}] = id;
    edges_[{c, a}] = id;
    return id;
  }

  void build_simplex() {
    const int n = static_cast<int>(points_.size());
    if (n < 4) fail(ErrorCode::kDegeneracy, "convex hull needs at least four distinct points");
    // Two points far apart along the widest axis.
    int i0 = 0;
    int i1 = 0;
    double best = -1.0;
    for (int axis = 0; axis < 3; ++axis) {
      int lo = 0;
      int hi = 0;
      for (int i = 1; i < n; ++i) {
        if (points_[i][axis] < points_[lo][axis]) lo = i;
        if (points_[i][axis] > points_[hi][axis]) hi = i;
      }
      const double spread = points_[hi][axis] - points_[lo][axis];
      if (spread > best) {
        best = spread;
        i0 = lo;
        i1 = hi;
      }
    }
    if (!(best > eps_)) fail(ErrorCode::kDegeneracy, "convex hull input is a single point");

    const Vec3 dir = (points_[i1] - points_[i0]).normalized();
    int i2 = -1;
    best = eps_;
    for (int i = 0; i < n; ++i) {
      const Vec3 d = points_[i] - points_[i0];
      const double dist = (d - d.dot(dir) * dir).norm();
      if (dist > best) {
        best = dist;
        i2 = i;
      }
    }
    if (i2 < 0) fail(ErrorCode::kDegeneracy, "convex hull input is collinear");

    const Vec3 normal = (points_[i1] - points_[i0]).cross(points_[i2] - points_[i0]).normalized();
    int i3 = -1;
    best = eps_;
    for (int i = 0; i < n; ++i) {
      const double dist = std::abs(normal.dot(points_[i] - points_[i0]));
      if (dist > best) {
        best = dist;
        i3 = i;
      }
    }
    if (i3 < 0) fail(ErrorCode::kDegeneracy, "convex hull input is coplanar");

    const Vec3 interior = 0.25 * (points_[i0] + points_[i1] + points_[i2] + points_[i3]);
    const std::array<std::array<int, 3>, 4> tris = {{{i0, i1, i2}, {i0, i1, i3}, {i0, i2, i3}, {i1, i2, i3}}};
    for (auto t : tris) {
      const Vec3 n3 = (points_[t[1]] - points_[t[0]]).cross(points_[t[2]] - points_[t[0]]);
      if (n3.dot(interior - points_[t[0]]) > 0.0) std::swap(t[1], t[2]);
      make_face(t[0], t[1], t[2]);
    }

    std::vector<int> candidates;
    for (int i = 0; i < n; ++i) {
      if (i != i0 && i != i1 && i != i2 && i != i3) candidates.push_back(i);
    }
    assign(candidates, {0, 1, 2, 3});
  }

  void assign(const std::vector<int>& candidates, const std::vector<int>& targets) {
    for (int p : candidates) {
      int best_face = -1;
      double best = eps_;
      for (int f : targets) {
        const double d = distance(faces_[f], p);
        if (d > best) {
          best = d;
          best_face = f;
        }
      }
      if (best_face >= 0) faces_[best_face].outside.push_back(p);
    }
  }

  void add_point(int start) {
    Face& seed = faces_[start];
    int apex = seed.outside.front();
    double far = distance(seed, apex);
    for (int p : seed.outside) {
      const double d = distance(seed, p);
      if (d > far) {
        far = d;
        apex = p;
      }
    }

    std::vector<int> visible;
    std::vector<char> is_visible(faces_.size(), 0);
    std::deque<int> queue{start};
    is_visible[start] = 1;
    while (!queue.empty()) {
      const int f = queue.front();
      queue.pop_front();
      visible.push_back(f);
      const auto v = faces_[f].v;
      for (int k = 0; k < 3; ++k) {
        const auto it = edges_.find({v[(k + 1) % 3], v[k]});
        if (it == edges_.end()) continue;
        const int g = it->second;
        if (is_visible[g] || !faces_[g].alive) continue;
        if (distance(faces_[g], apex) > eps_) {
          is_visible[g] = 1;
          queue.push_back(g);
        }
      }
    }

    std::vector<std::pair<int, int>> horizon;
    for (int f : visible) {
      const auto v = faces_[f].v;
      for (int k = 0; k < 3; ++k) {
        const int a = v[k];
        const int b = v[(k + 1) % 3];
        const auto it = edges_.find({b, a});
        if (it == edges_.end() || !is_visible[it->second]) horizon.emplace_back(a, b);
      }
    }

    std::vector<int> orphans;
    for (int f : visible) {
      Face& face = faces_[f];
      face.alive = false;
      for (int p : face.outside) {
        if (p != apex) orphans.push_back(p);
      }
      face.outside.clear();
      for (int k = 0; k < 3; ++k) {
        const auto it = edges_.find({face.v[k], face.v[(k + 1) % 3]});
        if (it != edges_.end() && it->second == f) edges_.erase(it);
      }
    }

    std::vector<int> created;
    for (const auto& [a, b] : horizon) created.push_back(make_face(a, b, apex));
    assign(orphans, created);
  }

  const std::vector<Vec3>& points_;
  double eps_ = 0.0;
  std::vector<Face> faces_;
  std::unordered_map<EdgeKey, int, EdgeHash> edges_;
};

// One quickhull pass over `points`; returns hull faces indexing `points`.
std::vector<std::array<int, 3>> hull_pass(const std::vector<Vec3>& points) {
  Quickhull qh(points);
  qh.run();
  return qh.faces();
}

}  // namespace

TriMesh convex_hull(const TriMesh& mesh) {
  // Exact duplicates collapse onto their first occurrence.
  std::vector<Vec3> points;
  {
    std::map<std::array<double, 3>, int> seen;
    for (const auto& v : mesh.vertices) {
      if (!v.allFinite()) fail(ErrorCode::kInvalidParameter, "convex hull input has a non-finite vertex");
      const std::array<double, 3> key = {v.x() == 0.0 ? 0.0 : v.x(), v.y() == 0.0 ? 0.0 : v.y(),
                                         v.z() == 0.0 ? 0.0 : v.z()};
      if (seen.emplace(key, static_cast<int>(points.size())).second) points.push_back(v);
    }
  }

  // Re-running on the surviving vertices until the set stops shrinking makes
  // the result a fixed point of convex_hull.
  std::vector<std::array<int, 3>> faces;
  for (int round = 0; round < 4; ++round) {
    faces = hull_pass(points);
    std::vector<char> used(points.size(), 0);
    for (const auto& f : faces) {
      for (int i : f) used[i] = 1;
    }
    if (std::all_of(used.begin(), used.end(), [](char u) { return u != 0; })) break;
    std::vector<Vec3> kept;
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (used[i]) kept.push_back(points[i]);
    }
    points = std::move(kept);
    if (round == 3) faces = hull_pass(points);
  }

  std::vector<int> remap(points.size(), -1);
  TriMesh out;
  for (const auto& f : faces) {
    for (int i : f) remap[i] = 0;
  }
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (remap[i] == 0) {
      remap[i] = static_cast<int>(out.vertices.size());
      out.vertices.push_back(points[i]);
    }
  }
  for (const auto& f : faces) {
    out.triangles.push_back({static_cast<std::uint32_t>(remap[f[0]]), static_cast<std::uint32_t>(remap[f[1]]),
                             static_cast<std::uint32_t>(remap[f[2]])});
  }
  out.material_tag = mesh.material_tag;
  return out;
}

double hull_excess(const TriMesh& hull, const Vec3& point) {
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < hull.triangle_count(); ++i) {
    const Triangle t = hull.triangle(i);
    const Vec3 n = (t[1] - t[0]).cross(t[2] - t[0]);
    const double len = n.norm();
    if (!(len > 0.0)) continue;
    worst = std::max(worst, (n / len).dot(point - t[0]));
  }
  return worst;
}

}  // namespace artigen
