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

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "artigen/blueprint.hpp"

namespace artigen {

enum class SampleStrategy { kGrid, kRandom };
enum class PairFilter { kAllPairs, kAdjacentExcluded };

inline constexpr std::uint64_t kMaxSweepConfigs = 100000;

struct SweepPlan {
  SampleStrategy strategy = SampleStrategy::kGrid;
  int samples = 3;
  std::uint64_t seed = 0;  // random strategy only
  PairFilter filter = PairFilter::kAdjacentExcluded;
  double tolerance = 1e-6;
  bool broadphase = true;

  static SweepPlan grid(int n) {
    SweepPlan p;
    p.samples = n;
    return p;
  }
  static SweepPlan random(int n, std::uint64_t seed) {
    SweepPlan p;
    p.strategy = SampleStrategy::kRandom;
    p.samples = n;
    p.seed = seed;
    return p;
  }
};

struct CollisionFinding {
  std::string link_a;  // earlier in instance link order
  std::string link_b;
  JointConfig config;
  std::pair<std::size_t, std::size_t> witness;  // triangle indices into link_a, link_b meshes
};

struct CollisionReport {
  std::vector<CollisionFinding> findings;
  std::uint64_t configs_tested = 0;
  bool clean = true;
};

/// Throws kInvalidParameter for n < 1 or a negative tolerance.
void check_plan(const SweepPlan& plan);

/// Per-joint sample values of a grid plan in instance joint order. One
/// sample means the default value; fixed joints always get a single sample.
std::vector<std::vector<double>> grid_samples(const AssetInstance& instance, int n);

/// Number of distinct configurations the sweep poses. A grid plan poses, for
/// every swept pair, each assignment of the joints that move that pair, with
/// all other joints at their first sample. Throws kPlanTooLarge above
/// kMaxSweepConfigs.
std::uint64_t plan_size(const AssetInstance& instance, const SweepPlan& plan);

/// Sampled sweep over the joint ranges. A pair is reported once per distinct
/// assignment of the joints that move the two links relative to each other;
/// the remaining joints are recorded at their first sample. Findings are
/// sorted by config then by link pair.
CollisionReport sweep_check(const AssetInstance& instance, const SweepPlan& plan);

/// Single-configuration check. Missing joints use their defaults; throws
/// kRange for out-of-range values.
CollisionReport check_at(const AssetInstance& instance, const JointConfig& config, const SweepPlan& plan = {});

/// True when the triangles still intersect after each is moved against its
/// outward normal by `tolerance` and inset by half of it. Faces in contact,
/// or overlapping by less than the tolerance, do not count.
bool triangles_penetrate(const Triangle& a, const Triangle& b, double tolerance);

/// Re-poses the instance at the finding's config and re-tests its witness.
bool recheck_finding(const AssetInstance& instance, const CollisionFinding& finding, double tolerance);

std::string report_json(const AssetInstance& instance, const CollisionReport& report, const SweepPlan& plan);

}  // namespace artigen
