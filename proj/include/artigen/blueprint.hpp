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

#include <map>
#include <string>
#include <vector>

#include "artigen/geometry.hpp"
#include "artigen/graph.hpp"

namespace artigen {

inline constexpr double kDensity = 500.0;             // kg / m^3
inline constexpr double kPassthroughMass = 1e-6;      // kg
inline constexpr double kPassthroughInertia = 1e-9;   // kg m^2
inline constexpr const char* kPassthroughSuffix = "__passthrough_";

struct LinkTemplate {
  std::string id;
  std::string label;
  Condition condition = Condition::always();
  int group = -1;
  NodeId source = -1;
  bool passthrough = false;
};

struct JointTemplate {
  std::string id;
  JointType type = JointType::kRevolute;
  std::string parent;
  std::string child;
  Condition condition = Condition::always();
  int group = -1;
  NodeId source = -1;
  std::string label;
  std::string lower;  // parameter expressions
  std::string upper;
};

struct RepeatGroup {
  int id = -1;
  NodeId source = -1;
  int parent = -1;
  std::string count_expression;
  std::vector<std::string> count_parameters;
  std::vector<std::string> links;  // template ids copied per point
};

/// Category-level kinematic structure. Tree-shaped: every non-root template
/// has parent joints from exactly one parent under any switch selection.
struct KinematicBlueprint {
  std::string name;
  std::vector<LinkTemplate> links;
  std::vector<JointTemplate> joints;
  std::vector<RepeatGroup> groups;
  std::string root;

  const LinkTemplate* find_link(const std::string& id) const;
};

/// Throws kStructural when validation fails and kCycle when the joint
/// structure is not a tree after composite-joint normalization.
KinematicBlueprint extract_blueprint(const NodeGraph& graph);

/// Canonical text of the template topology, labels, joint types, switch
/// conditions and repeat structure.
std::string blueprint_canonical_text(const KinematicBlueprint& blueprint);
/// 16 hex digits of the FNV-1a 64 hash of the canonical text.
std::string blueprint_signature(const KinematicBlueprint& blueprint);
/// Indented template tree, one `label [joint_type lower..upper]` per line.
std::string blueprint_tree_text(const KinematicBlueprint& blueprint);

struct MassProperties {
  double mass = 0.0;
  Vec3 com = Vec3::Zero();       // link frame
  Mat3 inertia = Mat3::Zero();   // about the com, link frame axes
};

/// Mass from hull volume times kDensity; inertia of the solid bounding box
/// taken in model-aligned axes, then expressed in the link frame whose
/// orientation relative to the model is `link_to_model`.
MassProperties mass_properties(const TriMesh& local_mesh, const Eigen::Quaterniond& link_to_model);

struct InstanceLink {
  std::string id;
  std::string label;
  std::string template_id;
  TriMesh mesh;   // link frame
  TriMesh hull;   // link frame; empty for passthrough links
  MassProperties inertial;
  Vec3 origin = Vec3::Zero();                  // model-frame origin at the zero pose
  RigidTransform local_frame;                  // relative to the parent link at the zero pose
  bool passthrough = false;
};

struct InstanceJoint {
  std::string id;
  std::string parent;
  std::string child;
  std::string template_id;
  JointSpec spec;  // pivot in the parent link frame
};

using JointConfig = std::map<std::string, double>;

struct AssetInstance {
  std::string name;
  std::string signature;
  ParamVector params;
  std::vector<InstanceLink> links;  // root first, parents before children
  std::vector<InstanceJoint> joints;
  std::string root;
  std::vector<std::string> label_table;

  const InstanceLink* find_link(const std::string& id) const;
  const InstanceJoint* find_joint(const std::string& id) const;
  JointConfig defaults() const;
};

/// Throws kMissingParameter and kRange for bad parameters, kStructural when
/// the evaluated body does not fit the blueprint.
AssetInstance instantiate(const KinematicBlueprint& blueprint, const NodeGraph& graph, const ParamVector& params);

/// World frames of all links. Missing joints use their defaults; throws
/// kRange for an out-of-range value and kInvalidParameter for an unknown joint.
std::map<std::string, RigidTransform> forward_kinematics(const AssetInstance& instance, const JointConfig& config);

/// Link meshes placed at their world frames for `config`.
std::vector<TriMesh> posed_meshes(const AssetInstance& instance, const JointConfig& config);

}  // namespace artigen
