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

#include "artigen/blueprint.hpp"
#include "artigen/error.hpp"

namespace artigen {
namespace {

constexpr double kMinExtent = 1e-6;

InstanceLink passthrough_link(const std::string& id, const std::string& label, const std::string& template_id,
                              const Vec3& origin) {
  InstanceLink l;
  l.id = id;
  l.label = label;
  l.template_id = template_id;
  l.origin = origin;
  l.passthrough = true;
  l.inertial.mass = kPassthroughMass;
  l.inertial.inertia = Mat3::Identity() * kPassthroughInertia;
  return l;
}

}  // namespace

MassProperties mass_properties(const TriMesh& local_mesh, const Eigen::Quaterniond& link_to_model) {
  MassProperties out;
  if (local_mesh.empty()) {
    out.mass = kPassthroughMass;
    out.inertia = Mat3::Identity() * kPassthroughInertia;
    return out;
  }
  const Mat3 r = link_to_model.normalized().toRotationMatrix();
  Aabb box;
  for (const Vec3& v : local_mesh.vertices) box.extend(r * v);
  const Vec3 e = box.extents().cwiseMax(kMinExtent);
  double volume = 0.0;
  try {
    volume = signed_volume(convex_hull(local_mesh));
  } catch (const Error& err) {
    if (err.code() != ErrorCode::kDegeneracy) throw;
  }
  if (!(volume > 0.0)) volume = e.x() * e.y() * e.z();
  out.mass = kDensity * volume;
  const double m12 = out.mass / 12.0;
  Mat3 model = Mat3::Zero();
  model(0, 0) = m12 * (e.y() * e.y() + e.z() * e.z());
  model(1, 1) = m12 * (e.x() * e.x() + e.z() * e.z());
  model(2, 2) = m12 * (e.x() * e.x() + e.y() * e.y());
  out.com = r.transpose() * box.center();
  out.inertia = r.transpose() * model * r;
  return out;
}

const InstanceLink* AssetInstance::find_link(const std::string& id) const {
  for (const auto& l : links) {
    if (l.id == id) return &l;
  }
  return nullptr;
}

const InstanceJoint* AssetInstance::find_joint(const std::string& id) const {
  for (const auto& j : joints) {
    if (j.id == id) return &j;
  }
  return nullptr;
}

JointConfig AssetInstance::defaults() const {
  JointConfig out;
  for (const auto& j : joints) out[j.id] = j.spec.default_value;
  return out;
}

AssetInstance instantiate(const KinematicBlueprint& blueprint, const NodeGraph& graph, const ParamVector& params) {
  check_params(graph.parameters(), params);
  const EvaluatedBody body = evaluate(graph, params);

  AssetInstance inst;
  inst.name = blueprint.name;
  inst.signature = blueprint_signature(blueprint);
  inst.params = params;
  inst.root = body.root;
  inst.label_table = body.label_table;

  std::map<std::string, std::vector<const EvaluatedJoint*>> parents_of;
  for (const auto& j : body.joints) parents_of[j.child].push_back(&j);
  std::map<std::string, Vec3> origin;
  for (const auto& l : body.links) origin[l.id] = l.origin;

  for (const auto& l : body.links) {
    const std::string tid = template_key(l.id);
    if (blueprint.find_link(tid) == nullptr) {
      fail(ErrorCode::kStructural, "link " + l.id + " has no template in blueprint " + blueprint.name);
    }
    const auto it = parents_of.find(l.id);
    std::string parent;
    if (it != parents_of.end()) {
      const auto& chain = it->second;
      parent = chain.front()->parent;
      Vec3 parent_origin = origin.at(parent);
      for (std::size_t k = 0; k < chain.size(); ++k) {
        const EvaluatedJoint& ej = *chain[k];
        InstanceJoint j;
        j.id = ej.id;
        j.template_id = template_key(ej.id);
        j.spec = ej.spec;
        j.parent = parent;
        const Vec3 model_pivot = ej.spec.pivot + origin.at(ej.parent);
        j.spec.pivot = model_pivot - parent_origin;
        if (k + 1 < chain.size()) {
          const std::string suffix = kPassthroughSuffix + std::to_string(k + 1);
          InstanceLink pt = passthrough_link(l.id + suffix, (l.label.empty() ? l.id : l.label) + suffix,
                                             tid + suffix, model_pivot);
          if (blueprint.find_link(pt.template_id) == nullptr) {
            fail(ErrorCode::kStructural, "passthrough " + pt.id + " has no template");
          }
          pt.local_frame = RigidTransform::from_translation(model_pivot - parent_origin);
          j.child = pt.id;
          parent = pt.id;
          parent_origin = model_pivot;
          inst.joints.push_back(std::move(j));
          inst.links.push_back(std::move(pt));
        } else {
          j.child = l.id;
          inst.joints.push_back(std::move(j));
        }
      }
      InstanceLink link;
      link.id = l.id;
      link.label = l.label;
      link.template_id = tid;
      link.mesh = l.mesh;
      link.origin = l.origin;
      link.local_frame = RigidTransform::from_translation(l.origin - parent_origin);
      inst.links.push_back(std::move(link));
    } else {
      InstanceLink link;
      link.id = l.id;
      link.label = l.label;
      link.template_id = tid;
      link.mesh = l.mesh;
      link.origin = l.origin;
      inst.links.push_back(std::move(link));
    }
  }

  for (auto& link : inst.links) {
    if (link.passthrough) continue;
    link.inertial = mass_properties(link.mesh, Eigen::Quaterniond::Identity());
    try {
      link.hull = convex_hull(link.mesh);
    } catch (const Error& err) {
      if (err.code() != ErrorCode::kDegeneracy) throw;
    }
  }
  for (const auto& j : inst.joints) {
    if (!(j.spec.lower <= j.spec.upper)) fail(ErrorCode::kRange, "joint " + j.id + " has lower > upper");
  }
  return inst;
}

std::map<std::string, RigidTransform> forward_kinematics(const AssetInstance& instance, const JointConfig& config) {
  std::map<std::string, const InstanceJoint*> parent_joint;
  for (const auto& j : instance.joints) parent_joint[j.child] = &j;
  for (const auto& [id, value] : config) {
    const InstanceJoint* j = instance.find_joint(id);
    if (j == nullptr) fail(ErrorCode::kInvalidParameter, "unknown joint '" + id + "'");
    if (!std::isfinite(value) || value < j->spec.lower || value > j->spec.upper) {
      fail(ErrorCode::kRange, "joint " + id + " value " + std::to_string(value) + " is out of range");
    }
  }
  std::map<std::string, RigidTransform> frames;
  for (const auto& l : instance.links) {
    const auto it = parent_joint.find(l.id);
    if (it == parent_joint.end()) {
      frames[l.id] = RigidTransform::identity();
      continue;
    }
    const InstanceJoint& j = *it->second;
    const auto v = config.find(j.id);
    const double q = v == config.end() ? j.spec.default_value : v->second;
    frames[l.id] = frames.at(j.parent) * j.spec.motion(q, j.spec.pivot) * l.local_frame;
  }
  return frames;
}

std::vector<TriMesh> posed_meshes(const AssetInstance& instance, const JointConfig& config) {
  const auto frames = forward_kinematics(instance, config);
  std::vector<TriMesh> out;
  out.reserve(instance.links.size());
  for (const auto& l : instance.links) out.push_back(apply_transform(l.mesh, frames.at(l.id)));
  return out;
}

}  // namespace artigen
