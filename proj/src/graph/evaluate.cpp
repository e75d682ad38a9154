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
#include <set>

#include "artigen/error.hpp"
#include "artigen/graph.hpp"
#include "graph/internal.hpp"

namespace artigen {

RigidTransform JointSpec::motion(double value, const Vec3& pivot_point) const {
  if (type == JointType::kRevolute) return RigidTransform::about_axis(pivot_point, axis, value);
  return RigidTransform::from_translation(value * axis);
}

const EvaluatedLink& EvaluatedBody::link(std::string_view id) const {
  const auto index = find_link(id);
  if (!index) fail(ErrorCode::kInvalidParameter, "no link '" + std::string(id) + "'");
  return links[*index];
}

std::optional<std::size_t> EvaluatedBody::find_link(std::string_view id) const {
  for (std::size_t i = 0; i < links.size(); ++i) {
    if (links[i].id == id) return i;
  }
  return std::nullopt;
}

TriMesh EvaluatedBody::posed_mesh(std::size_t link) const {
  return apply_transform(links[link].mesh, links[link].frame);
}

namespace {

bool same_mesh(const TriMesh& a, const TriMesh& b) {
  return a.vertices == b.vertices && a.triangles == b.triangles && a.face_labels == b.face_labels;
}

void check_joint_value(const EvaluatedJoint& j, double value) {
  if (!std::isfinite(value) || value < j.spec.lower || value > j.spec.upper) {
    fail(ErrorCode::kRange, "joint " + j.id + " value " + std::to_string(value) + " outside [" +
                                std::to_string(j.spec.lower) + ", " + std::to_string(j.spec.upper) + "]");
  }
}

// Working representation: meshes and pivots in the model frame.
struct WorkBody {
  std::vector<EvaluatedLink> links;  // root first
  std::vector<EvaluatedJoint> joints;
  std::string root;

  EvaluatedLink* find(const std::string& key) {
    for (auto& l : links) {
      if (l.id == key) return &l;
    }
    return nullptr;
  }
};

void append_mesh(TriMesh& into, const TriMesh& extra) {
  if (into.empty() && into.vertices.empty()) {
    into = extra;
    return;
  }
  const std::vector<TriMesh> parts = {into, extra};
  into = merge_meshes(parts);
}

class Evaluator {
 public:
  Evaluator(const NodeGraph& graph, const ParamVector& params) : graph_(graph), params_(params) {
    std::set<std::string> labels;
    for (const auto& n : graph.nodes()) {
      if (n.kind == NodeKind::kSemanticLabel || n.kind == NodeKind::kStoreAttribute) labels.insert(n.label);
    }
    label_table_.assign(labels.begin(), labels.end());
  }

  EvaluatedBody run(const std::optional<JointValues>& joint_values) {
    if (!graph_.has_node(graph_.output())) fail(ErrorCode::kInvalidParameter, "graph has no output node");
    const auto order = detail::topological_order(graph_, graph_.output());
    plain_ = detail::static_plain(graph_, order);
    return assemble(body(graph_.output()), joint_values);
  }

 private:
  double scalar(const Node& n, const std::string& port, double fallback) const {
    const auto it = n.scalars.find(port);
    if (it == n.scalars.end()) return fallback;
    return evaluate_scalar(graph_, it->second, params_);
  }

  double required(const Node& n, const std::string& port) const {
    const auto it = n.scalars.find(port);
    if (it == n.scalars.end()) {
      fail(ErrorCode::kInvalidParameter,
           std::string(to_string(n.kind)) + " node " + std::to_string(n.id) + " is missing '" + port + "'");
    }
    return evaluate_scalar(graph_, it->second, params_);
  }

  int integer(const Node& n, const std::string& port, double fallback) const {
    const double v = scalar(n, port, fallback);
    const double r = std::round(v);
    if (!std::isfinite(v) || std::abs(v - r) > 1e-9) {
      fail(ErrorCode::kInvalidParameter, "'" + port + "' of node " + std::to_string(n.id) + " is not an integer");
    }
    return static_cast<int>(r);
  }

  // Lazy so that unselected switch options are never evaluated.
  const WorkBody& body(NodeId id) {
    const auto it = bodies_.find(id);
    if (it != bodies_.end()) return it->second;
    const Node& n = graph_.node(id);
    if (output_type(n.kind) != PortType::kGeometry) fail(ErrorCode::kPortType, "scalar node used as geometry");
    WorkBody b = evaluate(n);
    return bodies_.emplace(id, std::move(b)).first->second;
  }

  const WorkBody& input(const Node& n, std::size_t i) {
    if (i >= n.inputs.size() || n.inputs[i] < 0) {
      fail(ErrorCode::kInvalidParameter, "node " + std::to_string(n.id) + " has an unwired geometry input");
    }
    return body(n.inputs[i]);
  }

  std::int32_t label_id(const std::string& label) const {
    const auto it = std::lower_bound(label_table_.begin(), label_table_.end(), label);
    return static_cast<std::int32_t>(it - label_table_.begin());
  }

  static WorkBody make_plain(std::string key, std::string label, TriMesh mesh, NodeId source) {
    WorkBody b;
    EvaluatedLink l;
    l.id = key;
    l.label = std::move(label);
    l.mesh = std::move(mesh);
    l.source = source;
    b.links.push_back(std::move(l));
    b.root = std::move(key);
    return b;
  }

  TriMesh primitive(const Node& n) const {
    TriMesh mesh;
    switch (n.shape) {
      case PrimitiveShape::kBox:
        mesh = make_box(Vec3(required(n, "size_x"), required(n, "size_y"), required(n, "size_z")));
        break;
      case PrimitiveShape::kRoundedBox:
        mesh = make_rounded_box(Vec3(required(n, "size_x"), required(n, "size_y"), required(n, "size_z")),
                                scalar(n, "bevel", 0.0));
        break;
      case PrimitiveShape::kCylinder:
        mesh = make_cylinder(required(n, "radius"), required(n, "height"), n.segments);
        break;
      case PrimitiveShape::kSphere: mesh = make_sphere(required(n, "radius"), n.segments); break;
      case PrimitiveShape::kNgonPrism:
        mesh = make_ngon_prism(required(n, "radius"), required(n, "height"), integer(n, "sides", 0));
        break;
    }
    if (!n.material.empty()) mesh.material_tag = n.material;
    return mesh;
  }

  static void transform_body(WorkBody& body, const RigidTransform& t) {
    for (auto& l : body.links) l.mesh = apply_transform(l.mesh, t);
    for (auto& j : body.joints) {
      j.spec.pivot = t.apply(j.spec.pivot);
      j.spec.axis = t.rotate(j.spec.axis).normalized();
    }
  }

  void unify(WorkBody& into, const WorkBody& other) const {
    for (const auto& l : other.links) {
      if (EvaluatedLink* existing = into.find(l.id)) {
        if (!same_mesh(existing->mesh, l.mesh)) {
          fail(ErrorCode::kStructural, "link " + l.id + " is produced with two different geometries");
        }
        if (existing->label.empty()) existing->label = l.label;
      } else {
        into.links.push_back(l);
      }
    }
    for (const auto& j : other.joints) {
      const bool known = std::any_of(into.joints.begin(), into.joints.end(),
                                     [&](const EvaluatedJoint& x) { return x.id == j.id; });
      if (!known) into.joints.push_back(j);
    }
  }

  WorkBody merge(const Node& n) {
    if (n.inputs.empty()) fail(ErrorCode::kInvalidParameter, "merge without inputs");
    if (plain_.at(n.id)) {
      const WorkBody& first = input(n, 0);
      std::vector<TriMesh> meshes;
      for (std::size_t i = 0; i < n.inputs.size(); ++i) meshes.push_back(input(n, i).links.front().mesh);
      return make_plain(first.root, first.links.front().label, merge_meshes(meshes), first.links.front().source);
    }
    std::optional<WorkBody> result;
    std::vector<TriMesh> folded;
    for (std::size_t i = 0; i < n.inputs.size(); ++i) {
      const WorkBody& b = input(n, i);
      if (plain_.at(n.inputs[i])) {
        folded.push_back(b.links.front().mesh);
        continue;
      }
      if (!result) {
        result = b;
        continue;
      }
      if (result->find(b.root) != nullptr) {
        unify(*result, b);
        continue;
      }
      WorkBody moved = b;
      folded.push_back(moved.links.front().mesh);
      moved.links.erase(moved.links.begin());
      for (auto& j : moved.joints) {
        if (j.parent == b.root) j.parent = result->root;
      }
      unify(*result, moved);
    }
    for (const auto& m : folded) append_mesh(result->links.front().mesh, m);
    return *result;
  }

  WorkBody switch_node(const Node& n) {
    if (n.inputs.empty()) fail(ErrorCode::kInvalidParameter, "switch without options");
    const double v = required(n, "selector");
    const double r = std::round(v);
    if (!std::isfinite(v) || std::abs(v - r) > 1e-9 || r < 0 || r >= static_cast<double>(n.inputs.size())) {
      fail(ErrorCode::kRange, "switch node " + std::to_string(n.id) + " selector " + std::to_string(v) +
                                  " is not an option index");
    }
    WorkBody chosen = input(n, static_cast<std::size_t>(r));
    if (plain_.at(n.id)) chosen.links.front().id = chosen.root = detail::link_key(n.id);
    return chosen;
  }

  JointSpec joint_spec(const Node& n, JointType type) const {
    JointSpec spec;
    spec.type = type;
    spec.axis = n.axis.normalized();
    spec.pivot = Vec3(scalar(n, "pivot_x", 0.0), scalar(n, "pivot_y", 0.0), scalar(n, "pivot_z", 0.0));
    spec.lower = required(n, "lower");
    spec.upper = required(n, "upper");
    spec.labels = n.labels;
    if (!(spec.lower <= spec.upper)) {
      fail(ErrorCode::kRange, "joint node " + std::to_string(n.id) + " has lower > upper");
    }
    const double fallback = std::clamp(0.0, spec.lower, spec.upper);
    spec.default_value = scalar(n, "default", fallback);
    if (!(spec.default_value >= spec.lower && spec.default_value <= spec.upper)) {
      fail(ErrorCode::kRange, "joint node " + std::to_string(n.id) + " default lies outside its range");
    }
    if (!spec.pivot.allFinite()) fail(ErrorCode::kInvalidParameter, "joint pivot is not finite");
    return spec;
  }

  WorkBody joint(const Node& n) {
    const WorkBody& parent = input(n, 0);
    const WorkBody& child = input(n, 1);
    for (const auto& l : child.links) {
      for (const auto& p : parent.links) {
        if (p.id == l.id) fail(ErrorCode::kStructural, "joint node " + std::to_string(n.id) + " is a self-loop");
      }
    }
    const JointType type = n.kind == NodeKind::kJointPrismatic ? JointType::kPrismatic
                           : n.kind == NodeKind::kJointRevolute ? JointType::kRevolute
                                                                : n.joint_type;
    EvaluatedJoint j;
    j.id = detail::joint_key(n.id);
    j.parent = parent.root;
    j.child = child.root;
    j.spec = joint_spec(n, type);
    j.source = n.id;

    WorkBody result = parent;
    if (!n.labels.parent.empty()) result.links.front().label = n.labels.parent;
    if (n.kind != NodeKind::kDuplicateJointsOnPoints) {
      WorkBody attached = child;
      if (!n.labels.child.empty()) attached.links.front().label = n.labels.child;
      attached.joints.push_back(j);
      unify(result, attached);
      return result;
    }

    std::vector<Vec3> points = n.points;
    if (points.empty()) {
      const int count = integer(n, "count", 0);
      const int count2 = integer(n, "count2", 1);
      if (count < 0 || count2 < 0) fail(ErrorCode::kInvalidParameter, "duplication count is negative");
      const Vec3 origin(scalar(n, "origin_x", 0), scalar(n, "origin_y", 0), scalar(n, "origin_z", 0));
      const Vec3 step(scalar(n, "step_x", 0), scalar(n, "step_y", 0), scalar(n, "step_z", 0));
      const Vec3 step2(scalar(n, "step2_x", 0), scalar(n, "step2_y", 0), scalar(n, "step2_z", 0));
      for (int i = 0; i < count; ++i) {
        for (int k = 0; k < count2; ++k) points.push_back(origin + i * step + k * step2);
      }
      if (points.empty()) return result;
    }
    BodyFragment fragment;
    fragment.links = child.links;
    if (!n.labels.child.empty()) fragment.links.front().label = n.labels.child;
    fragment.joints = child.joints;
    fragment.joints.push_back(j);
    const BodyFragment copies = expand_duplicates(fragment, points);
    WorkBody attached;
    attached.links = copies.links;
    attached.joints = copies.joints;
    unify(result, attached);
    return result;
  }

  WorkBody evaluate(const Node& n) {
    switch (n.kind) {
      case NodeKind::kPrimitive: return make_plain(detail::link_key(n.id), "", primitive(n), n.id);
      case NodeKind::kTransform: {
        WorkBody body = input(n, 0);
        const Eigen::Quaterniond q = Eigen::AngleAxisd(scalar(n, "yaw", 0), Vec3::UnitZ()) *
                                     Eigen::AngleAxisd(scalar(n, "pitch", 0), Vec3::UnitY()) *
                                     Eigen::AngleAxisd(scalar(n, "roll", 0), Vec3::UnitX());
        RigidTransform t;
        t.rotation = q.normalized();
        t.translation = Vec3(scalar(n, "tx", 0), scalar(n, "ty", 0), scalar(n, "tz", 0));
        transform_body(body, t);
        if (plain_.at(n.id)) {
          body.links.front().id = body.root = detail::link_key(n.id);
          body.links.front().source = n.id;
        }
        return body;
      }
      case NodeKind::kSemanticLabel:
      case NodeKind::kStoreAttribute: {
        WorkBody body = input(n, 0);
        const std::int32_t id = label_id(n.label);
        for (auto& l : body.links) {
          auto& labels = l.mesh.face_labels;
          if (labels.size() != l.mesh.triangle_count()) labels.assign(l.mesh.triangle_count(), -1);
          for (auto& f : labels) {
            if (n.kind == NodeKind::kSemanticLabel || f < 0) f = id;
          }
        }
        if (n.kind == NodeKind::kSemanticLabel && plain_.at(n.id)) body.links.front().label = n.label;
        return body;
      }
      case NodeKind::kMerge: return merge(n);
      case NodeKind::kSwitch: return switch_node(n);
      case NodeKind::kJointRevolute:
      case NodeKind::kJointPrismatic:
      case NodeKind::kDuplicateJointsOnPoints: return joint(n);
      case NodeKind::kScalarMath: break;
    }
    fail(ErrorCode::kPortType, "scalar node used as geometry");
  }

  EvaluatedBody assemble(const WorkBody& work, const std::optional<JointValues>& joint_values) const {
    std::map<std::string, std::size_t> link_index;
    for (std::size_t i = 0; i < work.links.size(); ++i) {
      if (!link_index.emplace(work.links[i].id, i).second) {
        fail(ErrorCode::kStructural, "duplicate link id " + work.links[i].id);
      }
    }
    std::map<std::string, std::vector<std::size_t>> parents_of;  // child -> joints
    std::map<std::string, std::vector<std::string>> children_of;
    for (std::size_t j = 0; j < work.joints.size(); ++j) {
      const auto& joint = work.joints[j];
      if (!link_index.count(joint.parent) || !link_index.count(joint.child)) {
        fail(ErrorCode::kStructural, "joint " + joint.id + " references a missing link");
      }
      auto& list = parents_of[joint.child];
      if (!list.empty() && work.joints[list.front()].parent != joint.parent) {
        fail(ErrorCode::kCycle, "link " + joint.child + " has two parent links");
      }
      if (list.empty()) children_of[joint.parent].push_back(joint.child);
      list.push_back(j);
    }
    if (parents_of.count(work.root)) fail(ErrorCode::kCycle, "root link " + work.root + " has a parent joint");
    for (auto& [child, list] : parents_of) {
      std::stable_sort(list.begin(), list.end(),
                       [&](std::size_t a, std::size_t b) { return work.joints[a].source < work.joints[b].source; });
    }

    EvaluatedBody body;
    body.root = work.root;
    body.label_table = label_table_;
    std::map<std::string, Vec3> origin;
    std::vector<std::string> stack = {work.root};
    std::set<std::string> visited;
    while (!stack.empty()) {
      const std::string id = stack.back();
      stack.pop_back();
      if (!visited.insert(id).second) fail(ErrorCode::kCycle, "kinematic cycle through link " + id);
      EvaluatedLink link = work.links[link_index.at(id)];
      Vec3 o = Vec3::Zero();
      if (id != work.root) {
        const auto& list = parents_of.at(id);
        const Vec3 parent_origin = origin.at(work.joints[list.front()].parent);
        o = work.joints[list.back()].spec.pivot;
        for (std::size_t j : list) {
          EvaluatedJoint joint = work.joints[j];
          joint.spec.pivot -= parent_origin;
          body.joints.push_back(std::move(joint));
        }
      }
      origin[id] = o;
      link.origin = o;
      link.mesh = apply_transform(link.mesh, RigidTransform::from_translation(-o));
      body.links.push_back(std::move(link));
      const auto it = children_of.find(id);
      if (it != children_of.end()) {
        for (auto c = it->second.rbegin(); c != it->second.rend(); ++c) stack.push_back(*c);
      }
    }
    if (visited.size() != work.links.size()) {
      fail(ErrorCode::kStructural, "some links are not connected to the root by joints");
    }

    JointValues values;
    if (joint_values) {
      for (const auto& [id, v] : *joint_values) {
        const auto it = std::find_if(body.joints.begin(), body.joints.end(),
                                     [&](const EvaluatedJoint& j) { return j.id == id; });
        if (it == body.joints.end()) fail(ErrorCode::kInvalidParameter, "unknown joint '" + id + "'");
        values[id] = v;
      }
    }
    const auto frames = body_forward_kinematics(body, values);
    for (auto& l : body.links) l.frame = frames.at(l.id);
    return body;
  }

  const NodeGraph& graph_;
  const ParamVector& params_;
  std::vector<std::string> label_table_;
  std::map<NodeId, bool> plain_;
  std::map<NodeId, WorkBody> bodies_;
};

}  // namespace

EvaluatedBody evaluate(const NodeGraph& graph, const ParamVector& params,
                       const std::optional<JointValues>& joint_values) {
  return Evaluator(graph, params).run(joint_values);
}

std::map<std::string, RigidTransform> body_forward_kinematics(const EvaluatedBody& body, const JointValues& values) {
  std::map<std::string, RigidTransform> frames;
  std::map<std::string, Vec3> origin;
  for (const auto& l : body.links) origin[l.id] = l.origin;
  std::map<std::string, std::vector<const EvaluatedJoint*>> parents_of;
  for (const auto& j : body.joints) parents_of[j.child].push_back(&j);

  // Links are stored parent-first, so one pass suffices.
  for (const auto& l : body.links) {
    if (l.id == body.root) {
      frames[l.id] = RigidTransform::identity();
      continue;
    }
    const auto it = parents_of.find(l.id);
    if (it == parents_of.end()) fail(ErrorCode::kStructural, "link " + l.id + " has no parent joint");
    const std::string& parent = it->second.front()->parent;
    const auto pf = frames.find(parent);
    if (pf == frames.end()) fail(ErrorCode::kStructural, "link " + l.id + " precedes its parent");
    RigidTransform pose = pf->second;
    for (const EvaluatedJoint* j : it->second) {
      const auto v = values.find(j->id);
      const double q = v == values.end() ? j->spec.default_value : v->second;
      check_joint_value(*j, q);
      pose = pose * j->spec.motion(q, j->spec.pivot);
    }
    frames[l.id] = pose * RigidTransform::from_translation(l.origin - origin.at(parent));
  }
  return frames;
}

BodyFragment expand_duplicates(const BodyFragment& fragment, std::span<const Vec3> points) {
  if (points.empty()) fail(ErrorCode::kInvalidParameter, "duplication needs at least one point");
  if (fragment.joints.empty()) fail(ErrorCode::kInvalidParameter, "duplicated body has no joint");
  std::set<std::string> own;
  for (const auto& l : fragment.links) own.insert(l.id);
  BodyFragment out;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const std::string suffix = "#" + std::to_string(i);
    const std::string label_suffix = "_" + std::to_string(i);
    const auto shift = RigidTransform::from_translation(points[i]);
    for (const auto& l : fragment.links) {
      EvaluatedLink copy = l;
      copy.id += suffix;
      if (!copy.label.empty()) copy.label += label_suffix;
      copy.mesh = apply_transform(l.mesh, shift);
      out.links.push_back(std::move(copy));
    }
    for (const auto& j : fragment.joints) {
      EvaluatedJoint copy = j;
      copy.id += suffix;
      if (own.count(copy.parent)) copy.parent += suffix;
      if (own.count(copy.child)) copy.child += suffix;
      if (!copy.spec.labels.joint.empty()) copy.spec.labels.joint += label_suffix;
      copy.spec.pivot += points[i];
      if (copy.copy < 0) copy.copy = static_cast<int>(i);
      out.joints.push_back(std::move(copy));
    }
  }
  return out;
}

}  // namespace artigen
