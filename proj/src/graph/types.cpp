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
#include <functional>
#include <set>

#include "artigen/error.hpp"
#include "artigen/graph.hpp"

namespace artigen {

std::string_view to_string(NodeKind kind) {
  switch (kind) {
    case NodeKind::kPrimitive: return "Primitive";
    case NodeKind::kTransform: return "Transform";
    case NodeKind::kMerge: return "Merge";
    case NodeKind::kScalarMath: return "ScalarMath";
    case NodeKind::kSwitch: return "Switch";
    case NodeKind::kJointRevolute: return "JointRevolute";
    case NodeKind::kJointPrismatic: return "JointPrismatic";
    case NodeKind::kDuplicateJointsOnPoints: return "DuplicateJointsOnPoints";
    case NodeKind::kSemanticLabel: return "SemanticLabel";
    case NodeKind::kStoreAttribute: return "StoreAttribute";
  }
  return "?";
}

std::string_view to_string(PrimitiveShape shape) {
  switch (shape) {
    case PrimitiveShape::kBox: return "box";
    case PrimitiveShape::kCylinder: return "cylinder";
    case PrimitiveShape::kSphere: return "sphere";
    case PrimitiveShape::kRoundedBox: return "rounded_box";
    case PrimitiveShape::kNgonPrism: return "ngon_prism";
  }
  return "?";
}

std::string_view to_string(MathOp op) {
  switch (op) {
    case MathOp::kAdd: return "add";
    case MathOp::kSub: return "sub";
    case MathOp::kMul: return "mul";
    case MathOp::kDiv: return "div";
    case MathOp::kMin: return "min";
    case MathOp::kMax: return "max";
  }
  return "?";
}

std::string_view to_string(JointType type) {
  return type == JointType::kRevolute ? "revolute" : "prismatic";
}

std::optional<NodeKind> node_kind_from_string(std::string_view text) {
  for (int k = 0; k <= static_cast<int>(NodeKind::kStoreAttribute); ++k) {
    if (to_string(static_cast<NodeKind>(k)) == text) return static_cast<NodeKind>(k);
  }
  return std::nullopt;
}

std::optional<PrimitiveShape> primitive_shape_from_string(std::string_view text) {
  for (int k = 0; k <= static_cast<int>(PrimitiveShape::kNgonPrism); ++k) {
    if (to_string(static_cast<PrimitiveShape>(k)) == text) return static_cast<PrimitiveShape>(k);
  }
  return std::nullopt;
}

std::optional<MathOp> math_op_from_string(std::string_view text) {
  for (int k = 0; k <= static_cast<int>(MathOp::kMax); ++k) {
    if (to_string(static_cast<MathOp>(k)) == text) return static_cast<MathOp>(k);
  }
  return std::nullopt;
}

Scalar Scalar::param(std::string name) {
  Scalar s;
  s.source = Source::kParameter;
  s.parameter = std::move(name);
  return s;
}

Scalar Scalar::wire(NodeId node) {
  Scalar s;
  s.source = Source::kNode;
  s.node = node;
  return s;
}

bool Scalar::operator==(const Scalar& other) const {
  if (source != other.source) return false;
  switch (source) {
    case Source::kConstant: return value == other.value;
    case Source::kParameter: return parameter == other.parameter;
    case Source::kNode: return node == other.node;
  }
  return false;
}

// ---------------------------------------------------------------------------

std::pair<double, double> ParameterEntry::interval() const {
  if (const auto* c = std::get_if<ContinuousRange>(&domain)) return {c->lo, c->hi};
  if (const auto* d = std::get_if<DiscreteChoice>(&domain)) {
    return {0.0, static_cast<double>(d->labels.size()) - 1.0};
  }
  const auto& n = std::get<CountRange>(domain);
  return {static_cast<double>(n.min), static_cast<double>(n.max)};
}

std::uint64_t ParameterEntry::cardinality() const {
  if (is_continuous()) return 0;
  if (const auto* d = std::get_if<DiscreteChoice>(&domain)) return d->labels.size();
  const auto& n = std::get<CountRange>(domain);
  return static_cast<std::uint64_t>(n.max - n.min + 1);
}

void ParameterSpace::add(ParameterEntry entry) {
  if (entry.name.empty()) fail(ErrorCode::kInvalidParameter, "parameter name is empty");
  if (contains(entry.name)) fail(ErrorCode::kInvalidParameter, "duplicate parameter '" + entry.name + "'");
  if (const auto* c = std::get_if<ContinuousRange>(&entry.domain)) {
    if (!(c->lo < c->hi) || !std::isfinite(c->lo) || !std::isfinite(c->hi)) {
      fail(ErrorCode::kInvalidParameter, "parameter '" + entry.name + "' needs lo < hi");
    }
  } else if (const auto* d = std::get_if<DiscreteChoice>(&entry.domain)) {
    if (d->labels.size() < 2) {
      fail(ErrorCode::kInvalidParameter, "discrete parameter '" + entry.name + "' needs two or more labels");
    }
  } else {
    const auto& n = std::get<CountRange>(entry.domain);
    if (n.min > n.max) fail(ErrorCode::kInvalidParameter, "count parameter '" + entry.name + "' needs min <= max");
  }
  entries_.push_back(std::move(entry));
}

void ParameterSpace::add_continuous(std::string name, double lo, double hi, std::string units) {
  add({std::move(name), ContinuousRange{lo, hi, std::move(units)}});
}

void ParameterSpace::add_discrete(std::string name, std::vector<std::string> labels) {
  add({std::move(name), DiscreteChoice{std::move(labels)}});
}

void ParameterSpace::add_count(std::string name, int min, int max) {
  add({std::move(name), CountRange{min, max}});
}

const ParameterEntry* ParameterSpace::find(std::string_view name) const {
  for (const auto& e : entries_) {
    if (e.name == name) return &e;
  }
  return nullptr;
}

ParameterEntry& ParameterSpace::at(std::string_view name) {
  for (auto& e : entries_) {
    if (e.name == name) return e;
  }
  fail(ErrorCode::kMissingParameter, "unknown parameter '" + std::string(name) + "'");
}

std::size_t ParameterSpace::continuous_count() const {
  return static_cast<std::size_t>(
      std::count_if(entries_.begin(), entries_.end(), [](const ParameterEntry& e) { return e.is_continuous(); }));
}

namespace {

bool same_domain(const ParameterDomain& a, const ParameterDomain& b) {
  if (a.index() != b.index()) return false;
  if (const auto* c = std::get_if<ContinuousRange>(&a)) {
    const auto& d = std::get<ContinuousRange>(b);
    return c->lo == d.lo && c->hi == d.hi && c->units == d.units;
  }
  if (const auto* c = std::get_if<DiscreteChoice>(&a)) return c->labels == std::get<DiscreteChoice>(b).labels;
  const auto& c = std::get<CountRange>(a);
  const auto& d = std::get<CountRange>(b);
  return c.min == d.min && c.max == d.max;
}

}  // namespace

bool ParameterSpace::operator==(const ParameterSpace& other) const {
  if (entries_.size() != other.entries_.size()) return false;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i].name != other.entries_[i].name) return false;
    if (!same_domain(entries_[i].domain, other.entries_[i].domain)) return false;
  }
  return true;
}

double ParamVector::at(const std::string& name) const {
  const auto it = values.find(name);
  if (it == values.end()) fail(ErrorCode::kMissingParameter, "missing parameter '" + name + "'");
  return it->second;
}

void check_params(const ParameterSpace& space, const ParamVector& params) {
  for (const auto& entry : space.entries()) {
    const double v = params.at(entry.name);
    const auto [lo, hi] = entry.interval();
    if (!std::isfinite(v) || v < lo || v > hi) {
      fail(ErrorCode::kRange, "parameter '" + entry.name + "' = " + std::to_string(v) + " outside [" +
                                  std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
    if (!entry.is_continuous() && v != std::floor(v)) {
      fail(ErrorCode::kRange, "parameter '" + entry.name + "' must be an integer");
    }
  }
}

// ---------------------------------------------------------------------------

bool Node::operator==(const Node& o) const {
  return id == o.id && kind == o.kind && shape == o.shape && segments == o.segments && material == o.material &&
         op == o.op && joint_type == o.joint_type && axis == o.axis && labels == o.labels && points == o.points &&
         label == o.label && scalars == o.scalars && inputs == o.inputs;
}

namespace {

const std::vector<std::string> kJointPorts = {"pivot_x", "pivot_y", "pivot_z", "lower", "upper", "default"};
const std::vector<std::string> kPatternPorts = {"origin_x", "origin_y", "origin_z", "step_x",  "step_y",
                                                "step_z",   "step2_x",  "step2_y",  "step2_z", "count", "count2"};

}  // namespace

std::vector<std::string> scalar_ports(const Node& node) {
  switch (node.kind) {
    case NodeKind::kPrimitive:
      switch (node.shape) {
        case PrimitiveShape::kBox: return {"size_x", "size_y", "size_z"};
        case PrimitiveShape::kRoundedBox: return {"size_x", "size_y", "size_z", "bevel"};
        case PrimitiveShape::kCylinder: return {"radius", "height"};
        case PrimitiveShape::kSphere: return {"radius"};
        case PrimitiveShape::kNgonPrism: return {"radius", "height", "sides"};
      }
      return {};
    case NodeKind::kTransform: return {"tx", "ty", "tz", "roll", "pitch", "yaw"};
    case NodeKind::kScalarMath: return {"a", "b"};
    case NodeKind::kSwitch: return {"selector"};
    case NodeKind::kJointRevolute:
    case NodeKind::kJointPrismatic: return kJointPorts;
    case NodeKind::kDuplicateJointsOnPoints: {
      std::vector<std::string> ports = kJointPorts;
      ports.insert(ports.end(), kPatternPorts.begin(), kPatternPorts.end());
      return ports;
    }
    case NodeKind::kMerge:
    case NodeKind::kSemanticLabel:
    case NodeKind::kStoreAttribute: return {};
  }
  return {};
}

int geometry_arity(NodeKind kind) {
  switch (kind) {
    case NodeKind::kPrimitive:
    case NodeKind::kScalarMath: return 0;
    case NodeKind::kTransform:
    case NodeKind::kSemanticLabel:
    case NodeKind::kStoreAttribute: return 1;
    case NodeKind::kJointRevolute:
    case NodeKind::kJointPrismatic:
    case NodeKind::kDuplicateJointsOnPoints: return 2;
    case NodeKind::kMerge:
    case NodeKind::kSwitch: return -1;
  }
  return 0;
}

PortType output_type(NodeKind kind) {
  return kind == NodeKind::kScalarMath ? PortType::kScalar : PortType::kGeometry;
}

bool is_joint_kind(NodeKind kind) {
  return kind == NodeKind::kJointRevolute || kind == NodeKind::kJointPrismatic ||
         kind == NodeKind::kDuplicateJointsOnPoints;
}

std::vector<NodeId> upstream(const Node& node) {
  std::vector<NodeId> out;
  for (NodeId id : node.inputs) out.push_back(id);
  for (const auto& [port, s] : node.scalars) {
    if (s.source == Scalar::Source::kNode) out.push_back(s.node);
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

void check_settings(Node& node) {
  const auto allowed = scalar_ports(node);
  for (const auto& [port, s] : node.scalars) {
    if (std::find(allowed.begin(), allowed.end(), port) == allowed.end()) {
      fail(ErrorCode::kInvalidParameter,
           std::string(to_string(node.kind)) + " has no scalar port '" + port + "'");
    }
    if (s.is_constant() && !std::isfinite(s.value)) {
      fail(ErrorCode::kInvalidParameter, "scalar port '" + port + "' is not finite");
    }
    if (s.source == Scalar::Source::kParameter && s.parameter.empty()) {
      fail(ErrorCode::kInvalidParameter, "scalar port '" + port + "' names an empty parameter");
    }
  }
  switch (node.kind) {
    case NodeKind::kPrimitive: {
      if ((node.shape == PrimitiveShape::kCylinder || node.shape == PrimitiveShape::kSphere) && node.segments < 3) {
        fail(ErrorCode::kInvalidParameter, "segments must be at least 3");
      }
      for (const auto& port : allowed) {
        const auto it = node.scalars.find(port);
        if (it == node.scalars.end() && port != "bevel") {
          fail(ErrorCode::kInvalidParameter, "primitive is missing '" + port + "'");
        }
        if (it != node.scalars.end() && it->second.is_constant()) {
          const double v = it->second.value;
          if (port == "bevel" ? v < 0.0 : v <= 0.0) {
            fail(ErrorCode::kInvalidParameter, "primitive '" + port + "' must be positive");
          }
        }
      }
      break;
    }
    case NodeKind::kJointRevolute:
    case NodeKind::kJointPrismatic:
    case NodeKind::kDuplicateJointsOnPoints: {
      const double norm = node.axis.norm();
      if (!(norm > 0.0) || !node.axis.allFinite()) fail(ErrorCode::kInvalidParameter, "joint axis must be non-zero");
      node.axis /= norm;
      if (node.kind == NodeKind::kJointRevolute) node.joint_type = JointType::kRevolute;
      if (node.kind == NodeKind::kJointPrismatic) node.joint_type = JointType::kPrismatic;
      const auto lower = node.scalars.find("lower");
      const auto upper = node.scalars.find("upper");
      if (lower == node.scalars.end() || upper == node.scalars.end()) {
        fail(ErrorCode::kInvalidParameter, "joint needs 'lower' and 'upper'");
      }
      if (lower->second.is_constant() && upper->second.is_constant() && lower->second.value > upper->second.value) {
        fail(ErrorCode::kInvalidParameter, "joint lower exceeds upper");
      }
      if (node.kind == NodeKind::kDuplicateJointsOnPoints) {
        const bool pattern = node.scalars.count("count") != 0;
        if (!pattern && node.points.empty()) {
          fail(ErrorCode::kInvalidParameter, "duplication needs a non-empty point list or a count");
        }
        for (const auto& p : node.points) {
          if (!p.allFinite()) fail(ErrorCode::kInvalidParameter, "duplication point is not finite");
        }
      }
      break;
    }
    case NodeKind::kSemanticLabel:
    case NodeKind::kStoreAttribute:
      if (node.label.empty()) fail(ErrorCode::kInvalidParameter, "label must be non-empty");
      break;
    default: break;
  }
}

}  // namespace

bool NodeGraph::has_node(NodeId id) const { return index_.count(id) != 0; }

const Node& NodeGraph::node(NodeId id) const {
  const auto it = index_.find(id);
  if (it == index_.end()) fail(ErrorCode::kInvalidParameter, "no node with id " + std::to_string(id));
  return nodes_[it->second];
}

Node& NodeGraph::mutable_node(NodeId id) {
  const auto it = index_.find(id);
  if (it == index_.end()) fail(ErrorCode::kInvalidParameter, "no node with id " + std::to_string(id));
  return nodes_[it->second];
}

void NodeGraph::insert_raw(Node node) {
  if (has_node(node.id)) fail(ErrorCode::kInvalidParameter, "duplicate node id " + std::to_string(node.id));
  index_[node.id] = nodes_.size();
  next_id_ = std::max(next_id_, node.id + 1);
  nodes_.push_back(std::move(node));
}

NodeId NodeGraph::add_node(Node prototype) {
  check_settings(prototype);
  prototype.id = next_id_;
  const int arity = geometry_arity(prototype.kind);
  if (arity >= 0 && static_cast<int>(prototype.inputs.size()) > arity) {
    fail(ErrorCode::kPortType, std::string(to_string(prototype.kind)) + " takes " + std::to_string(arity) +
                                   " geometry inputs");
  }
  for (NodeId in : prototype.inputs) {
    if (in < 0) continue;
    if (!has_node(in)) fail(ErrorCode::kInvalidParameter, "input node " + std::to_string(in) + " does not exist");
    if (output_type(node(in).kind) != PortType::kGeometry) {
      fail(ErrorCode::kPortType, "scalar output wired into a geometry port");
    }
  }
  for (const auto& [port, s] : prototype.scalars) {
    if (s.source != Scalar::Source::kNode) continue;
    if (!has_node(s.node)) {
      fail(ErrorCode::kInvalidParameter, "scalar source " + std::to_string(s.node) + " does not exist");
    }
    if (output_type(node(s.node).kind) != PortType::kScalar) {
      fail(ErrorCode::kPortType, "geometry output wired into scalar port '" + port + "'");
    }
  }
  insert_raw(std::move(prototype));
  return nodes_.back().id;
}

bool NodeGraph::reaches(NodeId from, NodeId target) const {
  std::set<NodeId> seen;
  std::vector<NodeId> stack = {from};
  while (!stack.empty()) {
    const NodeId id = stack.back();
    stack.pop_back();
    if (id == target) return true;
    if (!seen.insert(id).second || !has_node(id)) continue;
    for (NodeId up : upstream(node(id))) stack.push_back(up);
  }
  return false;
}

void NodeGraph::connect(NodeId from, const PortRef& to) {
  if (!has_node(from) || !has_node(to.node)) fail(ErrorCode::kInvalidParameter, "connect: unknown node");
  Node& target = mutable_node(to.node);
  const PortType produced = output_type(node(from).kind);

  auto geometry_slot = [&](std::size_t index) {
    if (produced != PortType::kGeometry) fail(ErrorCode::kPortType, "scalar output wired into geometry port '" + to.port + "'");
    if (from == to.node || reaches(from, to.node)) fail(ErrorCode::kGraphCycle, "connect would create a cycle");
    if (target.inputs.size() <= index) target.inputs.resize(index + 1, -1);
    target.inputs[index] = from;
  };

  const int arity = geometry_arity(target.kind);
  if (to.port == "geometry" && arity == 1) return geometry_slot(0);
  if (to.port == "parent" && arity == 2) return geometry_slot(0);
  if (to.port == "child" && arity == 2) return geometry_slot(1);
  for (const std::string prefix : {"input:", "option:"}) {
    if (arity == -1 && to.port.rfind(prefix, 0) == 0) {
      const std::string digits = to.port.substr(prefix.size());
      if (digits.empty() || !std::all_of(digits.begin(), digits.end(), ::isdigit)) break;
      return geometry_slot(static_cast<std::size_t>(std::stoul(digits)));
    }
  }
  const auto allowed = scalar_ports(target);
  if (std::find(allowed.begin(), allowed.end(), to.port) != allowed.end()) {
    if (produced != PortType::kScalar) fail(ErrorCode::kPortType, "geometry output wired into scalar port '" + to.port + "'");
    if (from == to.node || reaches(from, to.node)) fail(ErrorCode::kGraphCycle, "connect would create a cycle");
    target.scalars[to.port] = Scalar::wire(from);
    return;
  }
  fail(ErrorCode::kPortType, std::string(to_string(target.kind)) + " has no port '" + to.port + "'");
}

bool NodeGraph::operator==(const NodeGraph& other) const {
  return name_ == other.name_ && nodes_ == other.nodes_ && output_ == other.output_ &&
         parameters_ == other.parameters_;
}

}  // namespace artigen
