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
namespace {

std::vector<std::string> required_scalars(const Node& n) {
  switch (n.kind) {
    case NodeKind::kPrimitive: {
      auto ports = scalar_ports(n);
      ports.erase(std::remove(ports.begin(), ports.end(), "bevel"), ports.end());
      return ports;
    }
    case NodeKind::kScalarMath: return {"a", "b"};
    case NodeKind::kSwitch: return {"selector"};
    case NodeKind::kJointRevolute:
    case NodeKind::kJointPrismatic:
    case NodeKind::kDuplicateJointsOnPoints: return {"lower", "upper"};
    default: return {};
  }
}

bool has_cycle(const NodeGraph& graph, NodeId& witness) {
  std::map<NodeId, int> state;
  for (const auto& start : graph.nodes()) {
    if (state[start.id] != 0) continue;
    std::vector<std::pair<NodeId, std::size_t>> stack = {{start.id, 0}};
    state[start.id] = 1;
    while (!stack.empty()) {
      auto& [id, next] = stack.back();
      const auto ups = upstream(graph.node(id));
      if (next < ups.size()) {
        const NodeId up = ups[next++];
        if (!graph.has_node(up)) continue;
        if (state[up] == 1) {
          witness = up;
          return true;
        }
        if (state[up] == 0) {
          state[up] = 1;
          stack.emplace_back(up, 0);
        }
        continue;
      }
      state[id] = 2;
      stack.pop_back();
    }
  }
  return false;
}

}  // namespace

std::vector<Diagnostic> validate(const NodeGraph& graph) {
  std::vector<Diagnostic> out;
  auto report = [&out](std::string code, NodeId node, std::string message) {
    out.push_back({std::move(code), node, std::move(message)});
  };

  if (!graph.has_node(graph.output())) {
    report("output", -1, "graph output is not set to an existing node");
  } else if (output_type(graph.node(graph.output()).kind) != PortType::kGeometry) {
    report("output", graph.output(), "graph output must produce geometry");
  }

  for (const Node& n : graph.nodes()) {
    const std::string where = std::string(to_string(n.kind)) + " node " + std::to_string(n.id);
    const int arity = geometry_arity(n.kind);
    if (arity >= 0 && static_cast<int>(n.inputs.size()) != arity) {
      report("unwired-port", n.id, where + " needs " + std::to_string(arity) + " geometry inputs");
    }
    if (arity == -1 && n.inputs.empty()) report("unwired-port", n.id, where + " has no geometry inputs");
    for (NodeId in : n.inputs) {
      if (in < 0) {
        report("unwired-port", n.id, where + " has an unwired geometry input");
      } else if (!graph.has_node(in)) {
        report("dangling-reference", n.id, where + " reads missing node " + std::to_string(in));
      } else if (output_type(graph.node(in).kind) != PortType::kGeometry) {
        report("port-type", n.id, where + " reads scalar node " + std::to_string(in) + " as geometry");
      }
    }
    const auto allowed = scalar_ports(n);
    for (const auto& [port, s] : n.scalars) {
      if (std::find(allowed.begin(), allowed.end(), port) == allowed.end()) {
        report("unknown-port", n.id, where + " has no scalar port '" + port + "'");
      }
      if (s.source == Scalar::Source::kParameter && !graph.parameters().contains(s.parameter)) {
        report("unknown-parameter", n.id, where + " reads undeclared parameter '" + s.parameter + "'");
      }
      if (s.source == Scalar::Source::kNode) {
        if (!graph.has_node(s.node)) {
          report("dangling-reference", n.id, where + " reads missing node " + std::to_string(s.node));
        } else if (output_type(graph.node(s.node).kind) != PortType::kScalar) {
          report("port-type", n.id, where + " reads geometry node " + std::to_string(s.node) + " as a scalar");
        }
      }
    }
    for (const auto& port : required_scalars(n)) {
      if (!n.scalars.count(port)) report("missing-scalar", n.id, where + " is missing scalar '" + port + "'");
    }
    if (n.kind == NodeKind::kDuplicateJointsOnPoints && n.points.empty() && !n.scalars.count("count")) {
      report("duplicate-points", n.id, where + " has no points");
    }
  }

  NodeId witness = -1;
  if (has_cycle(graph, witness)) {
    report("graph-cycle", witness, "graph contains a cycle through node " + std::to_string(witness));
  }
  if (!out.empty()) return out;

  // Value-range checks over the declared parameter domains.
  for (const Node& n : graph.nodes()) {
    if (n.kind == NodeKind::kSwitch) {
      const auto [lo, hi] = scalar_interval(graph, n.scalars.at("selector"));
      const double last = static_cast<double>(n.inputs.size()) - 1.0;
      if (!(lo >= 0.0 && hi <= last)) {
        report("switch-selector", n.id,
               "switch node " + std::to_string(n.id) + " selector may leave [0, " + std::to_string(n.inputs.size() - 1) + "]");
      }
    }
    if (is_joint_kind(n.kind)) {
      const auto lower = scalar_interval(graph, n.scalars.at("lower"));
      const auto upper = scalar_interval(graph, n.scalars.at("upper"));
      if (lower.first > upper.second) {
        report("joint-range", n.id, "joint node " + std::to_string(n.id) + " always has lower > upper");
      }
      if (n.scalars.count("default")) {
        const auto def = scalar_interval(graph, n.scalars.at("default"));
        if (def.first > upper.second || def.second < lower.first) {
          report("joint-range", n.id, "joint node " + std::to_string(n.id) + " default lies outside its range");
        }
      }
    }
    if (n.kind == NodeKind::kDuplicateJointsOnPoints) {
      for (const char* port : {"count", "count2"}) {
        if (!n.scalars.count(port)) continue;
        if (scalar_interval(graph, n.scalars.at(port)).first < 0.0) {
          report("duplicate-points", n.id, std::string("duplication ") + port + " may be negative");
        }
      }
    }
  }

  const GraphStructure structure = analyze_structure(graph);
  out.insert(out.end(), structure.diagnostics.begin(), structure.diagnostics.end());
  return out;
}

std::vector<std::pair<NodeId, NodeId>> composite_joints(const NodeGraph& graph) {
  const GraphStructure structure = analyze_structure(graph);
  std::vector<std::pair<NodeId, NodeId>> out;
  for (std::size_t i = 0; i < structure.joints.size(); ++i) {
    for (std::size_t j = i + 1; j < structure.joints.size(); ++j) {
      const auto& a = structure.joints[i];
      const auto& b = structure.joints[j];
      if (a.parent == b.parent && a.child == b.child) {
        out.emplace_back(std::min(a.source, b.source), std::max(a.source, b.source));
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

NodeGraph inject_label_attributes(const NodeGraph& graph) {
  NodeGraph out = graph;
  if (!graph.has_node(graph.output())) return out;
  const auto order = detail::topological_order(graph, graph.output());
  const auto plain = detail::static_plain(graph, order);

  struct Port {
    NodeId consumer;
    std::size_t slot;  // geometry input index; SIZE_MAX for the graph output
    std::string label;
  };
  std::map<NodeId, std::vector<Port>> wanted;  // upstream -> boundary ports it feeds
  for (NodeId id : order) {
    const Node& n = graph.node(id);
    if (output_type(n.kind) != PortType::kGeometry) continue;
    const bool boundary = is_joint_kind(n.kind) || ((n.kind == NodeKind::kMerge || n.kind == NodeKind::kSwitch) &&
                                                    !plain.at(id));
    if (!boundary) continue;
    for (std::size_t i = 0; i < n.inputs.size(); ++i) {
      const NodeId up = n.inputs[i];
      if (!plain.count(up) || !plain.at(up)) continue;
      if (graph.node(up).kind == NodeKind::kStoreAttribute) continue;
      std::string label;
      if (is_joint_kind(n.kind)) label = i == 0 ? n.labels.parent : n.labels.child;
      wanted[up].push_back({id, i, label});
    }
  }
  if (plain.at(graph.output()) && graph.node(graph.output()).kind != NodeKind::kStoreAttribute) {
    wanted[graph.output()].push_back({-1, SIZE_MAX, ""});
  }

  for (const auto& [up, ports] : wanted) {
    std::string label;
    for (const auto& p : ports) {
      if (label.empty()) label = p.label;
    }
    if (label.empty() && graph.node(up).kind == NodeKind::kSemanticLabel) label = graph.node(up).label;
    if (label.empty()) label = "part_" + std::to_string(up);
    Node store;
    store.kind = NodeKind::kStoreAttribute;
    store.label = label;
    store.inputs = {up};
    const NodeId sa = out.add_node(store);
    for (const auto& p : ports) {
      if (p.slot == SIZE_MAX) {
        out.set_output(sa);
      } else {
        out.mutable_node(p.consumer).inputs[p.slot] = sa;
      }
    }
  }
  return out;
}

}  // namespace artigen
