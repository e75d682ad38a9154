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
#include <functional>
#include <set>

#include "artigen/error.hpp"
#include "artigen/graph.hpp"
#include "common/format.hpp"
#include "graph/internal.hpp"

namespace artigen {

namespace detail {

std::vector<NodeId> topological_order(const NodeGraph& graph, NodeId root) {
  std::vector<NodeId> order;
  std::map<NodeId, int> state;  // 1 = on stack, 2 = done
  // Iterative DFS so deep scalar chains cannot overflow the stack.
  std::vector<std::pair<NodeId, std::size_t>> stack;
  if (!graph.has_node(root)) fail(ErrorCode::kInvalidParameter, "node " + std::to_string(root) + " does not exist");
  stack.emplace_back(root, 0);
  state[root] = 1;
  while (!stack.empty()) {
    auto& [id, next] = stack.back();
    const std::vector<NodeId> ups = upstream(graph.node(id));
    if (next < ups.size()) {
      const NodeId up = ups[next++];
      if (up < 0) continue;
      if (!graph.has_node(up)) fail(ErrorCode::kInvalidParameter, "wire to missing node " + std::to_string(up));
      const int s = state[up];
      if (s == 1) fail(ErrorCode::kGraphCycle, "graph contains a cycle through node " + std::to_string(up));
      if (s == 0) {
        state[up] = 1;
        stack.emplace_back(up, 0);
      }
      continue;
    }
    state[id] = 2;
    order.push_back(id);
    stack.pop_back();
  }
  return order;
}

std::map<NodeId, bool> static_plain(const NodeGraph& graph, const std::vector<NodeId>& order) {
  std::map<NodeId, bool> plain;
  for (NodeId id : order) {
    const Node& n = graph.node(id);
    if (output_type(n.kind) != PortType::kGeometry) continue;
    bool p = !is_joint_kind(n.kind);
    for (NodeId in : n.inputs) {
      const auto it = plain.find(in);
      if (it != plain.end()) p = p && it->second;
    }
    plain[id] = p;
  }
  return plain;
}

}  // namespace detail

// ---------------------------------------------------------------------------

namespace {

bool contradicts(const Conjunction& a, const Conjunction& b) {
  for (const auto& x : a) {
    for (const auto& y : b) {
      if (x.first == y.first && x.second != y.second) return true;
    }
  }
  return false;
}

void normalize_terms(std::vector<Conjunction>& terms) {
  for (auto& t : terms) {
    std::sort(t.begin(), t.end());
    t.erase(std::unique(t.begin(), t.end()), t.end());
  }
  std::sort(terms.begin(), terms.end());
  terms.erase(std::unique(terms.begin(), terms.end()), terms.end());
  // Absorption: a term implied by a shorter subset term is redundant.
  std::vector<Conjunction> kept;
  for (const auto& t : terms) {
    bool absorbed = false;
    for (const auto& other : terms) {
      if (&other == &t || other.size() >= t.size()) continue;
      if (std::includes(t.begin(), t.end(), other.begin(), other.end())) {
        absorbed = true;
        break;
      }
    }
    if (!absorbed) kept.push_back(t);
  }
  terms = std::move(kept);
}

// Merges terms that differ only in the option of one switch when every
// option is present: (s=0 & X) | (s=1 & X) | ... -> X.
void merge_complete_switches(Condition& c, const std::map<NodeId, int>& option_counts) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& [sw, count] : option_counts) {
      std::map<Conjunction, std::set<int>> rests;
      for (const auto& t : c.terms) {
        for (const auto& atom : t) {
          if (atom.first != sw) continue;
          Conjunction rest;
          for (const auto& a : t) {
            if (a != atom) rest.push_back(a);
          }
          rests[rest].insert(atom.second);
        }
      }
      for (const auto& [rest, options] : rests) {
        if (static_cast<int>(options.size()) != count) continue;
        std::vector<Conjunction> next;
        for (const auto& t : c.terms) {
          bool covered = false;
          for (const auto& atom : t) {
            if (atom.first != sw) continue;
            Conjunction r;
            for (const auto& a : t) {
              if (a != atom) r.push_back(a);
            }
            if (r == rest) covered = true;
          }
          if (!covered) next.push_back(t);
        }
        next.push_back(rest);
        c.terms = std::move(next);
        normalize_terms(c.terms);
        changed = true;
        break;
      }
      if (changed) break;
    }
  }
}

}  // namespace

bool Condition::is_always() const {
  return std::any_of(terms.begin(), terms.end(), [](const Conjunction& t) { return t.empty(); });
}

Condition Condition::conjoin(const SwitchAtom& atom) const {
  Condition out;
  for (auto t : terms) {
    bool conflict = false;
    for (const auto& a : t) conflict = conflict || (a.first == atom.first && a.second != atom.second);
    if (conflict) continue;
    t.push_back(atom);
    out.terms.push_back(std::move(t));
  }
  normalize_terms(out.terms);
  return out;
}

Condition Condition::disjoin(const Condition& other) const {
  Condition out = *this;
  out.terms.insert(out.terms.end(), other.terms.begin(), other.terms.end());
  normalize_terms(out.terms);
  return out;
}

bool Condition::exclusive_with(const Condition& other) const {
  for (const auto& a : terms) {
    for (const auto& b : other.terms) {
      if (!contradicts(a, b)) return false;
    }
  }
  return true;
}

bool Condition::holds(const std::map<NodeId, int>& selection) const {
  for (const auto& t : terms) {
    bool ok = true;
    for (const auto& [sw, option] : t) {
      const auto it = selection.find(sw);
      if (it == selection.end() || it->second != option) {
        ok = false;
        break;
      }
    }
    if (ok) return true;
  }
  return false;
}

std::string Condition::to_string() const {
  if (is_never()) return "never";
  if (is_always()) return "always";
  std::string out;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (i) out += " | ";
    for (std::size_t j = 0; j < terms[i].size(); ++j) {
      if (j) out += " & ";
      out += "s" + std::to_string(terms[i][j].first) + "=" + std::to_string(terms[i][j].second);
    }
  }
  return out;
}

std::string template_key(std::string_view key) {
  return std::string(key.substr(0, key.find('#')));
}

// ---------------------------------------------------------------------------

namespace {

struct SymBody {
  std::vector<StructuralLink> links;  // root first
  std::vector<StructuralJoint> joints;
  std::string root;

  StructuralLink* find(const std::string& key) {
    for (auto& l : links) {
      if (l.key == key) return &l;
    }
    return nullptr;
  }
  std::set<std::string> keys() const {
    std::set<std::string> out;
    for (const auto& l : links) out.insert(l.key);
    return out;
  }
};

class Analyzer {
 public:
  explicit Analyzer(const NodeGraph& graph) : graph_(graph) {}

  GraphStructure run() {
    GraphStructure out;
    if (!graph_.has_node(graph_.output())) fail(ErrorCode::kInvalidParameter, "graph has no output node");
    const auto order = detail::topological_order(graph_, graph_.output());
    plain_ = detail::static_plain(graph_, order);
    for (NodeId id : order) {
      const Node& n = graph_.node(id);
      if (output_type(n.kind) == PortType::kGeometry) bodies_[id] = evaluate(n);
    }
    SymBody& body = bodies_.at(graph_.output());
    std::map<NodeId, int> option_counts;
    for (const auto& n : graph_.nodes()) {
      if (n.kind == NodeKind::kSwitch) option_counts[n.id] = static_cast<int>(n.inputs.size());
    }
    for (auto& l : body.links) merge_complete_switches(l.condition, option_counts);
    for (auto& j : body.joints) merge_complete_switches(j.condition, option_counts);
    out.links = body.links;
    out.joints = body.joints;
    out.root = body.root;
    out.groups = groups_;
    out.diagnostics = diagnostics_;
    return out;
  }

 private:
  const SymBody& input(const Node& n, std::size_t i) {
    if (i >= n.inputs.size() || n.inputs[i] < 0) {
      fail(ErrorCode::kInvalidParameter, "node " + std::to_string(n.id) + " has an unwired geometry input");
    }
    return bodies_.at(n.inputs[i]);
  }

  bool plain(NodeId id) const { return plain_.at(id); }

  static SymBody make_plain(const std::string& key, const std::string& label, NodeId source) {
    SymBody b;
    StructuralLink link;
    link.key = key;
    link.label = label;
    link.source = source;
    b.links.push_back(link);
    b.root = key;
    return b;
  }

  void diagnose(const std::string& code, NodeId node, const std::string& message) {
    diagnostics_.push_back({code, node, message});
  }

  // Adds the links and joints of `other` into `into`, unifying links by key.
  void unify(SymBody& into, const SymBody& other, NodeId at) {
    for (const auto& l : other.links) {
      if (StructuralLink* existing = into.find(l.key)) {
        existing->condition = existing->condition.disjoin(l.condition);
        if (existing->label.empty()) existing->label = l.label;
        if (existing->group != l.group) {
          diagnose("link-conflict", at, "link " + l.key + " appears in two duplication contexts");
        }
      } else {
        into.links.push_back(l);
      }
    }
    for (const auto& j : other.joints) {
      auto same = std::find_if(into.joints.begin(), into.joints.end(),
                               [&](const StructuralJoint& x) { return x.key == j.key; });
      if (same == into.joints.end()) {
        into.joints.push_back(j);
      } else {
        same->condition = same->condition.disjoin(j.condition);
      }
    }
  }

  SymBody merge(const Node& n) {
    if (plain(n.id)) {
      const SymBody& first = input(n, 0);
      return make_plain(first.root, first.links.front().label, first.links.front().source);
    }
    std::optional<SymBody> result;
    for (std::size_t i = 0; i < n.inputs.size(); ++i) {
      if (plain(n.inputs[i])) continue;
      const SymBody& b = input(n, i);
      if (!result) {
        result = b;
        continue;
      }
      if (result->find(b.root) != nullptr) {
        unify(*result, b, n.id);
        continue;
      }
      // A foreign root folds rigidly into the merged root.
      SymBody moved = b;
      moved.links.erase(moved.links.begin());
      for (auto& j : moved.joints) {
        if (j.parent == b.root) j.parent = result->root;
      }
      unify(*result, moved, n.id);
    }
    return *result;
  }

  SymBody switch_node(const Node& n) {
    if (n.inputs.empty()) fail(ErrorCode::kInvalidParameter, "switch without options");
    if (plain(n.id)) {
      const SymBody& first = input(n, 0);
      return make_plain(detail::link_key(n.id), first.links.front().label, n.id);
    }
    const std::string root = input(n, 0).root;
    SymBody result;
    result.root = root;
    for (std::size_t i = 0; i < n.inputs.size(); ++i) {
      SymBody option = input(n, i);
      if (option.root != root) {
        diagnose("switch-root", n.id,
                 "switch option " + std::to_string(i) + " is rooted at " + option.root + ", expected " + root);
      }
      const SwitchAtom atom{n.id, static_cast<int>(i)};
      for (auto& l : option.links) {
        if (l.key != root) l.condition = l.condition.conjoin(atom);
      }
      for (auto& j : option.joints) j.condition = j.condition.conjoin(atom);
      if (result.links.empty()) {
        // The shared root always comes first.
        StructuralLink root_link = option.links.front();
        root_link.condition = Condition::always();
        result.links.push_back(root_link);
      }
      unify(result, option, n.id);
    }
    return result;
  }

  SymBody joint(const Node& n, bool duplicate) {
    const SymBody& parent = input(n, 0);
    const SymBody& child = input(n, 1);
    std::set<std::string> shared;
    const auto pk = parent.keys();
    const auto ck = child.keys();
    std::set_intersection(pk.begin(), pk.end(), ck.begin(), ck.end(), std::inserter(shared, shared.end()));
    if (!shared.empty()) {
      diagnose("joint self-loop", n.id, "joint parent and child share link " + *shared.begin());
    }
    SymBody result = parent;
    SymBody attached = child;
    StructuralJoint j;
    j.key = detail::joint_key(n.id);
    j.type = n.kind == NodeKind::kJointPrismatic ? JointType::kPrismatic
             : n.kind == NodeKind::kJointRevolute ? JointType::kRevolute
                                                  : n.joint_type;
    j.parent = parent.root;
    j.child = child.root;
    j.source = n.id;
    j.label = n.labels.joint;
    if (!n.labels.child.empty()) attached.links.front().label = n.labels.child;
    attached.joints.push_back(j);
    if (!n.labels.parent.empty()) {
      if (StructuralLink* p = result.find(parent.root)) p->label = n.labels.parent;
    }
    if (duplicate) {
      StructuralGroup g;
      g.id = static_cast<int>(groups_.size());
      g.source = n.id;
      if (n.scalars.count("count")) {
        g.count_expression = scalar_expression(graph_, n.scalars.at("count"));
        g.count_parameters = scalar_parameters(graph_, n.scalars.at("count"));
        if (n.scalars.count("count2")) {
          g.count_expression = "(" + g.count_expression + " * " + scalar_expression(graph_, n.scalars.at("count2")) + ")";
          auto more = scalar_parameters(graph_, n.scalars.at("count2"));
          g.count_parameters.insert(g.count_parameters.end(), more.begin(), more.end());
          std::sort(g.count_parameters.begin(), g.count_parameters.end());
          g.count_parameters.erase(std::unique(g.count_parameters.begin(), g.count_parameters.end()),
                                   g.count_parameters.end());
        }
      } else {
        g.count_expression = std::to_string(n.points.size());
      }
      for (auto& existing : groups_) {
        bool inside = false;
        for (const auto& l : attached.links) inside = inside || l.group == existing.id;
        if (inside && existing.parent == -1) existing.parent = g.id;
      }
      for (auto& l : attached.links) {
        if (l.group == -1) l.group = g.id;
      }
      for (auto& jj : attached.joints) {
        if (jj.group == -1) jj.group = g.id;
      }
      groups_.push_back(g);
    }
    unify(result, attached, n.id);
    return result;
  }

  SymBody evaluate(const Node& n) {
    switch (n.kind) {
      case NodeKind::kPrimitive: return make_plain(detail::link_key(n.id), "", n.id);
      case NodeKind::kTransform: {
        const SymBody& in = input(n, 0);
        if (plain(n.id)) return make_plain(detail::link_key(n.id), in.links.front().label, n.id);
        return in;
      }
      case NodeKind::kSemanticLabel: {
        SymBody in = input(n, 0);
        if (plain(n.id)) in.links.front().label = n.label;
        return in;
      }
      case NodeKind::kStoreAttribute: return input(n, 0);
      case NodeKind::kMerge:
        if (n.inputs.empty()) fail(ErrorCode::kInvalidParameter, "merge without inputs");
        return merge(n);
      case NodeKind::kSwitch: return switch_node(n);
      case NodeKind::kJointRevolute:
      case NodeKind::kJointPrismatic: return joint(n, false);
      case NodeKind::kDuplicateJointsOnPoints: return joint(n, true);
      case NodeKind::kScalarMath: break;
    }
    fail(ErrorCode::kPortType, "scalar node used as geometry");
  }

  const NodeGraph& graph_;
  std::map<NodeId, bool> plain_;
  std::map<NodeId, SymBody> bodies_;
  std::vector<StructuralGroup> groups_;
  std::vector<Diagnostic> diagnostics_;
};

}  // namespace

GraphStructure analyze_structure(const NodeGraph& graph) { return Analyzer(graph).run(); }

}  // namespace artigen
