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

#include "artigen/blueprint.hpp"

#include <algorithm>
#include <cstdio>
#include <functional>
#include <set>

#include "artigen/error.hpp"
#include "common/hash.hpp"

namespace artigen {
namespace {

std::string scalar_text(const NodeGraph& graph, const Node& n, const char* port) {
  const auto it = n.scalars.find(port);
  if (it == n.scalars.end()) return "0";
  return scalar_expression(graph, it->second);
}

[[noreturn]] void not_a_tree(const std::string& message) { fail(ErrorCode::kCycle, message); }

void normalize_composites(KinematicBlueprint& bp) {
  std::map<std::string, std::vector<std::size_t>> by_child;
  for (std::size_t i = 0; i < bp.joints.size(); ++i) by_child[bp.joints[i].child].push_back(i);

  std::vector<LinkTemplate> links;
  for (const LinkTemplate& link : bp.links) {
    const auto it = by_child.find(link.id);
    if (it == by_child.end()) {
      links.push_back(link);
      continue;
    }
    const auto& list = it->second;
    // Alternatives must never coexist.
    std::vector<std::vector<std::size_t>> clusters;
    for (std::size_t j : list) {
      bool placed = false;
      for (auto& c : clusters) {
        const JointTemplate& head = bp.joints[c.front()];
        if (head.parent == bp.joints[j].parent && head.condition == bp.joints[j].condition) {
          c.push_back(j);
          placed = true;
          break;
        }
      }
      if (!placed) clusters.push_back({j});
    }
    for (std::size_t a = 0; a < clusters.size(); ++a) {
      for (std::size_t b = a + 1; b < clusters.size(); ++b) {
        const JointTemplate& x = bp.joints[clusters[a].front()];
        const JointTemplate& y = bp.joints[clusters[b].front()];
        if (!x.condition.exclusive_with(y.condition)) {
          not_a_tree("link " + link.id + " is attached by " + x.id + " and " + y.id +
                     " under overlapping conditions");
        }
      }
    }
    for (auto& cluster : clusters) {
      if (cluster.size() < 2) continue;
      std::sort(cluster.begin(), cluster.end(),
                [&](std::size_t a, std::size_t b) { return bp.joints[a].source < bp.joints[b].source; });
      std::string previous = bp.joints[cluster.front()].parent;
      for (std::size_t k = 0; k + 1 < cluster.size(); ++k) {
        LinkTemplate pt;
        pt.id = link.id + kPassthroughSuffix + std::to_string(k + 1);
        pt.label = (link.label.empty() ? link.id : link.label) + kPassthroughSuffix + std::to_string(k + 1);
        pt.condition = bp.joints[cluster[k]].condition;
        pt.group = link.group;
        pt.source = link.source;
        pt.passthrough = true;
        if (std::none_of(links.begin(), links.end(), [&](const LinkTemplate& l) { return l.id == pt.id; })) {
          links.push_back(pt);
        }
        bp.joints[cluster[k]].parent = previous;
        bp.joints[cluster[k]].child = pt.id;
        previous = pt.id;
      }
      bp.joints[cluster.back()].parent = previous;
    }
    links.push_back(link);
  }
  bp.links = std::move(links);
}

void check_tree(const KinematicBlueprint& bp) {
  std::map<std::string, std::vector<std::string>> children;
  for (const auto& j : bp.joints) {
    if (j.child == bp.root) not_a_tree("root link " + bp.root + " has a parent joint " + j.id);
    children[j.parent].push_back(j.child);
  }
  std::map<std::string, int> state;
  std::function<void(const std::string&)> visit = [&](const std::string& id) {
    state[id] = 1;
    for (const auto& c : children[id]) {
      if (state[c] == 1) not_a_tree("kinematic cycle through link " + c);
      if (state[c] == 0) visit(c);
    }
    state[id] = 2;
  };
  visit(bp.root);
  for (const auto& l : bp.links) {
    if (state[l.id] == 0) fail(ErrorCode::kStructural, "link " + l.id + " is not attached to the root");
  }
}

}  // namespace

const LinkTemplate* KinematicBlueprint::find_link(const std::string& id) const {
  for (const auto& l : links) {
    if (l.id == id) return &l;
  }
  return nullptr;
}

KinematicBlueprint extract_blueprint(const NodeGraph& graph) {
  const auto diagnostics = validate(graph);
  if (!diagnostics.empty()) {
    std::string message = "graph " + graph.name() + " does not validate:";
    for (const auto& d : diagnostics) message += " [" + d.code + "] " + d.message + ";";
    fail(ErrorCode::kStructural, message);
  }
  const GraphStructure s = analyze_structure(graph);
  KinematicBlueprint bp;
  bp.name = graph.name();
  bp.root = s.root;
  for (const auto& l : s.links) {
    LinkTemplate t;
    t.id = l.key;
    t.label = l.label;
    t.condition = l.condition;
    t.group = l.group;
    t.source = l.source;
    bp.links.push_back(t);
  }
  std::stable_sort(bp.links.begin(), bp.links.end(), [&](const LinkTemplate& a, const LinkTemplate& b) {
    const bool ra = a.id == bp.root;
    const bool rb = b.id == bp.root;
    if (ra != rb) return ra;
    return a.source < b.source;
  });
  for (const auto& j : s.joints) {
    JointTemplate t;
    t.id = j.key;
    t.type = j.type;
    t.parent = j.parent;
    t.child = j.child;
    t.condition = j.condition;
    t.group = j.group;
    t.source = j.source;
    t.label = j.label;
    const Node& n = graph.node(j.source);
    t.lower = scalar_text(graph, n, "lower");
    t.upper = scalar_text(graph, n, "upper");
    bp.joints.push_back(t);
  }
  std::stable_sort(bp.joints.begin(), bp.joints.end(),
                   [](const JointTemplate& a, const JointTemplate& b) { return a.source < b.source; });
  for (const auto& g : s.groups) {
    RepeatGroup r;
    r.id = g.id;
    r.source = g.source;
    r.parent = g.parent;
    r.count_expression = g.count_expression;
    r.count_parameters = g.count_parameters;
    for (const auto& p : r.count_parameters) {
      if (!graph.parameters().contains(p)) {
        fail(ErrorCode::kStructural, "repeat count reads undeclared parameter '" + p + "'");
      }
    }
    bp.groups.push_back(r);
  }
  normalize_composites(bp);
  for (auto& g : bp.groups) {
    for (const auto& l : bp.links) {
      if (l.group == g.id) g.links.push_back(l.id);
    }
  }
  check_tree(bp);
  return bp;
}

std::string blueprint_canonical_text(const KinematicBlueprint& bp) {
  std::string out = "blueprint " + bp.name + "\nroot " + bp.root + "\n";
  for (const auto& l : bp.links) {
    out += "link " + l.id + " label=" + l.label + " when=" + l.condition.to_string() +
           " group=" + std::to_string(l.group) + (l.passthrough ? " passthrough" : "") + "\n";
  }
  for (const auto& j : bp.joints) {
    out += "joint " + j.id + " " + std::string(to_string(j.type)) + " " + j.parent + " -> " + j.child +
           " label=" + j.label + " when=" + j.condition.to_string() + " group=" + std::to_string(j.group) + "\n";
  }
  for (const auto& g : bp.groups) {
    out += "group " + std::to_string(g.id) + " parent=" + std::to_string(g.parent) + " count=" + g.count_expression;
    for (const auto& l : g.links) out += " " + l;
    out += "\n";
  }
  return out;
}

std::string blueprint_signature(const KinematicBlueprint& bp) {
  char buffer[17];
  std::snprintf(buffer, sizeof buffer, "%016llx",
                static_cast<unsigned long long>(detail::fnv1a64(blueprint_canonical_text(bp))));
  return buffer;
}

std::string blueprint_tree_text(const KinematicBlueprint& bp) {
  std::map<std::string, std::vector<const JointTemplate*>> children;
  for (const auto& j : bp.joints) children[j.parent].push_back(&j);
  std::map<std::string, const LinkTemplate*> by_id;
  for (const auto& l : bp.links) by_id[l.id] = &l;
  auto name = [&](const std::string& id) {
    const LinkTemplate* l = by_id.at(id);
    return l->label.empty() ? l->id : l->label;
  };

  std::string out;
  std::function<void(const std::string&, int)> visit = [&](const std::string& id, int depth) {
    for (const JointTemplate* j : children[id]) {
      out += std::string(2 * depth, ' ') + name(j->child) + " [" + std::string(to_string(j->type)) + " " + j->lower +
             ".." + j->upper + "]";
      if (!j->condition.is_always()) out += " when " + j->condition.to_string();
      const int parent_group = by_id.at(id)->group;
      if (j->group >= 0 && j->group != parent_group) {
        for (const auto& g : bp.groups) {
          if (g.id == j->group) out += " repeat " + g.count_expression;
        }
      }
      out += "\n";
      visit(j->child, depth + 1);
    }
  };
  out += name(bp.root) + "\n";
  visit(bp.root, 1);
  return out;
}

}  // namespace artigen
