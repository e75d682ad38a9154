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

#include "artigen/graph.hpp"

namespace artigen::detail {

/// Nodes reachable from `root`, upstream first. Throws kGraphCycle on a cycle
/// and kInvalidParameter on a wire to a missing node.
std::vector<NodeId> topological_order(const NodeGraph& graph, NodeId root);

/// True for geometry nodes with no joint or duplication node upstream.
std::map<NodeId, bool> static_plain(const NodeGraph& graph, const std::vector<NodeId>& order);

inline std::string link_key(NodeId id) { return "n" + std::to_string(id); }
inline std::string joint_key(NodeId id) { return "j" + std::to_string(id); }

}  // namespace artigen::detail
