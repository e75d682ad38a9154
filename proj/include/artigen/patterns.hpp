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

#include <string>
#include <vector>

#include "artigen/graph.hpp"

namespace artigen {

/// Small reference graphs for the joint composition rules: one joint, a
/// slider, duplication on a grid, a chain, two joints onto one parent and a
/// hinge plus slider between the same two parts.
std::vector<std::string> composition_pattern_names();
/// Throws kInvalidParameter for an unknown name.
NodeGraph composition_pattern(const std::string& name);

/// Two sibling arms whose sweeps cross half way through their range.
NodeGraph colliding_arms_graph();

}  // namespace artigen
