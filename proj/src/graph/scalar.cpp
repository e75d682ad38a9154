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
#include <limits>
#include <set>

#include "artigen/error.hpp"
#include "artigen/graph.hpp"
#include "common/format.hpp"

namespace artigen {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

const Node& math_node(const NodeGraph& graph, NodeId id) {
  const Node& n = graph.node(id);
  if (n.kind != NodeKind::kScalarMath) fail(ErrorCode::kPortType, "scalar wire to a non-ScalarMath node");
  return n;
}

const Scalar& operand(const Node& n, const char* port) {
  const auto it = n.scalars.find(port);
  if (it == n.scalars.end()) {
    fail(ErrorCode::kInvalidParameter, "ScalarMath node " + std::to_string(n.id) + " is missing '" + port + "'");
  }
  return it->second;
}

double apply(MathOp op, double a, double b) {
  switch (op) {
    case MathOp::kAdd: return a + b;
    case MathOp::kSub: return a - b;
    case MathOp::kMul: return a * b;
    case MathOp::kDiv:
      if (b == 0.0) fail(ErrorCode::kArithmetic, "division by zero");
      return a / b;
    case MathOp::kMin: return std::min(a, b);
    case MathOp::kMax: return std::max(a, b);
  }
  return 0.0;
}

double evaluate_with_depth(const NodeGraph& graph, const Scalar& s, const ParamVector& params, int depth) {
  if (depth > 10000) fail(ErrorCode::kGraphCycle, "scalar expression is cyclic");
  switch (s.source) {
    case Scalar::Source::kConstant: return s.value;
    case Scalar::Source::kParameter: return params.at(s.parameter);
    case Scalar::Source::kNode: {
      const Node& n = math_node(graph, s.node);
      const double a = evaluate_with_depth(graph, operand(n, "a"), params, depth + 1);
      const double b = evaluate_with_depth(graph, operand(n, "b"), params, depth + 1);
      return apply(n.op, a, b);
    }
  }
  return 0.0;
}

using Interval = std::pair<double, double>;

Interval interval_with_depth(const NodeGraph& graph, const Scalar& s, int depth) {
  if (depth > 10000) fail(ErrorCode::kGraphCycle, "scalar expression is cyclic");
  switch (s.source) {
    case Scalar::Source::kConstant: return {s.value, s.value};
    case Scalar::Source::kParameter: {
      const ParameterEntry* e = graph.parameters().find(s.parameter);
      if (e == nullptr) fail(ErrorCode::kMissingParameter, "unknown parameter '" + s.parameter + "'");
      return e->interval();
    }
    case Scalar::Source::kNode: break;
  }
  const Node& n = math_node(graph, s.node);
  const Interval a = interval_with_depth(graph, operand(n, "a"), depth + 1);
  const Interval b = interval_with_depth(graph, operand(n, "b"), depth + 1);
  switch (n.op) {
    case MathOp::kAdd: return {a.first + b.first, a.second + b.second};
    case MathOp::kSub: return {a.first - b.second, a.second - b.first};
    case MathOp::kMul: {
      const double c[4] = {a.first * b.first, a.first * b.second, a.second * b.first, a.second * b.second};
      return {*std::min_element(c, c + 4), *std::max_element(c, c + 4)};
    }
    case MathOp::kDiv: {
      if (b.first <= 0.0 && b.second >= 0.0) return {-kInf, kInf};
      const double c[4] = {a.first / b.first, a.first / b.second, a.second / b.first, a.second / b.second};
      return {*std::min_element(c, c + 4), *std::max_element(c, c + 4)};
    }
    case MathOp::kMin: return {std::min(a.first, b.first), std::min(a.second, b.second)};
    case MathOp::kMax: return {std::max(a.first, b.first), std::max(a.second, b.second)};
  }
  return {-kInf, kInf};
}

std::string expression_with_depth(const NodeGraph& graph, const Scalar& s, int depth) {
  if (depth > 10000) fail(ErrorCode::kGraphCycle, "scalar expression is cyclic");
  switch (s.source) {
    case Scalar::Source::kConstant: return format_real(s.value);
    case Scalar::Source::kParameter: return s.parameter;
    case Scalar::Source::kNode: break;
  }
  const Node& n = math_node(graph, s.node);
  const std::string a = expression_with_depth(graph, operand(n, "a"), depth + 1);
  const std::string b = expression_with_depth(graph, operand(n, "b"), depth + 1);
  switch (n.op) {
    case MathOp::kAdd: return "(" + a + " + " + b + ")";
    case MathOp::kSub: return "(" + a + " - " + b + ")";
    case MathOp::kMul: return "(" + a + " * " + b + ")";
    case MathOp::kDiv: return "(" + a + " / " + b + ")";
    case MathOp::kMin: return "min(" + a + ", " + b + ")";
    case MathOp::kMax: return "max(" + a + ", " + b + ")";
  }
  return "?";
}

void collect_parameters(const NodeGraph& graph, const Scalar& s, std::set<std::string>& out, int depth) {
  if (depth > 10000) fail(ErrorCode::kGraphCycle, "scalar expression is cyclic");
  if (s.source == Scalar::Source::kParameter) out.insert(s.parameter);
  if (s.source != Scalar::Source::kNode) return;
  const Node& n = math_node(graph, s.node);
  collect_parameters(graph, operand(n, "a"), out, depth + 1);
  collect_parameters(graph, operand(n, "b"), out, depth + 1);
}

}  // namespace

double evaluate_scalar(const NodeGraph& graph, const Scalar& scalar, const ParamVector& params) {
  return evaluate_with_depth(graph, scalar, params, 0);
}

std::pair<double, double> scalar_interval(const NodeGraph& graph, const Scalar& scalar) {
  return interval_with_depth(graph, scalar, 0);
}

std::string scalar_expression(const NodeGraph& graph, const Scalar& scalar) {
  return expression_with_depth(graph, scalar, 0);
}

std::vector<std::string> scalar_parameters(const NodeGraph& graph, const Scalar& scalar) {
  std::set<std::string> names;
  collect_parameters(graph, scalar, names, 0);
  return {names.begin(), names.end()};
}

}  // namespace artigen
