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
#include <set>

#include <json.hpp>

#include "artigen/error.hpp"
#include "artigen/graph.hpp"

namespace artigen {
namespace {

using nlohmann::json;

constexpr int kSchema = 1;

// 1-based line and column of a byte offset.
std::pair<std::size_t, std::size_t> position_of(std::string_view text, std::size_t offset) {
  offset = std::min(offset, text.size());
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i < offset; ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  [[noreturn]] void error_at_key(const std::string& key, const std::string& message) const {
    const std::string needle = "\"" + key + "\"";
    const std::size_t at = text_.find(needle);
    const auto [line, column] = position_of(text_, at == std::string_view::npos ? 0 : at);
    throw ParseError(message, line, column);
  }

  void only_keys(const json& object, std::initializer_list<const char*> allowed, const std::string& where) const {
    if (!object.is_object()) error_at_key(where, where + " must be an object");
    for (const auto& [key, value] : object.items()) {
      const bool known = std::any_of(allowed.begin(), allowed.end(), [&](const char* k) { return key == k; });
      if (!known) error_at_key(key, "unknown key '" + key + "' in " + where);
    }
  }

  template <typename T>
  T get(const json& object, const char* key, const std::string& where) const {
    const auto it = object.find(key);
    if (it == object.end()) error_at_key(where, where + " is missing '" + key + "'");
    try {
      return it->get<T>();
    } catch (const json::exception&) {
      error_at_key(key, "'" + std::string(key) + "' in " + where + " has the wrong type");
    }
  }

  Vec3 vec3(const json& value, const std::string& key) const {
    if (!value.is_array() || value.size() != 3) error_at_key(key, "'" + key + "' must be an array of 3 numbers");
    Vec3 v;
    for (int i = 0; i < 3; ++i) {
      if (!value[i].is_number()) error_at_key(key, "'" + key + "' must be an array of 3 numbers");
      v[i] = value[i].get<double>();
    }
    return v;
  }

  Scalar scalar(const json& value, const std::string& port) const {
    if (value.is_number()) return Scalar(value.get<double>());
    if (value.is_object() && value.size() == 1 && value.contains("param") && value["param"].is_string()) {
      return Scalar::param(value["param"].get<std::string>());
    }
    if (value.is_object() && value.size() == 1 && value.contains("node") && value["node"].is_number_integer()) {
      return Scalar::wire(value["node"].get<NodeId>());
    }
    error_at_key(port, "scalar '" + port + "' must be a number, {\"param\": name} or {\"node\": id}");
  }

  ParameterEntry parameter(const json& value) const {
    only_keys(value, {"name", "type", "lo", "hi", "units", "labels", "min", "max"}, "parameter");
    ParameterEntry entry;
    entry.name = get<std::string>(value, "name", "parameter");
    const auto type = get<std::string>(value, "type", "parameter");
    if (type == "continuous") {
      ContinuousRange r;
      r.lo = get<double>(value, "lo", "parameter");
      r.hi = get<double>(value, "hi", "parameter");
      if (value.contains("units")) r.units = get<std::string>(value, "units", "parameter");
      entry.domain = r;
    } else if (type == "discrete") {
      entry.domain = DiscreteChoice{get<std::vector<std::string>>(value, "labels", "parameter")};
    } else if (type == "count") {
      entry.domain = CountRange{get<int>(value, "min", "parameter"), get<int>(value, "max", "parameter")};
    } else {
      error_at_key("type", "unknown parameter type '" + type + "'");
    }
    return entry;
  }

  Node node(const json& value) const {
    only_keys(value,
              {"id", "kind", "shape", "segments", "material", "op", "joint_type", "axis", "joint_label",
               "parent_label", "child_label", "points", "label", "scalars", "inputs"},
              "node");
    Node n;
    n.id = get<NodeId>(value, "id", "node");
    const auto kind_text = get<std::string>(value, "kind", "node");
    const auto kind = node_kind_from_string(kind_text);
    if (!kind) fail(ErrorCode::kSchemaVersion, "unknown node kind '" + kind_text + "'");
    n.kind = *kind;
    if (value.contains("shape")) {
      const auto text = get<std::string>(value, "shape", "node");
      const auto shape = primitive_shape_from_string(text);
      if (!shape) error_at_key("shape", "unknown primitive shape '" + text + "'");
      n.shape = *shape;
    }
    if (value.contains("segments")) n.segments = get<int>(value, "segments", "node");
    if (value.contains("material")) n.material = get<std::string>(value, "material", "node");
    if (value.contains("op")) {
      const auto text = get<std::string>(value, "op", "node");
      const auto op = math_op_from_string(text);
      if (!op) error_at_key("op", "unknown math op '" + text + "'");
      n.op = *op;
    }
    if (value.contains("joint_type")) {
      const auto text = get<std::string>(value, "joint_type", "node");
      if (text == to_string(JointType::kRevolute)) {
        n.joint_type = JointType::kRevolute;
      } else if (text == to_string(JointType::kPrismatic)) {
        n.joint_type = JointType::kPrismatic;
      } else {
        error_at_key("joint_type", "unknown joint type '" + text + "'");
      }
    }
    if (value.contains("axis")) n.axis = vec3(value["axis"], "axis");
    if (value.contains("joint_label")) n.labels.joint = get<std::string>(value, "joint_label", "node");
    if (value.contains("parent_label")) n.labels.parent = get<std::string>(value, "parent_label", "node");
    if (value.contains("child_label")) n.labels.child = get<std::string>(value, "child_label", "node");
    if (value.contains("points")) {
      if (!value["points"].is_array()) error_at_key("points", "'points' must be an array");
      for (const auto& p : value["points"]) n.points.push_back(vec3(p, "points"));
    }
    if (value.contains("label")) n.label = get<std::string>(value, "label", "node");
    if (value.contains("scalars")) {
      const json& scalars = value["scalars"];
      if (!scalars.is_object()) error_at_key("scalars", "'scalars' must be an object");
      for (const auto& [port, s] : scalars.items()) n.scalars[port] = scalar(s, port);
    }
    if (value.contains("inputs")) n.inputs = get<std::vector<NodeId>>(value, "inputs", "node");
    return n;
  }

 private:
  std::string_view text_;
};

json write_vec3(const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }

json write_scalar(const Scalar& s) {
  switch (s.source) {
    case Scalar::Source::kConstant: return s.value;
    case Scalar::Source::kParameter: return json{{"param", s.parameter}};
    case Scalar::Source::kNode: return json{{"node", s.node}};
  }
  return nullptr;
}

json write_node(const Node& n) {
  const Node defaults;
  json out = json::object();
  out["id"] = n.id;
  out["kind"] = std::string(to_string(n.kind));
  if (n.kind == NodeKind::kPrimitive) out["shape"] = std::string(to_string(n.shape));
  if (n.segments != defaults.segments) out["segments"] = n.segments;
  if (!n.material.empty()) out["material"] = n.material;
  if (n.kind == NodeKind::kScalarMath) out["op"] = std::string(to_string(n.op));
  if (is_joint_kind(n.kind)) out["joint_type"] = std::string(to_string(n.joint_type));
  if (is_joint_kind(n.kind) || n.axis != defaults.axis) out["axis"] = write_vec3(n.axis);
  if (!n.labels.joint.empty()) out["joint_label"] = n.labels.joint;
  if (!n.labels.parent.empty()) out["parent_label"] = n.labels.parent;
  if (!n.labels.child.empty()) out["child_label"] = n.labels.child;
  if (!n.points.empty()) {
    json points = json::array();
    for (const auto& p : n.points) points.push_back(write_vec3(p));
    out["points"] = points;
  }
  if (!n.label.empty()) out["label"] = n.label;
  if (!n.scalars.empty()) {
    json scalars = json::object();
    for (const auto& [port, s] : n.scalars) scalars[port] = write_scalar(s);
    out["scalars"] = scalars;
  }
  if (!n.inputs.empty()) out["inputs"] = n.inputs;
  return out;
}

json write_parameter(const ParameterEntry& e) {
  json out = json::object();
  out["name"] = e.name;
  if (const auto* c = std::get_if<ContinuousRange>(&e.domain)) {
    out["type"] = "continuous";
    out["lo"] = c->lo;
    out["hi"] = c->hi;
    out["units"] = c->units;
  } else if (const auto* d = std::get_if<DiscreteChoice>(&e.domain)) {
    out["type"] = "discrete";
    out["labels"] = d->labels;
  } else {
    const auto& r = std::get<CountRange>(e.domain);
    out["type"] = "count";
    out["min"] = r.min;
    out["max"] = r.max;
  }
  return out;
}

}  // namespace

std::string serialize(const NodeGraph& graph) {
  json doc = json::object();
  doc["schema"] = kSchema;
  doc["name"] = graph.name();
  json nodes = json::array();
  for (const auto& n : graph.nodes()) nodes.push_back(write_node(n));
  doc["nodes"] = nodes;
  doc["output"] = graph.output();
  json params = json::array();
  for (const auto& e : graph.parameters().entries()) params.push_back(write_parameter(e));
  doc["parameters"] = params;
  return doc.dump(2) + "\n";
}

NodeGraph deserialize(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const std::size_t offset = e.byte > 0 ? e.byte - 1 : 0;
    const auto [line, column] = position_of(text, offset);
    throw ParseError("malformed graph document", line, column);
  }
  const Reader reader(text);
  reader.only_keys(doc, {"schema", "name", "nodes", "output", "parameters"}, "document");
  const int schema = reader.get<int>(doc, "schema", "document");
  if (schema != kSchema) {
    fail(ErrorCode::kSchemaVersion, "unsupported graph schema " + std::to_string(schema));
  }
  NodeGraph graph(doc.contains("name") ? reader.get<std::string>(doc, "name", "document") : "");
  if (doc.contains("parameters")) {
    if (!doc["parameters"].is_array()) reader.error_at_key("parameters", "'parameters' must be an array");
    for (const auto& p : doc["parameters"]) {
      try {
        graph.parameters().add(reader.parameter(p));
      } catch (const ParseError&) {
        throw;
      } catch (const Error& e) {
        reader.error_at_key("parameters", e.what());
      }
    }
  }
  if (!doc.contains("nodes") || !doc["nodes"].is_array()) reader.error_at_key("nodes", "'nodes' must be an array");
  std::set<NodeId> seen;
  for (const auto& value : doc["nodes"]) {
    Node n = reader.node(value);
    if (!seen.insert(n.id).second) reader.error_at_key("id", "duplicate node id " + std::to_string(n.id));
    graph.insert_raw(std::move(n));
  }
  graph.set_output(reader.get<NodeId>(doc, "output", "document"));
  return graph;
}

}  // namespace artigen
