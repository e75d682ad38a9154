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

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "artigen/geometry.hpp"

namespace artigen {

using NodeId = int;

enum class NodeKind {
  kPrimitive,
  kTransform,
  kMerge,
  kScalarMath,
  kSwitch,
  kJointRevolute,
  kJointPrismatic,
  kDuplicateJointsOnPoints,
  kSemanticLabel,
  kStoreAttribute,
};

enum class PrimitiveShape { kBox, kCylinder, kSphere, kRoundedBox, kNgonPrism };
enum class MathOp { kAdd, kSub, kMul, kDiv, kMin, kMax };
enum class JointType { kRevolute, kPrismatic };
enum class PortType { kGeometry, kScalar };

std::string_view to_string(NodeKind kind);
std::string_view to_string(PrimitiveShape shape);
std::string_view to_string(MathOp op);
std::string_view to_string(JointType type);
std::optional<NodeKind> node_kind_from_string(std::string_view text);
std::optional<PrimitiveShape> primitive_shape_from_string(std::string_view text);
std::optional<MathOp> math_op_from_string(std::string_view text);

/// Value feeding a scalar port: a literal, a named parameter, or the output
/// of a ScalarMath node.
struct Scalar {
  enum class Source { kConstant, kParameter, kNode };
  Source source = Source::kConstant;
  double value = 0.0;
  std::string parameter;
  NodeId node = -1;

  Scalar() = default;
  Scalar(double constant) : value(constant) {}  // NOLINT(google-explicit-constructor)
  static Scalar param(std::string name);
  static Scalar wire(NodeId node);

  bool is_constant() const { return source == Source::kConstant; }
  bool operator==(const Scalar& other) const;
};

// ---------------------------------------------------------------------------
// Parameters

struct ContinuousRange {
  double lo = 0.0;
  double hi = 1.0;
  std::string units;
};
struct DiscreteChoice {
  std::vector<std::string> labels;
};
struct CountRange {
  int min = 0;
  int max = 0;
};
using ParameterDomain = std::variant<ContinuousRange, DiscreteChoice, CountRange>;

struct ParameterEntry {
  std::string name;
  ParameterDomain domain;

  bool is_continuous() const { return std::holds_alternative<ContinuousRange>(domain); }
  /// Closed value interval: [lo, hi], [0, labels-1] or [min, max].
  std::pair<double, double> interval() const;
  /// Number of distinct values for discrete and count entries; 0 for continuous.
  std::uint64_t cardinality() const;
};

/// Insertion-ordered set of named parameter domains.
class ParameterSpace {
 public:
  void add(ParameterEntry entry);
  void add_continuous(std::string name, double lo, double hi, std::string units = "m");
  void add_discrete(std::string name, std::vector<std::string> labels);
  void add_count(std::string name, int min, int max);

  const std::vector<ParameterEntry>& entries() const { return entries_; }
  const ParameterEntry* find(std::string_view name) const;
  ParameterEntry& at(std::string_view name);
  bool contains(std::string_view name) const { return find(name) != nullptr; }
  std::size_t size() const { return entries_.size(); }
  std::size_t continuous_count() const;

  bool operator==(const ParameterSpace& other) const;

 private:
  std::vector<ParameterEntry> entries_;
};

/// Sampled parameter values. Discrete entries hold the choice index and count
/// entries hold the integer count.
struct ParamVector {
  std::map<std::string, double> values;
  std::uint64_t seed = 0;

  /// Throws kMissingParameter when `name` is absent.
  double at(const std::string& name) const;
  void set(const std::string& name, double value) { values[name] = value; }
  bool operator==(const ParamVector&) const = default;
};

/// Throws kMissingParameter for an absent entry and kRange for an
/// out-of-domain value.
void check_params(const ParameterSpace& space, const ParamVector& params);

// ---------------------------------------------------------------------------
// Graph

struct JointLabels {
  std::string joint;
  std::string parent;
  std::string child;
  bool operator==(const JointLabels&) const = default;
};

struct Node {
  NodeId id = -1;
  NodeKind kind = NodeKind::kPrimitive;

  PrimitiveShape shape = PrimitiveShape::kBox;  // Primitive
  int segments = kDefaultSegments;              // cylinder, sphere
  std::string material;                         // Primitive
  MathOp op = MathOp::kAdd;                     // ScalarMath
  JointType joint_type = JointType::kRevolute;  // DuplicateJointsOnPoints
  Vec3 axis = Vec3::UnitZ();                    // joints and duplication
  JointLabels labels;                           // joints and duplication
  std::vector<Vec3> points;                     // explicit duplication points
  std::string label;                            // SemanticLabel, StoreAttribute

  std::map<std::string, Scalar> scalars;
  /// Geometry inputs by position. Joints and duplication: [parent, child].
  std::vector<NodeId> inputs;

  bool operator==(const Node& other) const;
};

/// Scalar port names accepted by a node (depends on shape for primitives).
std::vector<std::string> scalar_ports(const Node& node);
/// Number of positional geometry inputs, or -1 for variadic (Merge, Switch).
int geometry_arity(NodeKind kind);
PortType output_type(NodeKind kind);
bool is_joint_kind(NodeKind kind);

struct PortRef {
  NodeId node;
  /// "geometry", "parent", "child", "input:<i>", "option:<i>", or a scalar
  /// port name.
  std::string port;
};

class NodeGraph {
 public:
  NodeGraph() = default;
  explicit NodeGraph(std::string name) : name_(std::move(name)) {}

  /// Appends a node with a fresh id after checking its settings. Throws
  /// kInvalidParameter for invalid settings and kPortType / kGraphCycle for
  /// bad wiring present in the prototype.
  NodeId add_node(Node prototype);
  /// Wires the output of `from` into a port. Throws kPortType and kGraphCycle.
  void connect(NodeId from, const PortRef& to);
  void set_output(NodeId id) { output_ = id; }

  const std::string& name() const { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }
  NodeId output() const { return output_; }
  const std::vector<Node>& nodes() const { return nodes_; }
  const Node& node(NodeId id) const;
  Node& mutable_node(NodeId id);
  bool has_node(NodeId id) const;
  NodeId next_id() const { return next_id_; }

  ParameterSpace& parameters() { return parameters_; }
  const ParameterSpace& parameters() const { return parameters_; }

  bool operator==(const NodeGraph& other) const;

  /// Appends a node without checks; used by deserialization.
  void insert_raw(Node node);

 private:
  bool reaches(NodeId from, NodeId target) const;

  std::string name_;
  std::vector<Node> nodes_;
  std::map<NodeId, std::size_t> index_;
  NodeId next_id_ = 0;
  NodeId output_ = -1;
  ParameterSpace parameters_;
};

/// Upstream node ids of `node` (geometry and scalar wires).
std::vector<NodeId> upstream(const Node& node);

struct Diagnostic {
  std::string code;  // "graph-cycle", "joint self-loop", ...
  NodeId node = -1;
  std::string message;
};

/// Empty iff the graph is exportable.
std::vector<Diagnostic> validate(const NodeGraph& graph);

/// Pairs of joint nodes that connect the same two links.
std::vector<std::pair<NodeId, NodeId>> composite_joints(const NodeGraph& graph);

/// Inserts a StoreAttribute after each statically unjointed subgraph that
/// enters a jointed body, so every evaluated face carries a link label.
/// Idempotent.
NodeGraph inject_label_attributes(const NodeGraph& graph);

/// Canonical JSON text (sorted keys, shortest round-trip floats).
std::string serialize(const NodeGraph& graph);
/// Throws ParseError for malformed text and kSchemaVersion for unknown
/// schema versions or node kinds.
NodeGraph deserialize(std::string_view text);

// ---------------------------------------------------------------------------
// Structure

/// Option `second` selected at Switch node `first`.
using SwitchAtom = std::pair<NodeId, int>;
/// Sorted, duplicate-free conjunction of switch selections.
using Conjunction = std::vector<SwitchAtom>;

/// Disjunction of conjunctions. No terms means never; one empty term means
/// always.
struct Condition {
  std::vector<Conjunction> terms;

  static Condition always() { return Condition{{Conjunction{}}}; }
  bool is_always() const;
  bool is_never() const { return terms.empty(); }
  Condition conjoin(const SwitchAtom& atom) const;
  Condition disjoin(const Condition& other) const;
  /// True when no selection satisfies both conditions.
  bool exclusive_with(const Condition& other) const;
  bool holds(const std::map<NodeId, int>& selection) const;
  std::string to_string() const;
  bool operator==(const Condition&) const = default;
};

struct StructuralLink {
  std::string key;
  std::string label;
  Condition condition = Condition::always();
  int group = -1;
  NodeId source = -1;
};

struct StructuralJoint {
  std::string key;
  JointType type = JointType::kRevolute;
  std::string parent;
  std::string child;
  Condition condition = Condition::always();
  int group = -1;
  NodeId source = -1;
  std::string label;
};

/// A set of links and joints copied once per duplication point.
struct StructuralGroup {
  int id = -1;
  NodeId source = -1;
  int parent = -1;
  std::string count_expression;
  std::vector<std::string> count_parameters;
};

/// Every link and joint a graph can produce, with the switch selections under
/// which each exists. Independent of parameter values.
struct GraphStructure {
  std::vector<StructuralLink> links;
  std::vector<StructuralJoint> joints;
  std::vector<StructuralGroup> groups;
  std::string root;
  std::vector<Diagnostic> diagnostics;
};

/// Requires an acyclic, fully wired graph; throws kGraphCycle otherwise.
GraphStructure analyze_structure(const NodeGraph& graph);

/// Strips duplication suffixes: "n4#1#0" -> "n4".
std::string template_key(std::string_view key);

// ---------------------------------------------------------------------------
// Scalars

/// Evaluates a scalar with the given parameters. Throws kMissingParameter and
/// kArithmetic (division by zero).
double evaluate_scalar(const NodeGraph& graph, const Scalar& scalar, const ParamVector& params);
/// Interval enclosure of a scalar over the declared parameter domains.
/// Unbounded when a divisor interval contains zero.
std::pair<double, double> scalar_interval(const NodeGraph& graph, const Scalar& scalar);
/// Human-readable expression, e.g. "(width * 0.5)".
std::string scalar_expression(const NodeGraph& graph, const Scalar& scalar);
/// Parameter names a scalar depends on, sorted.
std::vector<std::string> scalar_parameters(const NodeGraph& graph, const Scalar& scalar);

// ---------------------------------------------------------------------------
// Evaluation

struct JointSpec {
  JointType type = JointType::kRevolute;
  Vec3 pivot = Vec3::Zero();  // in the parent link frame
  Vec3 axis = Vec3::UnitZ();
  double lower = 0.0;
  double upper = 0.0;
  double default_value = 0.0;
  JointLabels labels;

  /// Rigid motion at `value` about a pivot given in the frame of interest.
  RigidTransform motion(double value, const Vec3& pivot_point) const;
  bool fixed() const { return lower == upper; }
};

struct EvaluatedLink {
  std::string id;
  std::string label;
  TriMesh mesh;                  // link-local frame
  Vec3 origin = Vec3::Zero();    // link frame origin at the zero pose
  RigidTransform frame;          // world pose at the evaluated joint values
  NodeId source = -1;
};

struct EvaluatedJoint {
  std::string id;
  std::string parent;
  std::string child;
  JointSpec spec;
  NodeId source = -1;
  int copy = -1;  // duplication index, -1 outside a duplication
};

using JointValues = std::map<std::string, double>;

struct EvaluatedBody {
  std::vector<EvaluatedLink> links;  // root first, then depth-first
  std::vector<EvaluatedJoint> joints;
  std::string root;
  std::vector<std::string> label_table;

  const EvaluatedLink& link(std::string_view id) const;
  std::optional<std::size_t> find_link(std::string_view id) const;
  /// Link mesh placed at its evaluated world pose.
  TriMesh posed_mesh(std::size_t link) const;
};

/// Evaluates the graph. Joint values default to each joint's default value.
/// Throws kMissingParameter, kRange (parameter or joint value out of range),
/// kArithmetic, kInvalidParameter, kStructural and kCycle.
EvaluatedBody evaluate(const NodeGraph& graph, const ParamVector& params,
                       const std::optional<JointValues>& joint_values = std::nullopt);

/// World frames of all links for the given joint values (missing joints use
/// their defaults). Composite joints on one link pair apply in list order,
/// the earlier one outermost.
std::map<std::string, RigidTransform> body_forward_kinematics(const EvaluatedBody& body,
                                                              const JointValues& values);

/// A jointed fragment: links plus the joints among them and the joints that
/// attach them to links outside the fragment.
struct BodyFragment {
  std::vector<EvaluatedLink> links;  // meshes in the model frame
  std::vector<EvaluatedJoint> joints;  // pivots in the model frame
};

/// One translated copy of the fragment per point, each with its own joint
/// instances. Keys get "#i" and labels "_i". Throws kInvalidParameter for an
/// empty point list or a fragment without joints.
BodyFragment expand_duplicates(const BodyFragment& fragment, std::span<const Vec3> points);

}  // namespace artigen
