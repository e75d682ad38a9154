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

#include <functional>

#include "artigen/error.hpp"
#include "exporters/internal.hpp"

namespace artigen {
namespace {

using detail::comment_text;
using detail::real_text;
using detail::vec_text;
using detail::xml_escape;

struct Layout {
  ExportNames names;
  std::map<std::string, std::pair<std::string, std::string>> meshes;
  std::map<std::string, std::vector<const InstanceJoint*>> children;  // parent link -> joints
  std::map<std::string, const InstanceLink*> links;
};

Layout make_layout(const AssetInstance& instance, const ExportContext& context) {
  Layout layout;
  layout.names = export_names(instance, context);
  for (const auto& l : instance.links) {
    layout.links[l.id] = &l;
    if (l.passthrough || l.mesh.empty()) continue;
    const std::string& stem = layout.names.files.at(l.id);
    layout.meshes[l.id] = {"meshes/" + stem + ".obj", l.hull.empty() ? "" : "meshes/" + stem + "_hull.obj"};
  }
  for (const auto& j : instance.joints) {
    if (!layout.links.count(j.parent) || !layout.links.count(j.child)) {
      fail(ErrorCode::kStructural, "joint " + j.id + " references a missing link");
    }
    layout.children[j.parent].push_back(&j);
  }
  return layout;
}

std::string labels_comment(const InstanceLink& l) {
  std::string text = "link " + l.id + " label: " + (l.label.empty() ? "-" : l.label);
  if (l.passthrough) text += " (passthrough)";
  return "<!-- " + comment_text(text) + " -->";
}

std::string joint_comment(const InstanceJoint& j) {
  const auto& labels = j.spec.labels;
  std::string text = "joint " + j.id + " label: " + (labels.joint.empty() ? "-" : labels.joint);
  if (!labels.parent.empty()) text += " parent: " + labels.parent;
  if (!labels.child.empty()) text += " child: " + labels.child;
  return "<!-- " + comment_text(text) + " -->";
}

std::string q(const std::string& text) { return "\"" + xml_escape(text) + "\""; }

// ---------------------------------------------------------------------------

void urdf_link(std::string& out, const InstanceLink& l, const Layout& layout) {
  const auto& in = l.inertial;
  const Mat3& i = in.inertia;
  out += "  " + labels_comment(l) + "\n";
  out += "  <link name=" + q(layout.names.links.at(l.id)) + ">\n";
  out += "    <inertial>\n";
  out += "      <origin xyz=" + q(vec_text(in.com)) + " rpy=\"0 0 0\"/>\n";
  out += "      <mass value=" + q(real_text(in.mass)) + "/>\n";
  out += "      <inertia ixx=" + q(real_text(i(0, 0))) + " ixy=" + q(real_text(i(0, 1))) + " ixz=" +
         q(real_text(i(0, 2))) + " iyy=" + q(real_text(i(1, 1))) + " iyz=" + q(real_text(i(1, 2))) +
         " izz=" + q(real_text(i(2, 2))) + "/>\n";
  out += "    </inertial>\n";
  const auto mesh = layout.meshes.find(l.id);
  if (mesh != layout.meshes.end()) {
    out += "    <visual>\n";
    out += "      <origin xyz=\"0 0 0\" rpy=\"0 0 0\"/>\n";
    out += "      <geometry>\n        <mesh filename=" + q(mesh->second.first) + "/>\n      </geometry>\n";
    out += "    </visual>\n";
    if (!mesh->second.second.empty()) {
      out += "    <collision>\n";
      out += "      <origin xyz=\"0 0 0\" rpy=\"0 0 0\"/>\n";
      out += "      <geometry>\n        <mesh filename=" + q(mesh->second.second) + "/>\n      </geometry>\n";
      out += "    </collision>\n";
    }
  }
  out += "  </link>\n";
}

void urdf_joint(std::string& out, const InstanceJoint& j, const Layout& layout) {
  const bool fixed = detail::exported_fixed(j);
  const RigidTransform origin = detail::joint_origin(j);
  const char* type = fixed ? "fixed" : j.spec.type == JointType::kRevolute ? "revolute" : "prismatic";
  out += "  " + joint_comment(j) + "\n";
  out += "  <joint name=" + q(layout.names.joints.at(j.id)) + " type=" + q(type) + ">\n";
  out += "    <parent link=" + q(layout.names.links.at(j.parent)) + "/>\n";
  out += "    <child link=" + q(layout.names.links.at(j.child)) + "/>\n";
  out += "    <origin xyz=" + q(vec_text(origin.translation)) +
         " rpy=" + q(vec_text(detail::rotation_to_rpy(origin.rotation))) + "/>\n";
  if (!fixed) {
    out += "    <axis xyz=" + q(vec_text(j.spec.axis)) + "/>\n";
    out += "    <limit lower=" + q(real_text(j.spec.lower)) + " upper=" + q(real_text(j.spec.upper)) +
           " effort=\"100\" velocity=\"1\"/>\n";
  }
  out += "  </joint>\n";
}

std::string urdf_text(const AssetInstance& instance, const Layout& layout, const std::string& category) {
  std::string out = "<?xml version=\"1.0\"?>\n";
  out += "<robot name=" + q(category) + ">\n";
  out += "  <!-- " + comment_text("blueprint signature: " + instance.signature) + " -->\n";
  std::function<void(const std::string&)> visit = [&](const std::string& id) {
    urdf_link(out, *layout.links.at(id), layout);
    const auto it = layout.children.find(id);
    if (it == layout.children.end()) return;
    for (const InstanceJoint* j : it->second) {
      urdf_joint(out, *j, layout);
      visit(j->child);
    }
  };
  visit(instance.root);
  out += "</robot>\n";
  return out;
}

// ---------------------------------------------------------------------------

std::string quat_text(const Eigen::Quaterniond& r) {
  return real_text(r.w()) + " " + real_text(r.x()) + " " + real_text(r.y()) + " " + real_text(r.z());
}

void mjcf_body(std::string& out, const InstanceLink& l, const InstanceJoint* joint, const Layout& layout, int depth) {
  const std::string pad(2 * depth, ' ');
  out += pad + labels_comment(l) + "\n";
  if (joint != nullptr) out += pad + joint_comment(*joint) + "\n";
  out += pad + "<body name=" + q(layout.names.links.at(l.id));
  if (joint != nullptr) {
    const RigidTransform origin = detail::joint_origin(*joint);
    out += " pos=" + q(vec_text(origin.translation));
    if (origin.rotation.coeffs() != Eigen::Quaterniond::Identity().coeffs()) out += " quat=" + q(quat_text(origin.rotation));
  } else {
    out += " pos=\"0 0 0\"";
  }
  out += ">\n";
  const auto& in = l.inertial;
  const Mat3& i = in.inertia;
  out += pad + "  <inertial pos=" + q(vec_text(in.com)) + " mass=" + q(real_text(in.mass)) + " fullinertia=" +
         q(real_text(i(0, 0)) + " " + real_text(i(1, 1)) + " " + real_text(i(2, 2)) + " " + real_text(i(0, 1)) + " " +
           real_text(i(0, 2)) + " " + real_text(i(1, 2))) +
         "/>\n";
  if (joint != nullptr && !detail::exported_fixed(*joint)) {
    const char* type = joint->spec.type == JointType::kRevolute ? "hinge" : "slide";
    out += pad + "  <joint name=" + q(layout.names.joints.at(joint->id)) + " type=" + q(type) +
           " pos=\"0 0 0\" axis=" + q(vec_text(joint->spec.axis)) + " limited=\"true\" range=" +
           q(real_text(joint->spec.lower) + " " + real_text(joint->spec.upper)) + "/>\n";
  }
  const auto mesh = layout.meshes.find(l.id);
  if (mesh != layout.meshes.end()) {
    const std::string& stem = layout.names.files.at(l.id);
    out += pad + "  <geom name=" + q(stem + "_visual") + " type=\"mesh\" mesh=" + q(stem) +
           " contype=\"0\" conaffinity=\"0\" group=\"1\"/>\n";
    if (!mesh->second.second.empty()) {
      out += pad + "  <geom name=" + q(stem + "_collision") + " type=\"mesh\" mesh=" + q(stem + "_hull") +
             " group=\"3\"/>\n";
    }
  }
  const auto it = layout.children.find(l.id);
  if (it != layout.children.end()) {
    for (const InstanceJoint* j : it->second) mjcf_body(out, *layout.links.at(j->child), j, layout, depth + 1);
  }
  out += pad + "</body>\n";
}

std::string mjcf_text(const AssetInstance& instance, const Layout& layout, const std::string& category) {
  std::string out = "<?xml version=\"1.0\"?>\n";
  out += "<mujoco model=" + q(category) + ">\n";
  out += "  <!-- " + comment_text("blueprint signature: " + instance.signature) + " -->\n";
  out += "  <compiler angle=\"radian\" inertiafromgeom=\"false\"/>\n";
  out += "  <asset>\n";
  for (const auto& l : instance.links) {
    const auto mesh = layout.meshes.find(l.id);
    if (mesh == layout.meshes.end()) continue;
    const std::string& stem = layout.names.files.at(l.id);
    out += "    <mesh name=" + q(stem) + " file=" + q(mesh->second.first) + "/>\n";
    if (!mesh->second.second.empty()) out += "    <mesh name=" + q(stem + "_hull") + " file=" + q(mesh->second.second) + "/>\n";
  }
  out += "  </asset>\n";
  out += "  <worldbody>\n";
  mjcf_body(out, *layout.links.at(instance.root), nullptr, layout, 2);
  out += "  </worldbody>\n";
  out += "</mujoco>\n";
  return out;
}

}  // namespace

ExportBundle build_bundle(const AssetInstance& instance, ExportFormat format, const ExportContext& context) {
  const std::string category = context.category.empty() ? instance.name : context.category;
  const Layout layout = make_layout(instance, context);
  ExportBundle bundle;
  bundle.format = format;
  bundle.meshes = layout.meshes;
  bundle.document = format == ExportFormat::kUrdf ? urdf_text(instance, layout, category)
                                                   : mjcf_text(instance, layout, category);
  bundle.files[document_filename(format)] = bundle.document;
  for (const auto& l : instance.links) {
    const auto mesh = layout.meshes.find(l.id);
    if (mesh == layout.meshes.end()) continue;
    const std::string& stem = layout.names.files.at(l.id);
    bundle.files[mesh->second.first] = format_obj(l.mesh, stem);
    if (!mesh->second.second.empty()) bundle.files[mesh->second.second] = format_obj(l.hull, stem + "_hull");
  }
  bundle.files["manifest.json"] = manifest_text(make_manifest(instance, format, context));
  return bundle;
}

ParsedModel expected_model(const AssetInstance& instance, const ExportContext& context) {
  const Layout layout = make_layout(instance, context);
  ParsedModel model;
  model.name = context.category.empty() ? instance.name : context.category;
  model.root = layout.names.links.at(instance.root);
  for (const auto& l : instance.links) {
    ParsedLink p;
    p.name = layout.names.links.at(l.id);
    const auto mesh = layout.meshes.find(l.id);
    if (mesh != layout.meshes.end()) {
      p.visual = mesh->second.first;
      p.collision = mesh->second.second;
    }
    p.mass = l.inertial.mass;
    p.com = l.inertial.com;
    p.inertia = l.inertial.inertia;
    model.links.push_back(p);
  }
  for (const auto& j : instance.joints) {
    ParsedJoint p;
    p.name = layout.names.joints.at(j.id);
    const bool fixed = detail::exported_fixed(j);
    p.type = fixed ? "fixed" : j.spec.type == JointType::kRevolute ? "revolute" : "prismatic";
    p.parent = layout.names.links.at(j.parent);
    p.child = layout.names.links.at(j.child);
    p.origin = detail::joint_origin(j);
    p.axis = j.spec.axis;
    p.lower = j.spec.lower;
    p.upper = j.spec.upper;
    model.joints.push_back(p);
  }
  return model;
}

}  // namespace artigen
