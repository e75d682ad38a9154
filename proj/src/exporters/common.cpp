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

#include <cmath>
#include <fstream>
#include <set>

#include "artigen/error.hpp"
#include "exporters/internal.hpp"

#ifndef ARTIGEN_VERSION
#define ARTIGEN_VERSION "0.0.0"
#endif

namespace artigen {

namespace detail {

std::string xml_escape(std::string_view text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string comment_text(std::string_view text) {
  std::string out(text);
  for (std::size_t at = out.find("--"); at != std::string::npos; at = out.find("--")) out.replace(at, 2, "- -");
  return out;
}

std::string real_text(double value) { return format_real(value); }

std::string vec_text(const Vec3& v) { return real_text(v.x()) + " " + real_text(v.y()) + " " + real_text(v.z()); }

Vec3 rotation_to_rpy(const Eigen::Quaterniond& q) {
  const Mat3 r = q.normalized().toRotationMatrix();
  const double pitch = std::asin(std::clamp(-r(2, 0), -1.0, 1.0));
  double roll = 0.0;
  double yaw = 0.0;
  if (std::abs(std::cos(pitch)) > 1e-12) {
    roll = std::atan2(r(2, 1), r(2, 2));
    yaw = std::atan2(r(1, 0), r(0, 0));
  } else {
    yaw = std::atan2(-r(0, 1), r(1, 1));
  }
  return Vec3(roll, pitch, yaw);
}

Eigen::Quaterniond rpy_to_rotation(const Vec3& rpy) {
  return Eigen::Quaterniond(Eigen::AngleAxisd(rpy.z(), Vec3::UnitZ()) * Eigen::AngleAxisd(rpy.y(), Vec3::UnitY()) *
                            Eigen::AngleAxisd(rpy.x(), Vec3::UnitX()))
      .normalized();
}

bool exported_fixed(const InstanceJoint& joint) { return joint.spec.fixed(); }

RigidTransform joint_origin(const InstanceJoint& joint) {
  const RigidTransform at_pivot = RigidTransform::from_translation(joint.spec.pivot);
  if (!exported_fixed(joint)) return at_pivot;
  return at_pivot * joint.spec.motion(joint.spec.lower, Vec3::Zero());
}

}  // namespace detail

std::string artigen_version() { return ARTIGEN_VERSION; }

std::string_view to_string(ExportFormat format) { return format == ExportFormat::kUrdf ? "urdf" : "mjcf"; }

ExportFormat export_format_from_string(std::string_view text) {
  if (text == "urdf") return ExportFormat::kUrdf;
  if (text == "mjcf") return ExportFormat::kMjcf;
  fail(ErrorCode::kInvalidParameter, "unknown export format '" + std::string(text) + "'");
}

std::string document_filename(ExportFormat format) {
  return format == ExportFormat::kUrdf ? "model.urdf" : "model.xml";
}

namespace {

std::string sanitize_label(const std::string& label, const char* fallback) {
  if (label.empty()) return fallback;
  std::string out;
  for (char c : label) out += (c == '/' || c == ' ' || static_cast<unsigned char>(c) < 32) ? '_' : c;
  return out;
}

std::string file_stem(const std::string& name) {
  std::string out;
  for (char c : name) {
    const bool ok = std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.';
    out += ok ? c : '_';
  }
  return out;
}

}  // namespace

ExportNames export_names(const AssetInstance& instance, const ExportContext& context) {
  const std::string category = context.category.empty() ? instance.name : context.category;
  ExportNames names;
  std::map<std::string, int> link_counter;
  std::set<std::string> stems;
  for (const auto& l : instance.links) {
    const std::string label = sanitize_label(l.label, "link");
    const std::string name = category + "/" + label + "/" + std::to_string(link_counter[label]++);
    names.links[l.id] = name;
    const std::string stem = file_stem(name);
    if (!stems.insert(stem).second) fail(ErrorCode::kStructural, "mesh file name collision for " + name);
    names.files[l.id] = stem;
  }
  std::map<std::string, int> joint_counter;
  std::map<std::string, const InstanceJoint*> by_child;
  for (const auto& j : instance.joints) by_child[j.child] = &j;
  for (const auto& l : instance.links) {
    const auto it = by_child.find(l.id);
    if (it == by_child.end()) continue;
    const std::string label = sanitize_label(it->second->spec.labels.joint, "joint");
    names.joints[it->second->id] = category + "/" + label + "/" + std::to_string(joint_counter[label]++);
  }
  return names;
}

void write_bundle(const ExportBundle& bundle, const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir / "meshes", ec);
  if (ec) fail(ErrorCode::kIo, "cannot create " + (out_dir / "meshes").string() + ": " + ec.message());
  for (const auto& [relative, contents] : bundle.files) {
    const auto path = out_dir / relative;
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorCode::kIo, "cannot write " + path.string());
    out << contents;
    out.close();
    if (!out) fail(ErrorCode::kIo, "failed writing " + path.string());
  }
}

ExportBundle export_urdf(const AssetInstance& instance, const std::filesystem::path& out_dir,
                         const ExportContext& context) {
  ExportBundle bundle = build_bundle(instance, ExportFormat::kUrdf, context);
  bundle.root = out_dir;
  write_bundle(bundle, out_dir);
  return bundle;
}

ExportBundle export_mjcf(const AssetInstance& instance, const std::filesystem::path& out_dir,
                         const ExportContext& context) {
  ExportBundle bundle = build_bundle(instance, ExportFormat::kMjcf, context);
  bundle.root = out_dir;
  write_bundle(bundle, out_dir);
  return bundle;
}

const ParsedLink* ParsedModel::find_link(const std::string& name) const {
  for (const auto& l : links) {
    if (l.name == name) return &l;
  }
  return nullptr;
}

const ParsedJoint* ParsedModel::find_joint(const std::string& name) const {
  for (const auto& j : joints) {
    if (j.name == name) return &j;
  }
  return nullptr;
}

}  // namespace artigen
