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

#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include "artigen/error.hpp"
#include "exporters/internal.hpp"

namespace artigen {
namespace {

namespace pt = boost::property_tree;

pt::ptree read_document(const std::string& text) {
  pt::ptree tree;
  std::istringstream in(text);
  try {
    pt::read_xml(in, tree, pt::xml_parser::trim_whitespace);
  } catch (const pt::xml_parser_error& e) {
    throw ParseError("malformed XML: " + e.message(), e.line(), 1);
  }
  return tree;
}

std::string attr(const pt::ptree& node, const std::string& name, const std::string& fallback = "") {
  return node.get<std::string>("<xmlattr>." + name, fallback);
}

std::vector<double> numbers(const std::string& text, std::size_t expected, const std::string& what) {
  std::istringstream in(text);
  std::vector<double> out;
  std::string token;
  while (in >> token) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(token, &used));
      if (used != token.size()) throw std::invalid_argument(token);
    } catch (const std::exception&) {
      throw ParseError("bad number '" + token + "' in " + what, 1, 1);
    }
  }
  if (out.size() != expected) {
    throw ParseError(what + " needs " + std::to_string(expected) + " numbers, got '" + text + "'", 1, 1);
  }
  return out;
}

Vec3 vec(const std::string& text, const std::string& what) {
  const auto v = numbers(text, 3, what);
  return Vec3(v[0], v[1], v[2]);
}

double number(const std::string& text, const std::string& what) { return numbers(text, 1, what)[0]; }

bool is_meta(const std::string& key) { return key == "<xmlattr>" || key == "<xmlcomment>"; }

// Checks uniqueness and tree shape, then fills in the root.
void finish_model(ParsedModel& model) {
  std::set<std::string> names;
  for (const auto& l : model.links) {
    if (!names.insert(l.name).second) fail(ErrorCode::kStructural, "duplicate link name " + l.name);
  }
  std::set<std::string> joint_names;
  std::map<std::string, std::string> parent_of;
  for (const auto& j : model.joints) {
    if (!j.name.empty() && !joint_names.insert(j.name).second) {
      fail(ErrorCode::kStructural, "duplicate joint name " + j.name);
    }
    if (!names.count(j.parent) || !names.count(j.child)) {
      fail(ErrorCode::kStructural, "joint " + j.name + " references a missing link");
    }
    if (!parent_of.emplace(j.child, j.parent).second) {
      fail(ErrorCode::kStructural, "link " + j.child + " has two parent joints");
    }
  }
  std::vector<std::string> roots;
  for (const auto& l : model.links) {
    if (!parent_of.count(l.name)) roots.push_back(l.name);
  }
  if (roots.size() != 1) {
    fail(ErrorCode::kStructural, "joint structure has " + std::to_string(roots.size()) + " roots, expected one");
  }
  model.root = roots.front();
  // With one root and one parent per link, a cycle leaves some link unreachable.
  for (const auto& l : model.links) {
    std::string at = l.name;
    std::size_t steps = 0;
    while (at != model.root) {
      at = parent_of.at(at);
      if (++steps > model.links.size()) fail(ErrorCode::kStructural, "kinematic cycle through link " + l.name);
    }
  }
}

}  // namespace

ParsedModel parse_urdf_text(const std::string& text) {
  const pt::ptree doc = read_document(text);
  const auto robot = doc.get_child_optional("robot");
  if (!robot) throw ParseError("document has no <robot> element", 1, 1);
  ParsedModel model;
  model.name = attr(*robot, "name");
  for (const auto& [key, node] : *robot) {
    if (is_meta(key)) continue;
    if (key == "link") {
      ParsedLink l;
      l.name = attr(node, "name");
      if (l.name.empty()) throw ParseError("link without a name", 1, 1);
      if (const auto in = node.get_child_optional("inertial")) {
        l.mass = number(in->get<std::string>("mass.<xmlattr>.value", "0"), "mass");
        l.com = vec(in->get<std::string>("origin.<xmlattr>.xyz", "0 0 0"), "inertial origin");
        const auto& i = in->get_child("inertia.<xmlattr>", pt::ptree());
        auto get = [&](const char* k) { return number(i.get<std::string>(k, "0"), std::string("inertia ") + k); };
        l.inertia << get("ixx"), get("ixy"), get("ixz"), get("ixy"), get("iyy"), get("iyz"), get("ixz"), get("iyz"),
            get("izz");
      }
      l.visual = node.get<std::string>("visual.geometry.mesh.<xmlattr>.filename", "");
      l.collision = node.get<std::string>("collision.geometry.mesh.<xmlattr>.filename", "");
      model.links.push_back(l);
    } else if (key == "joint") {
      ParsedJoint j;
      j.name = attr(node, "name");
      j.type = attr(node, "type");
      if (j.type != "revolute" && j.type != "prismatic" && j.type != "fixed" && j.type != "continuous") {
        throw ParseError("unsupported joint type '" + j.type + "'", 1, 1);
      }
      j.parent = node.get<std::string>("parent.<xmlattr>.link", "");
      j.child = node.get<std::string>("child.<xmlattr>.link", "");
      j.origin.translation = vec(node.get<std::string>("origin.<xmlattr>.xyz", "0 0 0"), "joint origin");
      j.origin.rotation = detail::rpy_to_rotation(vec(node.get<std::string>("origin.<xmlattr>.rpy", "0 0 0"), "rpy"));
      j.axis = vec(node.get<std::string>("axis.<xmlattr>.xyz", "1 0 0"), "axis");
      j.lower = number(node.get<std::string>("limit.<xmlattr>.lower", "0"), "limit");
      j.upper = number(node.get<std::string>("limit.<xmlattr>.upper", "0"), "limit");
      model.joints.push_back(j);
    } else {
      model.warnings.push_back("ignored element <" + key + ">");
    }
  }
  finish_model(model);
  return model;
}

ParsedModel parse_mjcf_text(const std::string& text) {
  const pt::ptree doc = read_document(text);
  const auto root = doc.get_child_optional("mujoco");
  if (!root) throw ParseError("document has no <mujoco> element", 1, 1);
  ParsedModel model;
  model.name = attr(*root, "model");
  std::map<std::string, std::string> mesh_files;
  for (const auto& [key, node] : *root) {
    if (key == "asset") {
      for (const auto& [k, m] : node) {
        if (k == "mesh") mesh_files[attr(m, "name")] = attr(m, "file");
      }
    } else if (!is_meta(key) && key != "worldbody" && key != "compiler") {
      model.warnings.push_back("ignored element <" + key + ">");
    }
  }
  const auto world = root->get_child_optional("worldbody");
  if (!world) throw ParseError("document has no <worldbody>", 1, 1);

  std::function<void(const pt::ptree&, const std::string&)> body = [&](const pt::ptree& node,
                                                                       const std::string& parent) {
    ParsedLink l;
    l.name = attr(node, "name");
    if (l.name.empty()) throw ParseError("body without a name", 1, 1);
    RigidTransform origin;
    origin.translation = vec(attr(node, "pos", "0 0 0"), "body pos");
    const auto qv = numbers(attr(node, "quat", "1 0 0 0"), 4, "body quat");
    origin.rotation = Eigen::Quaterniond(qv[0], qv[1], qv[2], qv[3]).normalized();
    std::vector<const pt::ptree*> joints;
    for (const auto& [key, child] : node) {
      if (key == "inertial") {
        l.mass = number(attr(child, "mass", "0"), "mass");
        l.com = vec(attr(child, "pos", "0 0 0"), "inertial pos");
        const auto f = numbers(attr(child, "fullinertia", "0 0 0 0 0 0"), 6, "fullinertia");
        l.inertia << f[0], f[3], f[4], f[3], f[1], f[5], f[4], f[5], f[2];
      } else if (key == "geom") {
        const std::string file = mesh_files.count(attr(child, "mesh")) ? mesh_files.at(attr(child, "mesh")) : "";
        if (attr(child, "group") == "1") {
          l.visual = file;
        } else if (attr(child, "group") == "3") {
          l.collision = file;
        }
      } else if (key == "joint") {
        joints.push_back(&child);
      } else if (key != "body" && !is_meta(key)) {
        model.warnings.push_back("ignored element <" + key + "> in body " + l.name);
      }
    }
    if (!parent.empty()) {
      ParsedJoint j;
      j.parent = parent;
      j.child = l.name;
      j.origin = origin;
      if (joints.size() > 1) throw ParseError("body " + l.name + " has more than one joint", 1, 1);
      if (joints.empty()) {
        j.type = "fixed";
      } else {
        const pt::ptree& jn = *joints.front();
        j.name = attr(jn, "name");
        const std::string type = attr(jn, "type", "hinge");
        if (type == "hinge") {
          j.type = "revolute";
        } else if (type == "slide") {
          j.type = "prismatic";
        } else {
          throw ParseError("unsupported joint type '" + type + "'", 1, 1);
        }
        if (vec(attr(jn, "pos", "0 0 0"), "joint pos").norm() != 0.0) {
          model.warnings.push_back("joint " + j.name + " has a non-zero pos");
        }
        j.axis = vec(attr(jn, "axis", "0 0 1"), "joint axis");
        const auto range = numbers(attr(jn, "range", "0 0"), 2, "joint range");
        j.lower = range[0];
        j.upper = range[1];
      }
      model.joints.push_back(j);
    } else if (!joints.empty()) {
      model.warnings.push_back("root body " + l.name + " carries a joint");
    }
    model.links.push_back(l);
    for (const auto& [key, child] : node) {
      if (key == "body") body(child, l.name);
    }
  };
  for (const auto& [key, node] : *world) {
    if (key == "body") body(node, "");
  }
  finish_model(model);
  return model;
}

namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::kIo, "cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

ParsedModel parse_urdf(const std::filesystem::path& path) { return parse_urdf_text(read_file(path)); }
ParsedModel parse_mjcf(const std::filesystem::path& path) { return parse_mjcf_text(read_file(path)); }

ParsedModel parse_model_text(const std::string& text, ExportFormat format) {
  return format == ExportFormat::kUrdf ? parse_urdf_text(text) : parse_mjcf_text(text);
}

std::vector<std::string> compare_models(const ParsedModel& expected, const ParsedModel& parsed,
                                        const RoundTripTolerance& tol) {
  std::vector<std::string> out;
  auto near = [](double a, double b, double t) { return std::abs(a - b) <= t; };
  if (expected.root != parsed.root) out.push_back("root " + parsed.root + " != " + expected.root);
  if (expected.links.size() != parsed.links.size()) {
    out.push_back("link count " + std::to_string(parsed.links.size()) + " != " + std::to_string(expected.links.size()));
  }
  if (expected.joints.size() != parsed.joints.size()) {
    out.push_back("joint count " + std::to_string(parsed.joints.size()) + " != " +
                  std::to_string(expected.joints.size()));
  }
  for (const auto& e : expected.links) {
    const ParsedLink* p = parsed.find_link(e.name);
    if (p == nullptr) {
      out.push_back("missing link " + e.name);
      continue;
    }
    if (p->visual != e.visual || p->collision != e.collision) out.push_back("mesh paths differ for " + e.name);
    if (!near(p->mass, e.mass, tol.mass_relative * std::abs(e.mass))) out.push_back("mass differs for " + e.name);
  }
  std::map<std::string, const ParsedJoint*> by_child;
  for (const auto& j : parsed.joints) by_child[j.child] = &j;
  for (const auto& e : expected.joints) {
    const auto it = by_child.find(e.child);
    if (it == by_child.end()) {
      out.push_back("no joint into " + e.child);
      continue;
    }
    const ParsedJoint& p = *it->second;
    const std::string where = "joint into " + e.child;
    if (p.parent != e.parent) out.push_back(where + ": parent " + p.parent + " != " + e.parent);
    if (p.type != e.type) out.push_back(where + ": type " + p.type + " != " + e.type);
    if (!p.name.empty() && p.name != e.name) out.push_back(where + ": name " + p.name + " != " + e.name);
    if ((p.origin.translation - e.origin.translation).norm() > tol.origin) out.push_back(where + ": origin differs");
    if ((p.origin.matrix() - e.origin.matrix()).norm() > tol.origin) out.push_back(where + ": orientation differs");
    if (e.type != "fixed") {
      if ((p.axis.normalized() - e.axis.normalized()).norm() > tol.axis) out.push_back(where + ": axis differs");
      if (!near(p.lower, e.lower, tol.limit) || !near(p.upper, e.upper, tol.limit)) {
        out.push_back(where + ": limits differ");
      }
    }
  }
  return out;
}

}  // namespace artigen
