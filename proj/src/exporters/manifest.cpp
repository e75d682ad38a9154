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

#include <json.hpp>

#include "artigen/error.hpp"
#include "exporters/internal.hpp"

namespace artigen {

std::string manifest_text(const Manifest& m) {
  nlohmann::json doc = nlohmann::json::object();
  doc["schema"] = m.schema;
  doc["category"] = m.category;
  doc["seed"] = m.seed;
  doc["params"] = m.params;
  doc["version"] = m.version;
  doc["format"] = m.format;
  doc["formats"] = m.formats;
  doc["signature"] = m.signature;
  if (!m.ranges.empty()) {
    nlohmann::json ranges = nlohmann::json::object();
    for (const auto& [name, range] : m.ranges) ranges[name] = {range.first, range.second};
    doc["ranges"] = ranges;
  }
  return doc.dump(2) + "\n";
}

Manifest parse_manifest(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError("malformed manifest", line, column);
  }
  Manifest m;
  try {
    m.schema = doc.at("schema").get<int>();
    m.category = doc.at("category").get<std::string>();
    m.seed = doc.at("seed").get<std::uint64_t>();
    m.params = doc.at("params").get<std::map<std::string, double>>();
    m.version = doc.value("version", "");
    m.format = doc.value("format", "urdf");
    m.formats = doc.value("formats", std::vector<std::string>{});
    m.signature = doc.value("signature", "");
    if (doc.contains("ranges")) {
      for (const auto& [name, range] : doc.at("ranges").items()) {
        m.ranges[name] = {range.at(0).get<double>(), range.at(1).get<double>()};
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("manifest field error: ") + e.what(), 1, 1);
  }
  if (m.schema != 1) fail(ErrorCode::kSchemaVersion, "unsupported manifest schema " + std::to_string(m.schema));
  return m;
}

Manifest make_manifest(const AssetInstance& instance, ExportFormat format, const ExportContext& context) {
  Manifest m;
  m.category = context.category.empty() ? instance.name : context.category;
  m.seed = context.seed;
  m.params = instance.params.values;
  m.version = artigen_version();
  m.format = std::string(to_string(format));
  m.formats = {"urdf", "mjcf"};
  m.signature = instance.signature;
  m.ranges = context.ranges;
  return m;
}

std::filesystem::path write_manifest(const AssetInstance& instance, const std::filesystem::path& out_dir,
                                     ExportFormat format, const ExportContext& context) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  const auto path = out_dir / "manifest.json";
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorCode::kIo, "cannot write " + path.string());
  out << manifest_text(make_manifest(instance, format, context));
  if (!out) fail(ErrorCode::kIo, "failed writing " + path.string());
  return path;
}

}  // namespace artigen
