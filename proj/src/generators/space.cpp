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
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <json.hpp>
#include <random>

#include "artigen/error.hpp"
#include "artigen/generators.hpp"
#include "common/hash.hpp"

namespace artigen {

namespace detail {
const char* embedded_parameter_ranges();
}

namespace {

using nlohmann::json;

[[noreturn]] void bad_document(const std::string& what) { throw ParseError(what, 0, 0); }

json parse_json(const std::string& text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // byte offset only; recover the line and column from the text
    std::size_t line = 1, col = 1;
    const std::size_t stop = std::min<std::size_t>(e.byte, text.size());
    for (std::size_t i = 0; i + 1 < stop; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(std::string(what) + ": " + e.what(), line, col);
  }
}

double number_field(const json& obj, const char* key, const std::string& where) {
  const auto it = obj.find(key);
  if (it == obj.end() || !it->is_number()) bad_document(where + ": missing number '" + key + "'");
  return it->get<double>();
}

ParameterEntry parse_entry(const json& p, const std::string& category) {
  if (!p.is_object() || !p.contains("name") || !p["name"].is_string() || !p.contains("type")) {
    bad_document(category + ": parameter needs a name and a type");
  }
  ParameterEntry entry;
  entry.name = p["name"].get<std::string>();
  const std::string where = category + "." + entry.name;
  const std::string type = p["type"].is_string() ? p["type"].get<std::string>() : "";
  if (type == "continuous") {
    ContinuousRange r;
    r.lo = number_field(p, "lo", where);
    r.hi = number_field(p, "hi", where);
    r.units = p.value("units", std::string("m"));
    if (!(r.lo < r.hi)) fail(ErrorCode::kInvalidParameter, where + ": lo must be below hi");
    entry.domain = r;
  } else if (type == "discrete") {
    DiscreteChoice d;
    if (!p.contains("labels") || !p["labels"].is_array()) bad_document(where + ": missing labels");
    for (const auto& l : p["labels"]) {
      if (!l.is_string()) bad_document(where + ": labels must be strings");
      d.labels.push_back(l.get<std::string>());
    }
    if (d.labels.size() < 2) fail(ErrorCode::kInvalidParameter, where + ": needs at least two labels");
    entry.domain = d;
  } else if (type == "count") {
    CountRange c;
    c.min = static_cast<int>(number_field(p, "min", where));
    c.max = static_cast<int>(number_field(p, "max", where));
    if (c.min > c.max || c.min < 0) fail(ErrorCode::kInvalidParameter, where + ": bad count range");
    entry.domain = c;
  } else {
    bad_document(where + ": unknown parameter type '" + type + "'");
  }
  return entry;
}

double unit_draw(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::uint64_t stream_seed(std::uint64_t seed, const std::string& name, std::uint64_t salt) {
  return detail::splitmix64(detail::splitmix64(seed ^ salt) ^ detail::fnv1a64(name));
}

}  // namespace

const char* parameter_ranges_json() { return detail::embedded_parameter_ranges(); }

std::map<std::string, ParameterSpace> parse_parameter_ranges(const std::string& text) {
  const json doc = parse_json(text, "parameter table");
  if (!doc.is_object()) bad_document("parameter table must be an object");
  if (!doc.contains("schema") || !doc["schema"].is_number_integer()) bad_document("parameter table has no schema");
  if (doc["schema"].get<int>() != 1) {
    fail(ErrorCode::kSchemaVersion, "unsupported parameter table schema " + doc["schema"].dump());
  }
  if (!doc.contains("categories") || !doc["categories"].is_object()) bad_document("parameter table has no categories");
  std::map<std::string, ParameterSpace> out;
  for (const auto& [category, body] : doc["categories"].items()) {
    if (!body.is_object() || !body.contains("parameters") || !body["parameters"].is_array()) {
      bad_document(category + ": missing parameter list");
    }
    ParameterSpace space;
    for (const auto& p : body["parameters"]) {
      ParameterEntry entry = parse_entry(p, category);
      if (space.contains(entry.name)) fail(ErrorCode::kInvalidParameter, category + ": duplicate " + entry.name);
      space.add(std::move(entry));
    }
    out.emplace(category, std::move(space));
  }
  return out;
}

std::string normalize_parameter_name(const std::string& name) {
  std::string out;
  bool pending = false;
  for (unsigned char c : name) {
    if (std::isalnum(c)) {
      if (pending && !out.empty()) out += '_';
      pending = false;
      out += static_cast<char>(std::tolower(c));
    } else {
      pending = true;
    }
  }
  return out;
}

VariationCount count_variations(const ParameterSpace& space) {
  VariationCount v;
  v.discrete_combinations = 1;
  for (const auto& e : space.entries()) {
    if (e.is_continuous()) {
      ++v.continuous_dims;
    } else {
      v.discrete_combinations *= BigInt(e.cardinality());
    }
  }
  v.assets_at_3_values = v.discrete_combinations * boost::multiprecision::pow(BigInt(3), v.continuous_dims);
  return v;
}

VariationCount count_variations(const CategoryGenerator& generator) { return count_variations(generator.space); }

std::string to_decimal(const BigInt& value) { return value.str(); }

SamplingOverrides parse_overrides(const std::string& text) {
  const json doc = parse_json(text, "overrides");
  if (!doc.is_object() || !doc.contains("parameters") || !doc["parameters"].is_object()) {
    bad_document("overrides need a 'parameters' object");
  }
  SamplingOverrides out;
  for (const auto& [name, body] : doc["parameters"].items()) {
    if (!body.is_object()) bad_document("override '" + name + "' must be an object");
    const std::string kind = body.value("distribution", std::string("uniform"));
    Distribution d;
    if (kind == "uniform") {
      d.kind = Distribution::Kind::kUniform;
      d.lo = number_field(body, "lo", name);
      d.hi = number_field(body, "hi", name);
    } else if (kind == "normal") {
      d.kind = Distribution::Kind::kNormal;
      d.mean = number_field(body, "mean", name);
      d.stddev = number_field(body, "stddev", name);
      d.lo = body.contains("lo") ? number_field(body, "lo", name) : -INFINITY;
      d.hi = body.contains("hi") ? number_field(body, "hi", name) : INFINITY;
    } else if (kind == "fixed") {
      d.kind = Distribution::Kind::kFixed;
      d.value = number_field(body, "value", name);
    } else {
      bad_document("override '" + name + "': unknown distribution '" + kind + "'");
    }
    out[normalize_parameter_name(name)] = d;
  }
  return out;
}

ParameterSpace apply_overrides(const ParameterSpace& space, const SamplingOverrides& overrides) {
  ParameterSpace out = space;
  for (const auto& [name, d] : overrides) {
    if (!out.contains(name)) fail(ErrorCode::kMissingParameter, "override names unknown parameter '" + name + "'");
    ParameterEntry& entry = out.at(name);
    double lo = d.lo, hi = d.hi;
    if (d.kind == Distribution::Kind::kFixed) lo = hi = d.value;
    if (d.kind == Distribution::Kind::kNormal) {
      if (!(d.stddev >= 0.0)) fail(ErrorCode::kInvalidParameter, name + ": negative stddev");
      if (!std::isfinite(lo)) lo = std::min(d.mean, entry.interval().first);
      if (!std::isfinite(hi)) hi = std::max(d.mean, entry.interval().second);
    }
    if (!std::isfinite(lo) || !std::isfinite(hi) || lo > hi) {
      fail(ErrorCode::kInvalidParameter, name + ": inconsistent override bounds");
    }
    if (auto* r = std::get_if<ContinuousRange>(&entry.domain)) {
      r->lo = std::min(r->lo, lo);
      r->hi = std::max(r->hi, hi);
      continue;
    }
    // Choice domains cannot grow: the generator has no geometry for new values.
    const auto [elo, ehi] = entry.interval();
    if (lo < elo || hi > ehi || lo != std::floor(lo) || hi != std::floor(hi)) {
      fail(ErrorCode::kInvalidParameter, name + ": override outside the choice domain");
    }
  }
  return out;
}

std::uint64_t seed_salt_from_env() {
  const char* raw = std::getenv("ARTIGEN_SEED_SALT");
  if (raw == nullptr || *raw == '\0') return 0;
  const std::string text(raw);
  std::uint64_t value = 0;
  const bool hex = text.size() > 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X');
  const char* first = text.data() + (hex ? 2 : 0);
  const char* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value, hex ? 16 : 10);
  if (ec == std::errc() && ptr == last) return value;
  return detail::fnv1a64(text);
}

ParamVector sample_parameters(const ParameterSpace& space, std::uint64_t seed, const SamplingOverrides& overrides,
                              std::uint64_t salt) {
  ParamVector out;
  out.seed = seed;
  for (const auto& entry : space.entries()) {
    std::mt19937_64 rng(stream_seed(seed, entry.name, salt));
    auto [lo, hi] = entry.interval();
    const auto ov = overrides.find(entry.name);
    double value = 0.0;
    if (ov != overrides.end() && ov->second.kind == Distribution::Kind::kFixed) {
      value = ov->second.value;
    } else if (ov != overrides.end() && ov->second.kind == Distribution::Kind::kNormal) {
      const Distribution& d = ov->second;
      const double u1 = 1.0 - unit_draw(rng);
      const double u2 = unit_draw(rng);
      value = d.mean + d.stddev * std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
      value = std::clamp(value, std::max(lo, d.lo), std::min(hi, d.hi));
      if (!entry.is_continuous()) value = std::clamp(std::round(value), lo, hi);
    } else {
      if (ov != overrides.end()) {
        lo = ov->second.lo;
        hi = ov->second.hi;
      }
      const double u = unit_draw(rng);
      if (entry.is_continuous()) {
        value = lo + u * (hi - lo);
      } else {
        const double n = hi - lo + 1.0;
        value = lo + std::min(std::floor(u * n), n - 1.0);
      }
    }
    out.set(entry.name, value);
  }
  return out;
}

}  // namespace artigen
