// Copyright 2026 powdiv authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "powdiv/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "powdiv/bounds.hpp"

namespace powdiv {

const char kArtifactVersion[] = "powdiv 0.1.0";

namespace {

void flatten_json(const nlohmann::json& node, const std::string& prefix, ConfigDoc& doc) {
  if (node.is_object()) {
    for (const auto& [k, v] : node.items()) {
      flatten_json(v, prefix.empty() ? k : prefix + "." + k, doc);
    }
    return;
  }
  if (prefix.empty()) throw ConfigError("config: top level must be an object");
  if (node.is_string()) {
    doc.set(prefix, node.get<std::string>());
  } else if (node.is_boolean()) {
    doc.set(prefix, node.get<bool>());
  } else if (node.is_number_integer() || node.is_number_unsigned()) {
    doc.set(prefix, node.get<std::int64_t>());
  } else if (node.is_number_float()) {
    doc.set(prefix, node.get<double>());
  } else if (node.is_null()) {
    // ignored
  } else {
    throw ConfigError("config: unsupported value type at key '" + prefix + "'");
  }
}

}  // namespace

ConfigDoc ConfigDoc::from_json_text(const std::string& text) {
  nlohmann::json parsed;
  try {
    parsed = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config: JSON parse failure: ") + e.what());
  }
  if (!parsed.is_object()) throw ConfigError("config: top level must be an object");
  // A previously written report embeds its manifest; accept it directly so a
  // report file can be re-executed as-is.
  if (parsed.contains("manifest") && parsed["manifest"].is_object() &&
      parsed["manifest"].contains("config")) {
    parsed = parsed["manifest"]["config"];
  }
  ConfigDoc doc;
  flatten_json(parsed, "", doc);
  return doc;
}

ConfigDoc ConfigDoc::from_file(const std::string& path) {
  return from_json_text(read_file(path));
}

std::string ConfigDoc::get_string(const std::string& key) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) throw ConfigError("config: missing required key '" + key + "'");
  if (const auto* s = std::get_if<std::string>(&it->second)) return *s;
  throw ConfigError("config: key '" + key + "' must be a string");
}

std::string ConfigDoc::get_string(const std::string& key, const std::string& fallback) const {
  return has(key) ? get_string(key) : fallback;
}

double ConfigDoc::get_double(const std::string& key) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) throw ConfigError("config: missing required key '" + key + "'");
  if (const auto* d = std::get_if<double>(&it->second)) return *d;
  if (const auto* i = std::get_if<std::int64_t>(&it->second)) return static_cast<double>(*i);
  if (const auto* s = std::get_if<std::string>(&it->second)) {
    char* end = nullptr;
    const double v = std::strtod(s->c_str(), &end);
    if (end && *end == '\0' && !s->empty()) return v;
  }
  throw ConfigError("config: key '" + key + "' must be a number");
}

double ConfigDoc::get_double(const std::string& key, double fallback) const {
  return has(key) ? get_double(key) : fallback;
}

std::int64_t ConfigDoc::get_int(const std::string& key) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) throw ConfigError("config: missing required key '" + key + "'");
  if (const auto* i = std::get_if<std::int64_t>(&it->second)) return *i;
  if (const auto* d = std::get_if<double>(&it->second)) {
    if (*d == std::floor(*d) && std::abs(*d) < 9.2e18) return static_cast<std::int64_t>(*d);
  }
  if (const auto* s = std::get_if<std::string>(&it->second)) {
    char* end = nullptr;
    const long long v = std::strtoll(s->c_str(), &end, 10);
    if (end && *end == '\0' && !s->empty()) return v;
  }
  throw ConfigError("config: key '" + key + "' must be an integer");
}

std::int64_t ConfigDoc::get_int(const std::string& key, std::int64_t fallback) const {
  return has(key) ? get_int(key) : fallback;
}

bool ConfigDoc::get_bool(const std::string& key, bool fallback) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) return fallback;
  if (const auto* b = std::get_if<bool>(&it->second)) return *b;
  if (const auto* s = std::get_if<std::string>(&it->second)) return *s == "true" || *s == "1";
  if (const auto* i = std::get_if<std::int64_t>(&it->second)) return *i != 0;
  throw ConfigError("config: key '" + key + "' must be a boolean");
}

std::vector<double> load_probs_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open probability file '" + path + "'");
  std::vector<double> probs;
  std::string line;
  while (std::getline(in, line)) {
    std::size_t start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos || line[start] == '#') continue;
    try {
      probs.push_back(std::stod(line.substr(start)));
    } catch (const std::exception&) {
      throw ConfigError("config: bad probability line '" + line + "' in " + path);
    }
  }
  if (probs.empty()) throw ConfigError("config: probability file '" + path + "' is empty");
  return probs;
}

SchemeDescriptor scheme_from_config(const ConfigDoc& config) {
  const std::string kind = config.get_string("scheme.kind", "uniform");
  if (kind == "uniform") {
    return SchemeDescriptor::uniform(config.get_int("scheme.r"));
  }
  if (kind == "power") {
    return SchemeDescriptor::power(config.get_double("scheme.a"), config.get_int("scheme.r"));
  }
  if (kind == "explicit") {
    return SchemeDescriptor::explicit_probs(load_probs_file(config.get_string("scheme.file")));
  }
  throw ConfigError("config: scheme.kind must be uniform, power or explicit");
}

RunManifest RunManifest::make(const std::string& command, const ConfigDoc& config) {
  RunManifest m;
  m.command = command;
  m.config = config;
  m.version = kArtifactVersion;
  m.seed = static_cast<std::uint64_t>(config.get_int("seed", 0));

  std::time_t stamp = std::time(nullptr);
  if (const char* env = std::getenv("SOURCE_DATE_EPOCH")) {
    char* end = nullptr;
    const long long v = std::strtoll(env, &end, 10);
    if (end && *end == '\0') stamp = static_cast<std::time_t>(v);
  }
  std::tm tm_utc{};
  gmtime_r(&stamp, &tm_utc);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  m.created_utc = buf;
  return m;
}

// --- JSON writing ---

void JsonWriter::comma() {
  if (pending_key_) {
    pending_key_ = false;
    return;
  }
  if (!needs_comma_.empty()) {
    if (needs_comma_.back()) out_ += ',';
    needs_comma_.back() = true;
  }
}

void JsonWriter::begin_object() {
  comma();
  out_ += '{';
  needs_comma_.push_back(false);
}

void JsonWriter::end_object() {
  needs_comma_.pop_back();
  out_ += '}';
}

void JsonWriter::begin_array() {
  comma();
  out_ += '[';
  needs_comma_.push_back(false);
}

void JsonWriter::end_array() {
  needs_comma_.pop_back();
  out_ += ']';
}

void JsonWriter::key(const std::string& name) {
  comma();
  out_ += '"';
  out_ += escape(name);
  out_ += "\":";
  pending_key_ = true;
}

void JsonWriter::value(const std::string& v) {
  comma();
  out_ += '"';
  out_ += escape(v);
  out_ += '"';
}

void JsonWriter::value(double v) {
  comma();
  out_ += format_double(v);
}

void JsonWriter::value(std::int64_t v) {
  comma();
  out_ += std::to_string(v);
}

void JsonWriter::value(std::uint64_t v) {
  comma();
  out_ += std::to_string(v);
}

void JsonWriter::value(bool v) {
  comma();
  out_ += v ? "true" : "false";
}

void JsonWriter::raw(const std::string& fragment) {
  comma();
  out_ += fragment;
}

std::string JsonWriter::escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

std::string JsonWriter::format_double(double v) {
  if (std::isnan(v)) return "\"nan\"";
  if (std::isinf(v)) return v > 0 ? "\"inf\"" : "\"-inf\"";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void manifest_to_json(JsonWriter& w, const RunManifest& manifest) {
  w.begin_object();
  w.key("command");
  w.value(manifest.command);
  w.key("version");
  w.value(manifest.version);
  w.key("seed");
  w.value(manifest.seed);
  w.key("created_utc");
  w.value(manifest.created_utc);
  w.key("config");
  w.begin_object();
  for (const auto& [k, v] : manifest.config.entries()) {
    w.key(k);
    std::visit([&w](const auto& value) { w.value(value); }, v);
  }
  w.end_object();
  w.key("output_paths");
  w.begin_array();
  for (const auto& path : manifest.output_paths) w.value(path);
  w.end_array();
  w.end_object();
}

// --- Table rendering ---

const std::int64_t kTableRows[8] = {300, 500, 700, 1000, 3000, 5000, 7000, 10000};
const std::int64_t kTableCols[6] = {5, 10, 20, 30, 40, 50};

double round_half_even_4dp(double v) {
  // nearbyint under the default FE_TONEAREST mode rounds half to even
  return std::nearbyint(v * 1e4) / 1e4;
}

std::string format_table_cell(double v) {
  if (v > 1.0) return "—";  // em dash: bound not informative
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", round_half_even_4dp(v));
  return buf;
}

std::vector<std::vector<std::string>> uniform_bound_table_cells() {
  std::vector<std::vector<std::string>> cells;
  cells.reserve(8);
  for (std::int64_t r : kTableRows) {
    std::vector<std::string> row;
    row.reserve(6);
    for (std::int64_t n : kTableCols) row.push_back(format_table_cell(uniform_bound(n, r)));
    cells.push_back(std::move(row));
  }
  return cells;
}

std::string render_uniform_bound_table() {
  std::ostringstream out;
  out << "Poisson approximation bound, uniform allocation (4 d.p.; — means > 1)\n";
  out << "     r \\ n";
  for (std::int64_t n : kTableCols) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%9lld", static_cast<long long>(n));
    out << buf;
  }
  out << '\n';
  const auto cells = uniform_bound_table_cells();
  for (std::size_t i = 0; i < 8; ++i) {
    char head[16];
    std::snprintf(head, sizeof(head), "%10lld", static_cast<long long>(kTableRows[i]));
    out << head;
    for (const std::string& cell : cells[i]) {
      // the em dash is 3 bytes of UTF-8 but one display column
      const int pad = 9 - static_cast<int>(cell.size()) + (cell == "—" ? 2 : 0);
      out << std::string(static_cast<std::size_t>(pad > 0 ? pad : 1), ' ') << cell;
    }
    out << '\n';
  }
  return out.str();
}

// --- Counts / assignments / samples ---

std::string counts_to_csv(const Counts& counts) {
  std::string out = "cell,count\n";
  for (const auto& [cell, count] : counts.occupied()) {
    out += std::to_string(cell + 1);  // files are 1-based
    out += ',';
    out += std::to_string(count);
    out += '\n';
  }
  return out;
}

Counts counts_from_csv(const std::string& text, std::int64_t r) {
  std::vector<std::pair<std::int64_t, std::int64_t>> occupied;
  std::istringstream in(text);
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (first && line == "cell,count") {
      first = false;
      continue;
    }
    first = false;
    const std::size_t comma = line.find(',');
    if (comma == std::string::npos) throw ConfigError("counts: bad CSV line '" + line + "'");
    const std::int64_t cell = std::stoll(line.substr(0, comma));
    const std::int64_t count = std::stoll(line.substr(comma + 1));
    if (cell < 1 || cell > r) throw ConfigError("counts: cell index out of range in CSV");
    occupied.emplace_back(cell - 1, count);
  }
  return Counts::from_sparse(std::move(occupied), r);
}

std::vector<std::int64_t> assignments_from_text(const std::string& text, std::int64_t r) {
  std::vector<std::int64_t> cells;
  std::istringstream in(text);
  std::int64_t v;
  while (in >> v) {
    if (v < 1 || v > r) throw ConfigError("assignments: index out of range");
    cells.push_back(v - 1);
  }
  return cells;
}

std::string assignments_to_text(std::span<const std::int64_t> cells) {
  std::string out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(cells[i] + 1);
  }
  out += '\n';
  return out;
}

std::string samples_to_text(std::span<const double> samples) {
  std::string out;
  out.reserve(samples.size() * 20);
  char buf[40];
  for (double v : samples) {
    std::snprintf(buf, sizeof(buf), "%.17g\n", v);
    out += buf;
  }
  return out;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("io: cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw ConfigError("io: write failed for '" + path + "'");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("io: cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace powdiv
