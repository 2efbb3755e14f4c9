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

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "powdiv/scheme.hpp"
#include "powdiv/statistic.hpp"

namespace powdiv {

// Usage / config problems map to exit code 2.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Flat key-value configuration document (JSON-compatible). Nested JSON
// objects flatten to dotted keys, so {"scheme": {"kind": "uniform"}} and
// {"scheme.kind": "uniform"} are the same document. CLI flags override
// file values by setting keys on top.
class ConfigDoc {
 public:
  using Value = std::variant<std::string, double, std::int64_t, bool>;

  static ConfigDoc from_file(const std::string& path);
  static ConfigDoc from_json_text(const std::string& text);

  void set(const std::string& key, Value value) { entries_[key] = std::move(value); }
  bool has(const std::string& key) const { return entries_.count(key) != 0; }

  std::string get_string(const std::string& key) const;
  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key) const;
  double get_double(const std::string& key, double fallback) const;
  std::int64_t get_int(const std::string& key) const;
  std::int64_t get_int(const std::string& key, std::int64_t fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;

  const std::map<std::string, Value>& entries() const { return entries_; }

 private:
  std::map<std::string, Value> entries_;
};

// Builds the scheme descriptor from scheme.kind / scheme.r / scheme.a /
// scheme.file keys. explicit schemes load one probability per line.
SchemeDescriptor scheme_from_config(const ConfigDoc& config);
std::vector<double> load_probs_file(const std::string& path);

// Everything needed to reproduce a report from the file alone.
struct RunManifest {
  std::string command;
  ConfigDoc config;  // fully resolved
  std::string version;
  std::uint64_t seed = 0;
  std::string created_utc;  // ISO 8601; honors SOURCE_DATE_EPOCH
  std::vector<std::string> output_paths;

  static RunManifest make(const std::string& command, const ConfigDoc& config);
};

extern const char kArtifactVersion[];

// Minimal JSON writer. Doubles are emitted with 17 significant digits so
// values round-trip exactly; non-finite values are emitted as strings.
class JsonWriter {
 public:
  std::string take() { return std::move(out_); }

  void begin_object();
  void end_object();
  void begin_array();
  void end_array();
  void key(const std::string& name);
  void value(const std::string& v);
  void value(const char* v) { value(std::string(v)); }
  void value(double v);
  void value(std::int64_t v);
  void value(std::uint64_t v);
  void value(bool v);
  void raw(const std::string& fragment);

  static std::string escape(const std::string& s);
  static std::string format_double(double v);

 private:
  void comma();
  std::string out_;
  std::vector<bool> needs_comma_;
  bool pending_key_ = false;
};

void manifest_to_json(JsonWriter& w, const RunManifest& manifest);

// Table of the uniform-allocation bound over the standard grid
// r in {300,...,10000} x n in {5,...,50}. Values are rounded half-even to
// 4 d.p.; a bound whose unrounded value exceeds 1 renders as an em dash.
extern const std::int64_t kTableRows[8];  // r values
extern const std::int64_t kTableCols[6];  // n values
double round_half_even_4dp(double v);
std::string format_table_cell(double v);
std::vector<std::vector<std::string>> uniform_bound_table_cells();
std::string render_uniform_bound_table();

// Counts serialize as "cell,count" CSV rows with implied zeros; cells are
// 1-based in files. Assignments are a whitespace-separated 1-based index
// list.
std::string counts_to_csv(const Counts& counts);
Counts counts_from_csv(const std::string& text, std::int64_t r);
std::vector<std::int64_t> assignments_from_text(const std::string& text, std::int64_t r);
std::string assignments_to_text(std::span<const std::int64_t> cells);

// Sample dumps: one value per line, 17 significant digits.
std::string samples_to_text(std::span<const double> samples);

void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

}  // namespace powdiv
