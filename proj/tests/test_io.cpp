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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <string>

#include <json.hpp>

#include "powdiv/bounds.hpp"
#include "powdiv/cli.hpp"
#include "powdiv/io.hpp"
#include "approx.hpp"

using namespace powdiv;

namespace {

std::string temp_path(const std::string& name) {
  return std::string("/tmp/powdiv_test_") + std::to_string(getpid()) + "_" + name;
}

}  // namespace

TEST_CASE("ConfigDoc: flat and nested forms are the same document") {
  const ConfigDoc flat = ConfigDoc::from_json_text(
      R"({"scheme.kind": "uniform", "scheme.r": 300, "n": 5, "lambda": 1.0})");
  const ConfigDoc nested = ConfigDoc::from_json_text(
      R"({"scheme": {"kind": "uniform", "r": 300}, "n": 5, "lambda": 1.0})");
  CHECK(flat.get_string("scheme.kind") == nested.get_string("scheme.kind"));
  CHECK(flat.get_int("scheme.r") == nested.get_int("scheme.r"));
  CHECK(flat.get_double("lambda") == 1.0);
  CHECK(flat.get_int("missing", 9) == 9);
  CHECK_THROWS_AS(flat.get_int("scheme.kind"), ConfigError);
  CHECK_THROWS_AS(ConfigDoc::from_json_text("[1,2]"), ConfigError);
  CHECK_THROWS_AS(ConfigDoc::from_json_text("{nope"), ConfigError);
}

TEST_CASE("scheme_from_config: kinds and the probability file") {
  ConfigDoc cfg = ConfigDoc::from_json_text(R"({"scheme.kind": "power", "scheme.a": 0.3,
                                                "scheme.r": 12})");
  const SchemeDescriptor d = scheme_from_config(cfg);
  CHECK(d.kind == SchemeKind::power);
  CHECK(d.r == 12);

  const std::string path = temp_path("probs.txt");
  write_file(path, "# comment\n0.25\n0.75\n");
  ConfigDoc cfg2 = ConfigDoc::from_json_text(
      std::string(R"({"scheme.kind": "explicit", "scheme.file": ")") + path + "\"}");
  const SchemeDescriptor d2 = scheme_from_config(cfg2);
  REQUIRE(d2.probs.size() == 2);
  CHECK(d2.probs[0] == 0.25);
  std::remove(path.c_str());

  ConfigDoc bad = ConfigDoc::from_json_text(R"({"scheme.kind": "nope"})");
  CHECK_THROWS_AS(scheme_from_config(bad), ConfigError);
}

TEST_CASE("JsonWriter: 17-significant-digit doubles round-trip") {
  JsonWriter w;
  w.begin_object();
  w.key("x");
  w.value(0.1 + 0.2);
  w.key("y");
  w.value(std::int64_t{-42});
  w.key("s");
  w.value("a\"b\\c\n");
  w.end_object();
  const std::string json = w.take();
  const auto parsed = nlohmann::json::parse(json);
  CHECK(parsed["x"].get<double>() == 0.1 + 0.2);
  CHECK(parsed["y"].get<std::int64_t>() == -42);
  CHECK(parsed["s"].get<std::string>() == "a\"b\\c\n");
}

TEST_CASE("round_half_even_4dp and table cells") {
  CHECK(round_half_even_4dp(0.37668) == 0.3767);
  CHECK(round_half_even_4dp(0.00005) == 0.0);       // ties to even (0.0000)
  CHECK(round_half_even_4dp(0.00035) == 0.0004);    // ties to even (4)
  CHECK(format_table_cell(0.37668) == "0.3767");
  CHECK(format_table_cell(1.0000001) == "—");  // the unrounded value decides
  CHECK(format_table_cell(0.99996) == "1.0000");    // rounds up but is not > 1
}

TEST_CASE("uniform_bound_table_cells matches uniform_bound per cell") {
  const auto cells = uniform_bound_table_cells();
  REQUIRE(cells.size() == 8);
  for (std::size_t i = 0; i < 8; ++i) {
    REQUIRE(cells[i].size() == 6);
    for (std::size_t j = 0; j < 6; ++j) {
      const double v = uniform_bound(kTableCols[j], kTableRows[i]);
      CHECK(cells[i][j] == format_table_cell(v));
    }
  }
}

TEST_CASE("counts CSV: 1-based cells, implied zeros, round trip") {
  const std::vector<std::int64_t> dense = {0, 3, 0, 1};
  const Counts c = Counts::from_dense(dense);
  const std::string csv = counts_to_csv(c);
  CHECK(csv == "cell,count\n2,3\n4,1\n");
  const Counts back = counts_from_csv(csv, 4);
  CHECK(back.dense() == dense);
  CHECK_THROWS_AS(counts_from_csv("cell,count\n9,1\n", 4), ConfigError);
}

TEST_CASE("assignments text: 1-based round trip") {
  const std::vector<std::int64_t> cells = {0, 0, 3, 2};
  const std::string text = assignments_to_text(cells);
  CHECK(text == "1 1 4 3\n");
  CHECK(assignments_from_text(text, 4) == cells);
  CHECK_THROWS_AS(assignments_from_text("0 1", 4), ConfigError);
}

TEST_CASE("RunManifest: SOURCE_DATE_EPOCH pins the timestamp") {
  setenv("SOURCE_DATE_EPOCH", "0", 1);
  const RunManifest m = RunManifest::make("bound", ConfigDoc{});
  CHECK(m.created_utc == "1970-01-01T00:00:00Z");
  unsetenv("SOURCE_DATE_EPOCH");
  CHECK(m.version == std::string(kArtifactVersion));
}

TEST_CASE("cmd_bound: report JSON carries the manifest and exact breakdown") {
  ConfigDoc cfg = ConfigDoc::from_json_text(
      R"({"bound": "theorem1", "scheme.kind": "uniform", "scheme.r": 300, "n": 5,
          "lambda": 1.0})");
  const CommandResult res = cmd_bound(cfg);
  REQUIRE(res.exit_code == 0);
  const auto parsed = nlohmann::json::parse(res.report_json);
  const auto& bd = parsed["result"]["breakdown"];
  const auto s = build_scheme(SchemeDescriptor::uniform(300));
  const BoundBreakdown expect = theorem1_bound(s, 5, 1.0);
  CHECK(bd["total"].get<double>() == expect.total);
  CHECK(bd["mu"].get<double>() == expect.mu);
  CHECK(bd["valid"].get<bool>());
  CHECK(parsed["manifest"]["command"] == "bound");
}

TEST_CASE("cmd_bound: 4 d.p. anchor appears in the human output") {
  ConfigDoc cfg =
      ConfigDoc::from_json_text(R"({"bound": "uniform", "scheme.r": 300, "n": 5})");
  const CommandResult res = cmd_bound(cfg);
  CHECK(res.human.find("0.3767") != std::string::npos);
}

TEST_CASE("cmd_bound: invalid assumptions warn but still print") {
  ConfigDoc cfg = ConfigDoc::from_json_text(
      R"({"bound": "theorem1", "scheme.kind": "uniform", "scheme.r": 300, "n": 5000,
          "lambda": 1.0})");
  const CommandResult res = cmd_bound(cfg);
  CHECK(res.exit_code == 0);
  REQUIRE(!res.warnings.empty());
  bool found = false;
  for (const auto& w : res.warnings)
    if (w.find("(n+1)max p < 4") != std::string::npos) found = true;
  CHECK(found);
}

TEST_CASE("run_command: exit-code contract") {
  // parse failure -> 2
  CHECK(run_command("bound", ConfigDoc::from_json_text(R"({"bound": "nope"})")).exit_code == 2);
  // precondition failure -> 3 (generalized with n < 2m)
  ConfigDoc cfg = ConfigDoc::from_json_text(
      R"({"bound": "generalized", "scheme.kind": "uniform", "scheme.r": 10, "n": 3,
          "m": 2, "lambda": 1.0})");
  CHECK(run_command("bound", cfg).exit_code == 3);
  // gaussian with mu = 0 -> 3
  ConfigDoc g = ConfigDoc::from_json_text(
      R"({"bound": "gaussian", "scheme.kind": "uniform", "scheme.r": 10, "n": 1,
          "lambda": 1.0})");
  CHECK(run_command("bound", g).exit_code == 3);
  // unknown command -> 2
  CHECK(run_command("frobnicate", ConfigDoc{}).exit_code == 2);
}

TEST_CASE("cmd_bound: gaussian emits both the theorem form and the uniform specialisation") {
  ConfigDoc cfg = ConfigDoc::from_json_text(
      R"({"bound": "gaussian", "scheme.kind": "uniform", "scheme.r": 10000000, "n": 10000,
          "lambda": 1.0})");
  const CommandResult res = cmd_bound(cfg);
  REQUIRE(res.exit_code == 0);
  const auto parsed = nlohmann::json::parse(res.report_json);
  const double general = parsed["result"]["gaussian"]["gaussian_total"].get<double>();
  const double special = parsed["result"]["gaussian"]["gaussian_uniform_total"].get<double>();
  const auto s = build_scheme(SchemeDescriptor::uniform(10000000));
  CHECK(general == gaussian_bound(s, 10000, 1.0));
  CHECK(special == gaussian_uniform_bound(10000, 10000000));
  CHECK(special > 0.76);
  CHECK(special < 0.77);
  CHECK(res.human.find("uniform specialisation") != std::string::npos);
}

TEST_CASE("cmd_verify: gaussian reference on a power scheme wires through") {
  ConfigDoc cfg = ConfigDoc::from_json_text(
      R"({"scheme.kind": "power", "scheme.a": 0.1, "scheme.r": 2000, "n": 12, "lambda": 1.0,
          "replicates": 2000, "seed": 21, "bound": "gaussian"})");
  const CommandResult res = cmd_verify(cfg);
  // the bound is far above 1 here, so the comparison passes with a warning
  CHECK(res.exit_code == 0);
  const auto parsed = nlohmann::json::parse(res.report_json);
  CHECK(parsed["result"]["bound_name"] == "gaussian");
  CHECK(parsed["result"]["tail_truncation"].get<double>() == 0.0);
}

TEST_CASE("cmd_verify: vacuous margin at one replicate still passes with a warning") {
  ConfigDoc cfg = ConfigDoc::from_json_text(
      R"({"scheme.kind": "uniform", "scheme.r": 64, "n": 8, "lambda": 1.0,
          "replicates": 1, "seed": 11, "bound": "theorem1"})");
  const CommandResult res = cmd_verify(cfg);
  CHECK(res.exit_code == 0);
  bool vacuous = false;
  for (const auto& w : res.warnings)
    if (w.find("vacuous") != std::string::npos) vacuous = true;
  CHECK(vacuous);
  const auto parsed = nlohmann::json::parse(res.report_json);
  CHECK(parsed["result"]["dkw_margin"].get<double>() > 1.0);
  CHECK(parsed["result"]["pass"].get<bool>());
}

TEST_CASE("cmd_verify: occupancy target against the occupancy bound") {
  ConfigDoc cfg = ConfigDoc::from_json_text(
      R"({"scheme.kind": "uniform", "scheme.r": 8, "n": 4, "target": "occupancy",
          "replicates": 20000, "seed": 4, "m": 2})");
  const CommandResult res = cmd_verify(cfg);
  CHECK(res.exit_code == 0);
  const auto parsed = nlohmann::json::parse(res.report_json);
  CHECK(parsed["result"]["bound_name"] == "occupancy");
  CHECK(parsed["result"]["mu"].get<double>() == doctest::Approx(0.57421875).epsilon(1e-12));
}

TEST_CASE("cmd_sweep: decay ratios along r = n^2 and single-point consistency") {
  SUBCASE("coupled grid emits ratio column in [0.4, 0.6]") {
    ConfigDoc cfg = ConfigDoc::from_json_text(
        R"({"bound": "uniform", "grid.n": "20,40,80", "grid.r_rule": "c*n^2", "grid.c": 1,
            "grid.ratio": true})");
    const CommandResult res = cmd_sweep(cfg);
    REQUIRE(res.exit_code == 0);
    // parse CSV rows: total is column 9 (0-based), ratio last
    std::istringstream in(res.human);
    std::string line;
    std::vector<std::vector<std::string>> rows;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#' || line.rfind("bound,", 0) == 0) continue;
      std::vector<std::string> cells;
      std::istringstream ls(line);
      std::string cell;
      while (std::getline(ls, cell, ',')) cells.push_back(cell);
      if (!line.empty() && line.back() == ',') cells.push_back("");
      rows.push_back(cells);
    }
    REQUIRE(rows.size() == 3);
    for (std::size_t i = 1; i < rows.size(); ++i) {
      const double ratio = std::stod(rows[i].back());
      CHECK(ratio >= 0.4);
      CHECK(ratio <= 0.6);
    }
    CHECK(rows[0].back().empty());  // no predecessor for the first n
  }
  SUBCASE("single-point sweep equals cmd_bound values") {
    ConfigDoc cfg = ConfigDoc::from_json_text(
        R"({"bound": "uniform", "grid.n": "5", "grid.r": "300"})");
    const CommandResult res = cmd_sweep(cfg);
    REQUIRE(res.exit_code == 0);
    CHECK(res.human.find(JsonWriter::format_double(uniform_bound(5, 300))) != std::string::npos);
  }
  SUBCASE("dpd sweep: term_c and term_d rise from zero with a") {
    ConfigDoc cfg = ConfigDoc::from_json_text(
        R"({"bound": "dpd", "grid.a": "0,0.1,0.2", "grid.n": "10", "grid.r": "10000",
            "grid.lambda": "1"})");
    const CommandResult res = cmd_sweep(cfg);
    REQUIRE(res.exit_code == 0);
    std::istringstream in(res.human);
    std::string line;
    std::vector<double> cterm, dterm;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#' || line.rfind("bound,", 0) == 0) continue;
      std::vector<std::string> cells;
      std::istringstream ls(line);
      std::string cell;
      while (std::getline(ls, cell, ',')) cells.push_back(cell);
      cterm.push_back(std::stod(cells[6]));
      dterm.push_back(std::stod(cells[8]));
    }
    REQUIRE(cterm.size() == 3);
    CHECK(cterm[0] == 0.0);
    CHECK(dterm[0] == 0.0);
    CHECK(cterm[1] > 0.0);
    CHECK(cterm[2] > cterm[1]);
    CHECK(dterm[1] > 0.0);
    CHECK(dterm[2] > dterm[1]);
  }
  SUBCASE("empty grid is a config error") {
    ConfigDoc cfg = ConfigDoc::from_json_text(R"({"bound": "uniform", "grid.n": " "})");
    CHECK(run_command("sweep", cfg).exit_code == 2);
  }
}

TEST_CASE("report round trip: re-running the embedded manifest reproduces numbers") {
  const std::string out = temp_path("report.json");
  ConfigDoc cfg = ConfigDoc::from_json_text(
      std::string(R"({"bound": "dpd", "scheme.r": 5000, "scheme.a": 0.25, "n": 12,
                      "lambda": 0.75, "output.path": ")") + out + "\"}");
  const CommandResult first = cmd_bound(cfg);
  REQUIRE(first.exit_code == 0);

  // feed the report file back in as the config
  const ConfigDoc again = ConfigDoc::from_file(out);
  const CommandResult second = cmd_bound(again);
  const auto a = nlohmann::json::parse(first.report_json)["result"];
  const auto b = nlohmann::json::parse(second.report_json)["result"];
  CHECK(a.dump() == b.dump());  // byte-identical numerical fields
  std::remove(out.c_str());
}
