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

#include <array>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "powdiv/io.hpp"

namespace {

struct RunOutput {
  int exit_code = -1;
  std::string out;
};

RunOutput run(const std::string& args) {
  const std::string cmd = std::string(POWDIV_CLI_PATH) + " " + args + " 2>/dev/null";
  RunOutput r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf;
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string temp_path(const std::string& name) {
  return std::string("/tmp/powdiv_cli_") + std::to_string(getpid()) + "_" + name;
}

}  // namespace

TEST_CASE("cli: table1 prints the full grid") {
  const RunOutput r = run("table1");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("0.3767") != std::string::npos);
  CHECK(r.out.find("0.5534") != std::string::npos);
  CHECK(r.out.find("0.3388") != std::string::npos);
  CHECK(r.out.find("—") != std::string::npos);
}

TEST_CASE("cli: bound uniform prints the table value") {
  const RunOutput r = run("bound --bound uniform --n 5 --r 300");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("0.3767") != std::string::npos);
}

TEST_CASE("cli: exit codes") {
  CHECK(run("bound --bound nope --n 5 --r 300").exit_code == 2);
  CHECK(run("bound --bound uniform").exit_code == 2);           // missing n
  CHECK(run("bogus-subcommand").exit_code == 2);                // CLI parse error
  CHECK(run("bound --bound generalized --scheme-kind uniform --r 10 --n 3 --m 2 --lambda 1")
            .exit_code == 3);  // n < 2m
}

TEST_CASE("cli: verify PASS/FAIL wiring and sample dump") {
  const std::string dump = temp_path("samples.txt");
  const RunOutput ok = run(
      "verify --scheme-kind uniform --r 3000 --n 5 --lambda 1 --replicates 20000 --seed 42 "
      "--bound uniform --samples-out " + dump);
  CHECK(ok.exit_code == 0);
  CHECK(ok.out.find("PASS") != std::string::npos);
  const std::string samples = powdiv::read_file(dump);
  CHECK(std::count(samples.begin(), samples.end(), '\n') == 20000);
  std::remove(dump.c_str());
}

TEST_CASE("cli: config file drives a run, flags override") {
  const std::string cfg = temp_path("cfg.json");
  powdiv::write_file(cfg, R"({"command": "bound", "bound": "uniform", "n": 5,
                              "scheme": {"r": 300}})");
  const RunOutput file_run = run("--config " + cfg);
  CHECK(file_run.exit_code == 0);
  CHECK(file_run.out.find("0.3767") != std::string::npos);

  const RunOutput overridden = run("bound --config " + cfg + " --n 10 --r 1000");
  CHECK(overridden.exit_code == 0);
  CHECK(overridden.out.find("0.2711") != std::string::npos);
  std::remove(cfg.c_str());
}

TEST_CASE("cli: report is reproducible from its own manifest") {
  const std::string report = temp_path("report.json");
  const RunOutput first =
      run("bound --bound dpd --r 2000 --a 0.3 --n 8 --lambda 1.5 --output " + report);
  REQUIRE(first.exit_code == 0);
  // re-run with the report file itself as the config, fresh output path
  const std::string report2 = temp_path("report2.json");
  const RunOutput rerun = run("bound --config " + report + " --output " + report2);
  REQUIRE(rerun.exit_code == 0);
  const std::string a = powdiv::read_file(report);
  const std::string b = powdiv::read_file(report2);
  // numerical payloads match exactly (manifests differ in output paths)
  const auto cut = [](const std::string& s) { return s.substr(s.find("\"result\"")); };
  CHECK(cut(a) == cut(b));
  std::remove(report.c_str());
  std::remove(report2.c_str());
}

TEST_CASE("cli: POWDIV_WORKERS does not change verify output") {
  const std::string d1 = temp_path("w1.txt");
  const std::string d8 = temp_path("w8.txt");
  const std::string base =
      "verify --scheme-kind uniform --r 500 --n 10 --lambda 0 --replicates 5000 --seed 9 "
      "--bound theorem1 --samples-out ";
  const std::string c1 = "POWDIV_WORKERS=1 " + std::string(POWDIV_CLI_PATH) + " " + base + d1;
  const std::string c8 = "POWDIV_WORKERS=8 " + std::string(POWDIV_CLI_PATH) + " " + base + d8;
  REQUIRE(std::system((c1 + " >/dev/null 2>&1").c_str()) == 0);
  REQUIRE(std::system((c8 + " >/dev/null 2>&1").c_str()) == 0);
  CHECK(powdiv::read_file(d1) == powdiv::read_file(d8));
  std::remove(d1.c_str());
  std::remove(d8.c_str());
}
