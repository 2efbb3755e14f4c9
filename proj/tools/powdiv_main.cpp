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

#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "powdiv/cli.hpp"
#include "powdiv/io.hpp"

namespace {

struct FlagSet {
  std::string config_path;
  std::string scheme_kind, scheme_file;
  std::int64_t scheme_r = 0, n = 0, m = 0, replicates = 0, seed = 0;
  double scheme_a = 0.0, lambda = 0.0, var_r = 0.0, grid_c = 0.0;
  std::string bound, target, h;
  std::string grid_n, grid_r, grid_a, grid_lambda, grid_r_rule;
  bool grid_ratio = false;
  std::string output_path, output_format, output_samples;
};

// Shared flags; CLI values override file values key by key.
void add_common(CLI::App* cmd, FlagSet& f) {
  cmd->add_option("--config", f.config_path, "flat key-value JSON config (or a prior report)");
  cmd->add_option("--scheme-kind", f.scheme_kind, "uniform | power | explicit");
  cmd->add_option("--r", f.scheme_r, "cell count (scheme.r)");
  cmd->add_option("--a", f.scheme_a, "power exponent in [0,1] (scheme.a)");
  cmd->add_option("--scheme-file", f.scheme_file, "one probability per line (scheme.file)");
  cmd->add_option("--n", f.n, "trials per replicate");
  cmd->add_option("--lambda", f.lambda, "power divergence index");
  cmd->add_option("--m", f.m, "occupancy level / vanishing order");
  cmd->add_option("--output", f.output_path, "report path (output.path)");
  cmd->add_option("--format", f.output_format, "output.format");
}

void apply_overrides(const CLI::App* cmd, const FlagSet& f, powdiv::ConfigDoc& config) {
  auto seen = [cmd](const std::string& name) { return cmd->count(name) > 0; };
  if (seen("--scheme-kind")) config.set("scheme.kind", f.scheme_kind);
  if (seen("--r")) config.set("scheme.r", f.scheme_r);
  if (seen("--a")) config.set("scheme.a", f.scheme_a);
  if (seen("--scheme-file")) config.set("scheme.file", f.scheme_file);
  if (seen("--n")) config.set("n", f.n);
  if (seen("--lambda")) config.set("lambda", f.lambda);
  if (seen("--m")) config.set("m", f.m);
  if (seen("--output")) config.set("output.path", f.output_path);
  if (seen("--format")) config.set("output.format", f.output_format);
}

int emit(const powdiv::CommandResult& result) {
  std::fputs(result.human.c_str(), stdout);
  for (const auto& w : result.warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());
  return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"power divergence statistics: Poisson/Gaussian approximation bounds and their "
               "Monte Carlo verification"};
  app.set_version_flag("--version", powdiv::kArtifactVersion);
  app.require_subcommand(0, 1);

  FlagSet f;

  CLI::App* bound = app.add_subcommand("bound", "evaluate one bound, term by term");
  add_common(bound, f);
  bound->add_option("--bound", f.bound,
                    "theorem1 | llr | uniform | dpd | gaussian | generalized | occupancy");
  bound->add_option("--h-kind", f.h, "generalized: h weights, power | one");
  bound->add_option("--var-r", f.var_r, "generalized: Var(R) override");

  CLI::App* table1 = app.add_subcommand("table1", "uniform-allocation bound over the r x n grid");
  add_common(table1, f);

  CLI::App* verify = app.add_subcommand("verify", "simulate and compare d_K against a bound");
  add_common(verify, f);
  verify->add_option("--bound", f.bound, "theorem1 | uniform | dpd | occupancy | gaussian");
  verify->add_option("--target", f.target, "t_tilde | occupancy");
  verify->add_option("--replicates", f.replicates, "Monte Carlo replicates");
  verify->add_option("--seed", f.seed, "RNG seed");
  verify->add_option("--samples-out", f.output_samples, "sample dump path (output.samples)");

  CLI::App* sweep = app.add_subcommand("sweep", "bound terms over a parameter grid, CSV out");
  add_common(sweep, f);
  sweep->add_option("--bound", f.bound, "uniform | dpd | theorem1 | llr");
  sweep->add_option("--grid-n", f.grid_n, "comma list of n values");
  sweep->add_option("--grid-r", f.grid_r, "comma list of r values");
  sweep->add_option("--grid-a", f.grid_a, "comma list of a values");
  sweep->add_option("--grid-lambda", f.grid_lambda, "comma list of lambda values");
  sweep->add_option("--r-rule", f.grid_r_rule, "coupling rule, e.g. c*n^2");
  sweep->add_option("--c", f.grid_c, "coupling constant for the r rule");
  sweep->add_flag("--ratio", f.grid_ratio, "append successive-n total ratio column");

  app.add_option("--config", f.config_path,
                 "run the command named in the config file (or embedded manifest)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
    app.exit(e);
    return 2;
  }

  powdiv::ConfigDoc config;
  try {
    if (!f.config_path.empty()) config = powdiv::ConfigDoc::from_file(f.config_path);

    std::string command;
    for (CLI::App* sub : {bound, table1, verify, sweep}) {
      if (sub->parsed()) {
        command = sub->get_name();
        apply_overrides(sub, f, config);
        if (sub == bound || sub == verify || sub == sweep) {
          if (sub->count("--bound")) config.set("bound", f.bound);
        }
        if (sub == bound) {
          if (sub->count("--h-kind")) config.set("h", f.h);
          if (sub->count("--var-r")) config.set("var_r", f.var_r);
        }
        if (sub == verify) {
          if (sub->count("--target")) config.set("target", f.target);
          if (sub->count("--replicates")) config.set("replicates", f.replicates);
          if (sub->count("--seed")) config.set("seed", f.seed);
          if (sub->count("--samples-out")) config.set("output.samples", f.output_samples);
        }
        if (sub == sweep) {
          if (sub->count("--grid-n")) config.set("grid.n", f.grid_n);
          if (sub->count("--grid-r")) config.set("grid.r", f.grid_r);
          if (sub->count("--grid-a")) config.set("grid.a", f.grid_a);
          if (sub->count("--grid-lambda")) config.set("grid.lambda", f.grid_lambda);
          if (sub->count("--r-rule")) config.set("grid.r_rule", f.grid_r_rule);
          if (sub->count("--c")) config.set("grid.c", f.grid_c);
          if (sub->count("--ratio")) config.set("grid.ratio", true);
        }
        break;
      }
    }
    if (command.empty()) {
      // bare `powdiv --config run.json`: the file names the command
      command = config.get_string("command", "");
      if (command.empty()) {
        std::fprintf(stderr, "error: no subcommand given and config has no 'command' key\n");
        return 2;
      }
    } else {
      config.set("command", command);
    }
    return emit(powdiv::run_command(command, config));
  } catch (const powdiv::ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
