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

#include "powdiv/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "powdiv/bounds.hpp"
#include "powdiv/kolmogorov.hpp"
#include "powdiv/simulate.hpp"

namespace powdiv {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

void breakdown_to_json(JsonWriter& w, const BoundBreakdown& b) {
  w.begin_object();
  w.key("term_occupancy");
  w.value(b.term_occupancy);
  w.key("term_c");
  w.value(b.term_c);
  w.key("term_triple");
  w.value(b.term_triple);
  w.key("term_d");
  w.value(b.term_d);
  w.key("total");
  w.value(b.total);
  w.key("mu");
  w.value(b.mu);
  w.key("c_lambda");
  w.value(b.c_lambda_val);
  w.key("d_lambda");
  w.value(b.d_lambda_val);
  w.key("valid");
  w.value(b.valid);
  w.key("violated");
  w.begin_array();
  for (const auto& v : b.violated) w.value(v);
  w.end_array();
  w.end_object();
}

std::string breakdown_text(const std::string& name, const BoundBreakdown& b) {
  std::ostringstream out;
  out << "bound: " << name << (b.valid ? "" : "   [assumptions violated]") << '\n';
  out << "  term_occupancy  " << fmt(b.term_occupancy) << '\n';
  out << "  term_c          " << fmt(b.term_c) << '\n';
  out << "  term_triple     " << fmt(b.term_triple) << '\n';
  out << "  term_d          " << fmt(b.term_d) << '\n';
  out << "  total           " << fmt(b.total) << "  (4 d.p.: " << format_table_cell(b.total)
      << ")\n";
  out << "  mu = " << fmt(b.mu) << "  c_lambda = " << fmt(b.c_lambda_val)
      << "  d_lambda = " << fmt(b.d_lambda_val) << '\n';
  return out.str();
}

void warn_if_invalid(const BoundBreakdown& b, std::vector<std::string>& warnings) {
  for (const auto& v : b.violated)
    warnings.push_back("assumption not met: " + v + " (value computed anyway)");
}

void warn_if_invalid(const Validity& v, std::vector<std::string>& warnings) {
  for (const auto& name : v.violated)
    warnings.push_back("assumption not met: " + name + " (value computed anyway)");
}

std::vector<double> parse_list(const ConfigDoc& config, const std::string& grid_key,
                               const std::string& scalar_key) {
  if (config.has(grid_key)) {
    std::vector<double> out;
    const std::string text = [&] {
      // allow both "1,2,3" strings and single numbers under the grid key
      try {
        return config.get_string(grid_key);
      } catch (const ConfigError&) {
        return std::string();
      }
    }();
    if (text.empty()) {
      out.push_back(config.get_double(grid_key));
      return out;
    }
    std::istringstream in(text);
    std::string tok;
    while (std::getline(in, tok, ',')) {
      if (tok.find_first_not_of(" \t") == std::string::npos) continue;
      try {
        out.push_back(std::stod(tok));
      } catch (const std::exception&) {
        throw ConfigError("config: bad number '" + tok + "' in " + grid_key);
      }
    }
    return out;
  }
  if (config.has(scalar_key)) return {config.get_double(scalar_key)};
  return {};
}

std::string finish_report(const RunManifest& manifest, const std::string& result_key,
                          const std::string& result_fragment) {
  JsonWriter w;
  w.begin_object();
  w.key("manifest");
  manifest_to_json(w, manifest);
  w.key(result_key);
  w.raw(result_fragment);
  w.end_object();
  std::string json = w.take();
  json += '\n';
  return json;
}

void deliver_report(CommandResult& result, const ConfigDoc& config, RunManifest manifest,
                    const std::string& result_key, const std::string& result_fragment) {
  const std::string path = config.get_string("output.path", "");
  if (!path.empty()) manifest.output_paths.push_back(path);
  if (config.has("output.samples")) manifest.output_paths.push_back(config.get_string("output.samples"));
  result.report_json = finish_report(manifest, result_key, result_fragment);
  if (!path.empty()) {
    write_file(path, result.report_json);
  } else {
    result.human += result.report_json;  // both forms go to stdout
  }
}

}  // namespace

CommandResult cmd_bound(const ConfigDoc& config) {
  CommandResult result;
  const std::string bound = config.get_string("bound");
  const RunManifest manifest = RunManifest::make("bound", config);

  BoundBreakdown b;
  std::string extra_json;

  if (bound == "uniform") {
    b = uniform_breakdown(config.get_int("n"), config.get_int("scheme.r"));
  } else if (bound == "dpd") {
    b = dpd_bound(config.get_int("n"), config.get_int("scheme.r"),
                  config.get_double("scheme.a"), config.get_double("lambda"));
  } else if (bound == "theorem1" || bound == "llr" || bound == "gaussian" ||
             bound == "generalized" || bound == "occupancy") {
    const ClassificationScheme scheme = build_scheme(scheme_from_config(config));
    const std::int64_t n = config.get_int("n");
    if (bound == "llr") {
      b = llr_bound(scheme, n);
    } else if (bound == "generalized") {
      GeneralizedSpec gspec;
      gspec.m = config.get_int("m", 2);
      const std::string h_kind = config.get_string("h", "power");
      if (h_kind == "power") {
        const double lambda = config.get_double("lambda", 0.0);
        gspec.h_values = power_divergence_h(scheme, lambda);
        gspec.var_r = config.get_double("var_r", d_lambda(scheme, n, lambda));
      } else if (h_kind == "one") {
        gspec.h_values.assign(static_cast<std::size_t>(scheme.size()), 1.0);
        gspec.var_r = config.get_double("var_r", 0.0);
      } else {
        throw ConfigError("config: h must be 'power' or 'one'");
      }
      b = generalized_bound(gspec, scheme, n);
    } else if (bound == "occupancy") {
      const double value = occupancy_bound(scheme, n);
      b.term_occupancy = value;
      b.total = value;
      b.mu = mu(scheme, n, 2);
      Validity v = occupancy_validity(scheme, n);
      b.valid = v.valid;
      b.violated = std::move(v.violated);
    } else {
      const double lambda = config.get_double("lambda");
      b = theorem1_bound(scheme, n, lambda);
      if (bound == "gaussian") {
        if (!(b.mu > 0.0)) throw std::domain_error("gaussian bound: mu must be positive");
        const double general = b.total + 0.4748 / std::sqrt(b.mu);
        JsonWriter w;
        w.begin_object();
        w.key("gaussian_total");
        w.value(general);
        result.human += "gaussian bound (Poisson total + 0.4748/sqrt(mu)): " + fmt(general) + '\n';
        if (scheme.kind() == SchemeKind::uniform) {
          const double special =
              gaussian_uniform_bound(n, scheme.size());
          w.key("gaussian_uniform_total");
          w.value(special);
          result.human += "gaussian bound, uniform specialisation: " + fmt(special) + '\n';
          if (special > 1.0)
            result.warnings.push_back("gaussian uniform bound exceeds 1: not informative");
        }
        if (general > 1.0)
          result.warnings.push_back("gaussian bound exceeds 1: not informative");
        w.end_object();
        extra_json = w.take();
      }
    }
  } else {
    throw ConfigError(
        "config: bound must be one of theorem1|llr|uniform|dpd|gaussian|generalized|occupancy");
  }

  warn_if_invalid(b, result.warnings);
  result.human = breakdown_text(bound, b) + result.human;

  JsonWriter rw;
  rw.begin_object();
  rw.key("bound");
  rw.value(bound);
  rw.key("breakdown");
  breakdown_to_json(rw, b);
  if (!extra_json.empty()) {
    rw.key("gaussian");
    rw.raw(extra_json);
  }
  rw.end_object();
  deliver_report(result, config, manifest, "result", rw.take());
  return result;
}

CommandResult cmd_table1(const ConfigDoc& config) {
  CommandResult result;
  const RunManifest manifest = RunManifest::make("table1", config);
  result.human = render_uniform_bound_table();

  JsonWriter rw;
  rw.begin_object();
  rw.key("r");
  rw.begin_array();
  for (std::int64_t r : kTableRows) rw.value(r);
  rw.end_array();
  rw.key("n");
  rw.begin_array();
  for (std::int64_t n : kTableCols) rw.value(n);
  rw.end_array();
  rw.key("cells");
  rw.begin_array();
  for (const auto& row : uniform_bound_table_cells()) {
    rw.begin_array();
    for (const auto& cell : row) rw.value(cell);
    rw.end_array();
  }
  rw.end_array();
  rw.end_object();

  const std::string path = config.get_string("output.path", "");
  RunManifest m = manifest;
  if (!path.empty()) {
    m.output_paths.push_back(path);
    result.report_json = finish_report(m, "result", rw.take());
    write_file(path, result.report_json);
  } else {
    result.report_json = finish_report(m, "result", rw.take());
  }
  return result;
}

CommandResult cmd_verify(const ConfigDoc& config) {
  CommandResult result;
  const RunManifest manifest = RunManifest::make("verify", config);

  const std::string target = config.get_string("target", "t_tilde");
  if (target != "t_tilde" && target != "occupancy")
    throw ConfigError("config: target must be t_tilde or occupancy");
  const std::string bound_name =
      config.get_string("bound", target == "occupancy" ? "occupancy" : "theorem1");

  ExperimentConfig exp;
  exp.scheme = scheme_from_config(config);
  exp.n = config.get_int("n");
  exp.lambda = config.get_double("lambda", 1.0);
  exp.replicates = config.get_int("replicates");
  exp.seed = static_cast<std::uint64_t>(config.get_int("seed", 0));
  exp.target_t_tilde = target == "t_tilde";
  exp.occupancy_m = target == "occupancy" ? config.get_int("m", 2) : -1;

  const ClassificationScheme scheme = build_scheme(exp.scheme);
  const double mu_val = mu(scheme, exp.n, 2);

  // theoretical bound
  double bound_value = 0.0;
  bool gaussian = false;
  if (bound_name == "theorem1") {
    const BoundBreakdown b = theorem1_bound(scheme, exp.n, exp.lambda);
    warn_if_invalid(b, result.warnings);
    bound_value = b.total;
  } else if (bound_name == "uniform") {
    if (scheme.kind() != SchemeKind::uniform)
      throw ConfigError("config: bound=uniform requires a uniform scheme");
    warn_if_invalid(uniform_validity(exp.n, scheme.size()), result.warnings);
    bound_value = uniform_bound(exp.n, scheme.size());
  } else if (bound_name == "dpd") {
    const BoundBreakdown b = dpd_bound(exp.n, scheme.size(), scheme.power_exponent(), exp.lambda);
    warn_if_invalid(b, result.warnings);
    bound_value = b.total;
  } else if (bound_name == "occupancy") {
    if (target != "occupancy" || exp.occupancy_m != 2)
      throw ConfigError("config: bound=occupancy applies to the occupancy target at m=2");
    warn_if_invalid(occupancy_validity(scheme, exp.n), result.warnings);
    bound_value = occupancy_bound(scheme, exp.n);
  } else if (bound_name == "gaussian") {
    if (target != "t_tilde") throw ConfigError("config: bound=gaussian applies to t_tilde");
    gaussian = true;
    bound_value = scheme.kind() == SchemeKind::uniform
                      ? gaussian_uniform_bound(exp.n, scheme.size())
                      : gaussian_bound(scheme, exp.n, exp.lambda);
    if (bound_value > 1.0)
      result.warnings.push_back("gaussian bound exceeds 1: not informative");
  } else {
    throw ConfigError("config: bound must be theorem1|uniform|dpd|occupancy|gaussian");
  }

  const ReplicateBatch batch = simulate(exp);
  const std::vector<double>& raw = exp.target_t_tilde ? batch.t_tilde : batch.occupancy;

  if (config.has("output.samples"))
    write_file(config.get_string("output.samples"), samples_to_text(raw));

  std::vector<double> samples = raw;
  if (gaussian) {
    const double root_mu = std::sqrt(mu_val);
    for (double& v : samples) v = (v - mu_val) / root_mu;
  }
  std::sort(samples.begin(), samples.end());

  const KolmogorovReport report =
      empirical_dk(samples, gaussian ? ReferenceDistribution::normal()
                                     : ReferenceDistribution::poisson(mu_val));
  if (report.dkw_margin > 1.0)
    result.warnings.push_back("dkw margin exceeds 1: comparison is vacuous at this sample size");

  const bool pass = report.d_hat <= bound_value + report.dkw_margin;
  {
    std::ostringstream out;
    out << "bound(" << bound_name << ") = " << fmt(bound_value) << "  d_hat = "
        << fmt(report.d_hat) << "  dkw_margin = " << fmt(report.dkw_margin) << "  => "
        << (pass ? "PASS" : "FAIL") << '\n';
    result.human = out.str();
  }

  JsonWriter rw;
  rw.begin_object();
  rw.key("target");
  rw.value(target);
  rw.key("bound_name");
  rw.value(bound_name);
  rw.key("bound");
  rw.value(bound_value);
  rw.key("mu");
  rw.value(mu_val);
  rw.key("replicates");
  rw.value(exp.replicates);
  rw.key("d_hat");
  rw.value(report.d_hat);
  rw.key("argmax_point");
  rw.value(report.argmax_point);
  rw.key("dkw_margin");
  rw.value(report.dkw_margin);
  rw.key("tail_truncation");
  rw.value(report.tail_truncation);
  rw.key("pass");
  rw.value(pass);
  rw.end_object();
  deliver_report(result, config, manifest, "result", rw.take());

  result.exit_code = pass ? 0 : 1;
  return result;
}

CommandResult cmd_sweep(const ConfigDoc& config) {
  CommandResult result;
  const RunManifest manifest = RunManifest::make("sweep", config);
  const std::string bound = config.get_string("bound", "uniform");
  if (bound != "uniform" && bound != "dpd" && bound != "theorem1" && bound != "llr")
    throw ConfigError("config: sweep supports bound uniform|dpd|theorem1|llr");

  const std::vector<double> ns = parse_list(config, "grid.n", "n");
  std::vector<double> rs = parse_list(config, "grid.r", "scheme.r");
  const std::vector<double> as = parse_list(config, "grid.a", "scheme.a");
  const std::vector<double> lambdas = parse_list(config, "grid.lambda", "lambda");
  const bool want_ratio = config.get_bool("grid.ratio", false);

  const std::string r_rule = config.get_string("grid.r_rule", "");
  if (!r_rule.empty() && r_rule != "c*n^2")
    throw ConfigError("config: grid.r_rule supports only 'c*n^2'");
  const double couple_c = config.get_double("grid.c", 1.0);

  if (ns.empty()) throw ConfigError("config: sweep grid is empty (no n values)");
  if (rs.empty() && r_rule.empty()) throw ConfigError("config: sweep needs grid.r or grid.r_rule");

  const std::vector<double> a_axis = as.empty() ? std::vector<double>{0.0} : as;
  const std::vector<double> lambda_axis = lambdas.empty() ? std::vector<double>{1.0} : lambdas;
  if (!r_rule.empty()) rs = {0.0};  // placeholder axis; r derives from n

  std::ostringstream csv;
  csv << "# manifest: ";
  {
    JsonWriter w;
    manifest_to_json(w, manifest);
    csv << w.take() << '\n';
  }
  csv << "bound,n,r,a,lambda,term_occupancy,term_c,term_triple,term_d,total,mu,c_lambda,d_"
         "lambda,valid";
  if (want_ratio) csv << ",ratio_prev_n";
  csv << '\n';

  std::int64_t rows = 0;
  for (double a : a_axis) {
    for (double lambda : lambda_axis) {
      for (double r_axis : rs) {
        double prev_total = 0.0;
        bool have_prev = false;
        for (double n_axis : ns) {
          const std::int64_t n = static_cast<std::int64_t>(std::llround(n_axis));
          const std::int64_t r =
              r_rule.empty() ? static_cast<std::int64_t>(std::llround(r_axis))
                             : static_cast<std::int64_t>(std::llround(couple_c * n_axis * n_axis));
          BoundBreakdown b;
          if (bound == "uniform") {
            b = uniform_breakdown(n, r);
          } else if (bound == "dpd") {
            b = dpd_bound(n, r, a, lambda);
          } else {
            const ClassificationScheme scheme =
                build_scheme(a == 0.0 ? SchemeDescriptor::uniform(r)
                                      : SchemeDescriptor::power(a, r));
            b = bound == "llr" ? llr_bound(scheme, n) : theorem1_bound(scheme, n, lambda);
          }
          csv << bound << ',' << n << ',' << r << ',' << JsonWriter::format_double(a) << ','
              << JsonWriter::format_double(lambda) << ','
              << JsonWriter::format_double(b.term_occupancy) << ','
              << JsonWriter::format_double(b.term_c) << ','
              << JsonWriter::format_double(b.term_triple) << ','
              << JsonWriter::format_double(b.term_d) << ','
              << JsonWriter::format_double(b.total) << ',' << JsonWriter::format_double(b.mu)
              << ',' << JsonWriter::format_double(b.c_lambda_val) << ','
              << JsonWriter::format_double(b.d_lambda_val) << ',' << (b.valid ? 1 : 0);
          if (want_ratio) {
            csv << ',';
            if (have_prev) csv << JsonWriter::format_double(b.total / prev_total);
          }
          csv << '\n';
          prev_total = b.total;
          have_prev = true;
          ++rows;
        }
      }
    }
  }
  if (rows == 0) throw ConfigError("config: sweep grid is empty");

  const std::string path = config.get_string("output.path", "");
  if (!path.empty()) {
    write_file(path, csv.str());
    result.human = "wrote " + std::to_string(rows) + " rows to " + path + '\n';
  } else {
    result.human = csv.str();
  }
  return result;
}

CommandResult run_command(const std::string& command, const ConfigDoc& config) {
  try {
    if (command == "bound") return cmd_bound(config);
    if (command == "table1") return cmd_table1(config);
    if (command == "verify") return cmd_verify(config);
    if (command == "sweep") return cmd_sweep(config);
    throw ConfigError("unknown command '" + command + "'");
  } catch (const ConfigError& e) {
    CommandResult r;
    r.exit_code = 2;
    r.warnings.push_back(e.what());
    return r;
  } catch (const std::domain_error& e) {
    CommandResult r;
    r.exit_code = 3;
    r.warnings.push_back(e.what());
    return r;
  } catch (const std::invalid_argument& e) {
    CommandResult r;
    r.exit_code = 3;
    r.warnings.push_back(e.what());
    return r;
  }
}

}  // namespace powdiv
