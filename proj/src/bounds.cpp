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

#include "powdiv/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "powdiv/kahan.hpp"

namespace powdiv {

namespace {

double log_binom(std::int64_t n, std::int64_t m) {
  return std::lgamma(static_cast<double>(n) + 1.0) - std::lgamma(static_cast<double>(m) + 1.0) -
         std::lgamma(static_cast<double>(n - m) + 1.0);
}

double pi_of_p(double log_binom_nm, double p, std::int64_t n, std::int64_t m) {
  if (n == m) return std::pow(p, static_cast<double>(m));
  const double v = std::exp(log_binom_nm + static_cast<double>(m) * std::log(p) +
                            static_cast<double>(n - m) * std::log1p(-p));
  return v > 1.0 ? 1.0 : v;
}

// Streaming accumulation of the pi-derived sums every bound needs. Uniform
// schemes collapse to a single cell evaluation.
struct PiMoments {
  double mu = 0.0;
  double sum_pi_sq = 0.0;
  double sum_p_pi = 0.0;
};

PiMoments pi_moments(const ClassificationScheme& scheme, std::int64_t n, std::int64_t m) {
  PiMoments out;
  if (n < m) return out;  // C(n, m) = 0
  const double lb = log_binom(n, m);
  if (scheme.kind() == SchemeKind::uniform) {
    const double p = scheme.prob(0);
    const double pi = pi_of_p(lb, p, n, m);
    const double r = static_cast<double>(scheme.size());
    out.mu = r * pi;
    out.sum_pi_sq = r * pi * pi;
    out.sum_p_pi = pi;  // r * p * pi with p = 1/r
    return out;
  }
  KahanSum mu_sum, sq_sum, p_pi_sum;
  for (double p : scheme.probs()) {
    const double pi = pi_of_p(lb, p, n, m);
    mu_sum.add(pi);
    sq_sum.add(pi * pi);
    p_pi_sum.add(p * pi);
  }
  out.mu = mu_sum.value();
  out.sum_pi_sq = sq_sum.value();
  out.sum_p_pi = p_pi_sum.value();
  return out;
}

// min{1, 1/mu} (6n [sum p pi]^2 + sum pi^2 + 6 m^2 mu^2 / n); the m = 2 case
// is the occupancy-statistic Poisson bound.
double occupancy_kernel(const PiMoments& pm, std::int64_t n, std::int64_t m) {
  const double dn = static_cast<double>(n);
  const double dm = static_cast<double>(m);
  const double inner =
      6.0 * dn * pm.sum_p_pi * pm.sum_p_pi + pm.sum_pi_sq + 6.0 * dm * dm * pm.mu * pm.mu / dn;
  const double min_factor = pm.mu > 1.0 ? 1.0 / pm.mu : 1.0;
  return min_factor * inner;
}

double c_term(double mu_val, double c) {
  if (c <= 0.0) return 0.0;  // read as zero when c vanishes
  return 18.0 * std::pow(5.55 * mu_val * c, 0.49 / c);
}

double d_term(double d, double mu_val) {
  if (d == 0.0) return 0.0;
  const double first = 8.1 * d;
  if (mu_val <= 0.0) return first;  // second arm is +infinity
  return std::min(first, 2.15 * std::cbrt(d / mu_val));
}

Validity theorem1_validity(std::int64_t n, double max_p) {
  Validity v;
  if (n < 4) v.violated.push_back("n >= 4");
  if (!(max_p <= 0.13)) v.violated.push_back("max p <= 0.13");
  if (!(static_cast<double>(n + 1) * max_p < 4.0)) v.violated.push_back("(n+1)max p < 4");
  v.valid = v.violated.empty();
  return v;
}

}  // namespace

std::vector<double> cell_pi(const ClassificationScheme& scheme, std::int64_t n, std::int64_t m) {
  if (m < 1) throw std::domain_error("cell_pi: m must be >= 1");
  if (n < m) throw std::domain_error("cell_pi: n must be >= m");
  const double lb = log_binom(n, m);
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(scheme.size()));
  for (double p : scheme.probs()) out.push_back(pi_of_p(lb, p, n, m));
  return out;
}

double mu(const ClassificationScheme& scheme, std::int64_t n, std::int64_t m) {
  if (m < 1) throw std::domain_error("mu: m must be >= 1");
  if (n < m) throw std::domain_error("mu: n must be >= m");
  return pi_moments(scheme, n, m).mu;
}

double c_lambda(const ClassificationScheme& scheme, double lambda) {
  if (!(lambda > -1.0)) throw std::invalid_argument("c_lambda: lambda must be > -1");
  if (lambda == 0.0 || scheme.kind() == SchemeKind::uniform) return 0.0;
  const double expectation = scheme.moment(-lambda);
  double worst = 0.0;
  for (double p : scheme.probs()) {
    const double dev = std::abs(1.0 / (std::pow(p, lambda) * expectation) - 1.0);
    if (dev > worst) worst = dev;
  }
  return worst;
}

double d_lambda(const ClassificationScheme& scheme, std::int64_t n, double lambda) {
  if (!(lambda > -1.0)) throw std::invalid_argument("d_lambda: lambda must be > -1");
  if (n < 1) throw std::invalid_argument("d_lambda: n must be >= 1");
  const double dn = static_cast<double>(n);
  if (lambda == 0.0) {
    const double l2 = std::log(2.0);
    return dn * scheme.var_log() / (4.0 * l2 * l2);
  }
  if (scheme.kind() == SchemeKind::uniform) return 0.0;  // P^-lambda is constant
  const double e1 = scheme.moment(-lambda);
  const double e2 = scheme.moment(-2.0 * lambda);
  const double var = std::max(0.0, e2 - e1 * e1);
  const double denom = std::exp2(lambda) - 1.0;
  return dn * var / (4.0 * denom * denom * e1 * e1);
}

BoundBreakdown theorem1_bound(const ClassificationScheme& scheme, std::int64_t n, double lambda) {
  const PiMoments pm = pi_moments(scheme, n, 2);
  const double max_p = scheme.max_prob();
  const double dn = static_cast<double>(n);

  BoundBreakdown b;
  b.mu = pm.mu;
  b.c_lambda_val = c_lambda(scheme, lambda);
  b.d_lambda_val = d_lambda(scheme, n, lambda);
  b.term_occupancy = 45.0 * occupancy_kernel(pm, n, 2);
  b.term_c = c_term(pm.mu, b.c_lambda_val);
  b.term_triple = 8.0 * dn * pm.mu * max_p / (4.0 - (dn + 1.0) * max_p);
  b.term_d = d_term(b.d_lambda_val, pm.mu);
  b.total = b.term_occupancy + b.term_c + b.term_triple + b.term_d;

  Validity v = theorem1_validity(n, max_p);
  b.valid = v.valid;
  b.violated = std::move(v.violated);
  return b;
}

double remark1_extra(double mu_val, double eta) {
  const double half_eta = eta / 2.0;
  const double arm1 =
      std::sqrt(2.0 / std::exp(1.0)) * std::abs(std::sqrt(mu_val) - std::sqrt(half_eta));
  const double arm2 = std::abs(mu_val - half_eta);
  return 45.0 * std::min(arm1, arm2);
}

BoundBreakdown llr_bound(const ClassificationScheme& scheme, std::int64_t n) {
  return theorem1_bound(scheme, n, 0.0);  // c_0 = 0, so term_c is already zero
}

double uniform_bound(std::int64_t n, std::int64_t r) {
  const double dn = static_cast<double>(n);
  const double dr = static_cast<double>(r);
  const double first = 45.0 * dn * dn * dn / (dr * dr * dr * dr) *
                       (1.5 * dn * dn + 0.25 * dn * dr + 6.0 * dr * dr);
  const double second = 4.0 * dn * dn * dn / (dr * (4.0 * dr - (dn + 1.0)));
  return first + second;
}

Validity uniform_validity(std::int64_t n, std::int64_t r) {
  Validity v;
  if (n < 4) v.violated.push_back("n >= 4");
  if (r < 8) v.violated.push_back("r >= 8");
  if (!(static_cast<double>(n + 1) / static_cast<double>(r) < 4.0))
    v.violated.push_back("(n+1)/r < 4");
  v.valid = v.violated.empty();
  return v;
}

BoundBreakdown uniform_breakdown(std::int64_t n, std::int64_t r) {
  const double dn = static_cast<double>(n);
  const double dr = static_cast<double>(r);
  BoundBreakdown b;
  b.term_occupancy = 45.0 * dn * dn * dn / (dr * dr * dr * dr) *
                     (1.5 * dn * dn + 0.25 * dn * dr + 6.0 * dr * dr);
  b.term_triple = 4.0 * dn * dn * dn / (dr * (4.0 * dr - (dn + 1.0)));
  b.total = b.term_occupancy + b.term_triple;
  b.mu = n >= 2 ? dr * pi_of_p(log_binom(n, 2), 1.0 / dr, n, 2) : 0.0;
  Validity v = uniform_validity(n, r);
  b.valid = v.valid;
  b.violated = std::move(v.violated);
  return b;
}

BoundBreakdown dpd_bound(std::int64_t n, std::int64_t r, double a, double lambda) {
  if (!(a >= 0.0 && a <= 1.0)) throw std::invalid_argument("dpd_bound: a must lie in [0, 1]");
  if (!(lambda > 0.0))
    throw std::domain_error(
        "dpd_bound: defined for lambda > 0 (use theorem1 on an explicit power scheme otherwise)");
  if (r < 1) throw std::invalid_argument("dpd_bound: r must be >= 1");

  const double dn = static_cast<double>(n);
  const double dr = static_cast<double>(r);
  const double z1 = harmonic(r, a);
  const double z2 = harmonic(r, 2.0 * a);
  const double z3 = harmonic(r, 3.0 * a);
  const double z4 = harmonic(r, 4.0 * a);
  const double z_lam = harmonic(r, a * (1.0 - lambda));
  const double z_2lam = harmonic(r, a * (1.0 - 2.0 * lambda));

  BoundBreakdown b;
  b.mu = dn * dn * z2 / (2.0 * z1 * z1);  // the upper surrogate for mu
  b.c_lambda_val = z1 * std::pow(dr, a * lambda) / z_lam - 1.0;

  b.term_occupancy = 45.0 * dn * dn * dn / (z1 * z1 * z1 * z1) *
                     (1.5 * dn * dn * z3 * z3 / (z1 * z1) + 0.25 * dn * z4 + 6.0 * z2 * z2);
  b.term_c = b.c_lambda_val <= 0.0
                 ? 0.0
                 : 18.0 * std::pow(2.78 * dn * dn * b.c_lambda_val * z2 / (z1 * z1),
                                   0.49 / b.c_lambda_val);
  b.term_triple = 4.0 * dn * dn * dn * z2 / (z1 * z1 * (4.0 * z1 - (dn + 1.0)));
  const double denom = std::exp2(lambda) - 1.0;
  const double var_ratio = std::max(0.0, z_2lam * z1 / (z_lam * z_lam) - 1.0);
  b.d_lambda_val = 0.25 * dn * var_ratio / (denom * denom);
  b.term_d = 8.1 * b.d_lambda_val;

  b.total = b.term_occupancy + b.term_c + b.term_triple + b.term_d;
  Validity v = theorem1_validity(n, 1.0 / z1);  // max_j p_j = p_1 = 1/z_r(a)
  b.valid = v.valid;
  b.violated = std::move(v.violated);
  return b;
}

double gaussian_bound(const ClassificationScheme& scheme, std::int64_t n, double lambda) {
  const BoundBreakdown b = theorem1_bound(scheme, n, lambda);
  if (!(b.mu > 0.0)) throw std::domain_error("gaussian_bound: mu must be positive");
  return b.total + 0.4748 / std::sqrt(b.mu);
}

double gaussian_uniform_bound(std::int64_t n, std::int64_t r) {
  const double dn = static_cast<double>(n);
  const double dr = static_cast<double>(r);
  const double f = std::pow(1.0 - 1.0 / dr, 2.0 - dn);
  const double first = 90.0 * dn * dn * dn / ((dn - 1.0) * (dn - 1.0) * dr * dr * dr) * f *
                       (1.5 * dn * dn + 0.25 * dn * dr + 6.0 * dr * dr);
  const double second = 4.0 * dn * dn * dn / (dr * (4.0 * dr - (dn + 1.0)));
  const double third = 0.4748 / (dn - 1.0) * std::sqrt(2.0 * dr * f);
  return first + second + third;
}

double occupancy_bound(const ClassificationScheme& scheme, std::int64_t n) {
  return occupancy_kernel(pi_moments(scheme, n, 2), n, 2);
}

Validity occupancy_validity(const ClassificationScheme& scheme, std::int64_t n) {
  Validity v;
  if (n < 4) v.violated.push_back("n >= 4");
  if (!(scheme.max_prob() <= 1.0 - std::sqrt(3.0) / 2.0))
    v.violated.push_back("max p <= 1 - sqrt(3)/2");
  v.valid = v.violated.empty();
  return v;
}

BoundBreakdown generalized_bound(const GeneralizedSpec& gspec, const ClassificationScheme& scheme,
                                 std::int64_t n) {
  if (gspec.m < 1) throw std::invalid_argument("generalized_bound: m must be >= 1");
  if (n < 2 * gspec.m) throw std::domain_error("generalized_bound: requires n >= 2m");
  if (gspec.var_r < 0.0) throw std::invalid_argument("generalized_bound: Var(R) must be >= 0");
  if (static_cast<std::int64_t>(gspec.h_values.size()) != scheme.size())
    throw std::invalid_argument("generalized_bound: h must have one value per cell");

  double c = 0.0;
  for (double h : gspec.h_values) {
    if (!(h > 0.0)) throw std::invalid_argument("generalized_bound: h values must be positive");
    c = std::max(c, std::abs(h - 1.0));
  }

  const PiMoments pm = pi_moments(scheme, n, gspec.m);
  const double dn = static_cast<double>(n);
  const double dm = static_cast<double>(gspec.m);
  const double max_p = scheme.max_prob();

  BoundBreakdown b;
  b.mu = pm.mu;
  b.c_lambda_val = c;
  b.d_lambda_val = gspec.var_r;
  b.term_occupancy = 45.0 * occupancy_kernel(pm, n, gspec.m);
  b.term_c = c_term(pm.mu, c);
  b.term_triple = 6.0 * (dm + 2.0) * dn * pm.mu * max_p /
                  ((dm + 1.0) * (dm + 2.0 - (dn + 1.0) * max_p));
  b.term_d = 8.1 * gspec.var_r;
  b.total = b.term_occupancy + b.term_c + b.term_triple + b.term_d;

  if (!(std::pow(1.0 - max_p, dm) >= 0.75)) b.violated.push_back("(1-p)^m >= 3/4");
  if (!((dn + 1.0) * max_p < dm + 2.0)) b.violated.push_back("(n+1)max p < m+2");
  b.valid = b.violated.empty();
  return b;
}

std::vector<double> power_divergence_h(const ClassificationScheme& scheme, double lambda) {
  const double expectation = scheme.moment(-lambda);
  std::vector<double> h;
  h.reserve(static_cast<std::size_t>(scheme.size()));
  for (double p : scheme.probs()) h.push_back(1.0 / (std::pow(p, lambda) * expectation));
  return h;
}

}  // namespace powdiv
