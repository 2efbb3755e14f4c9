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
#include <string>
#include <vector>

#include "powdiv/scheme.hpp"

namespace powdiv {

// Finite-sample assumption check. Bounds are computed even when assumptions
// fail; the caller decides whether the number is still meaningful.
struct Validity {
  bool valid = true;
  std::vector<std::string> violated;
};

// One Poisson-approximation bound, term by term.
//   term_occupancy: 45 min{1, 1/mu} (6n [sum p_j pi_j]^2 + sum pi_j^2 + 24 mu^2 / n)
//   term_c:         18 (5.55 mu c_lambda)^(0.49 / c_lambda), zero when c_lambda = 0
//   term_triple:    8 n mu max_j p_j / (4 - (n+1) max_j p_j)
//   term_d:         min{ 8.1 d_lambda, 2.15 (d_lambda / mu)^(1/3) }
struct BoundBreakdown {
  double term_occupancy = 0.0;
  double term_c = 0.0;
  double term_triple = 0.0;
  double term_d = 0.0;
  double total = 0.0;
  double mu = 0.0;
  double c_lambda_val = 0.0;
  double d_lambda_val = 0.0;
  bool valid = true;
  std::vector<std::string> violated;
};

// Inputs of the generalised bound: a statistic W = g(m)^-1 sum_j h(p_j) g(N_j)
// built from a function g vanishing at 0..m-1, plus a remainder R with
// E[R] = 0 and Var(R) = var_r.
struct GeneralizedSpec {
  std::int64_t m = 2;            // vanishing order of g
  std::vector<double> h_values;  // h(p_j) per cell, strictly positive
  double var_r = 0.0;
};

// pi_j = C(n, m) p_j^m (1 - p_j)^(n - m), evaluated in log space.
// Throws std::domain_error when n < m.
std::vector<double> cell_pi(const ClassificationScheme& scheme, std::int64_t n, std::int64_t m);

// mu = sum_j pi_j, the mean of the approximating Poisson law.
double mu(const ClassificationScheme& scheme, std::int64_t n, std::int64_t m);

// c_lambda = max_j | 1 / (p_j^lambda E[P^-lambda]) - 1 |; zero when lambda = 0
// or the scheme is uniform.
double c_lambda(const ClassificationScheme& scheme, double lambda);

// d_lambda = n Var(log P) / (4 log(2)^2) at lambda = 0, otherwise
// n Var(P^-lambda) / (4 (2^lambda - 1)^2 E[P^-lambda]^2).
double d_lambda(const ClassificationScheme& scheme, std::int64_t n, double lambda);

// The main four-term Poisson approximation bound on d_K(T~_lambda, Poisson(mu)).
// Assumptions (n >= 4, max p <= 0.13, (n+1) max p < 4) are reported, not
// enforced: the breakdown is computed as written either way.
BoundBreakdown theorem1_bound(const ClassificationScheme& scheme, std::int64_t n, double lambda);

// Extra term for swapping Poisson(mu) for Poisson(eta/2):
// 45 min{ sqrt(2/e) |sqrt(mu) - sqrt(eta/2)|, |mu - eta/2| }.
double remark1_extra(double mu, double eta);

// Log-likelihood-ratio convenience: theorem1_bound at lambda = 0.
BoundBreakdown llr_bound(const ClassificationScheme& scheme, std::int64_t n);

// Uniform-allocation form of the bound, independent of lambda:
//   45 n^3 / r^4 (3n^2/2 + nr/4 + 6r^2) + 4 n^3 / (r (4r - (n+1))).
double uniform_bound(std::int64_t n, std::int64_t r);
Validity uniform_validity(std::int64_t n, std::int64_t r);  // n >= 4, r >= 8, (n+1)/r < 4
BoundBreakdown uniform_breakdown(std::int64_t n, std::int64_t r);

// Discrete power distribution bound (p_j proportional to j^-a), assembled
// from generalised harmonic numbers with the closed-form c_lambda. Only
// defined for lambda > 0; at a = 0 it reduces to uniform_bound.
BoundBreakdown dpd_bound(std::int64_t n, std::int64_t r, double a, double lambda);

// Gaussian approximation bound for (T~ - mu)/sqrt(mu):
// theorem1_bound(...).total + 0.4748 / sqrt(mu). Throws when mu = 0.
double gaussian_bound(const ClassificationScheme& scheme, std::int64_t n, double lambda);

// Uniform-allocation specialisation of the Gaussian bound (a separate,
// looser expression using mu <= n^2/(2r) and min{1, 1/mu} <= 1/mu).
double gaussian_uniform_bound(std::int64_t n, std::int64_t r);

// Poisson approximation bound for the occupancy statistic U = #{j : N_j = 2}:
// min{1, 1/mu} (6n [sum p_j pi_j]^2 + sum pi_j^2 + 24 mu^2 / n).
// Shares its code path with theorem1_bound, so 45 * occupancy_bound equals
// term_occupancy exactly.
double occupancy_bound(const ClassificationScheme& scheme, std::int64_t n);
Validity occupancy_validity(const ClassificationScheme& scheme, std::int64_t n);

// The general m-level bound:
//   45 min{1, 1/mu} (6n [sum p_j pi_j]^2 + sum pi_j^2 + 6 m^2 mu^2 / n)
//   + 18 (5.55 mu c)^(0.49/c) + 6(m+2) n mu max p / ((m+1)(m+2 - (n+1) max p))
//   + 8.1 Var(R),   with c = max_j |h(p_j) - 1|.
// Throws std::domain_error when n < 2m.
BoundBreakdown generalized_bound(const GeneralizedSpec& gspec, const ClassificationScheme& scheme,
                                 std::int64_t n);

// h(p_j) = 1 / (p_j^lambda E[P^-lambda]): the weight function that reduces
// the generalised bound to theorem1_bound at m = 2.
std::vector<double> power_divergence_h(const ClassificationScheme& scheme, double lambda);

}  // namespace powdiv
