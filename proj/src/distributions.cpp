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

#include "powdiv/distributions.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>


namespace powdiv {

namespace {

double log_poisson_pmf(double mu, std::int64_t k) {
  const double kk = static_cast<double>(k);
  return (k == 0 ? 0.0 : kk * std::log(mu)) - mu - std::lgamma(kk + 1.0);
}

// P(Z >= k0) for mu below the exp(-mu) underflow point: the complement of a
// single extended-precision head chain. One shared chain keeps adjacent
// survival values consistent to ~1e-19, which both the survival-step
// identity and the 1e-12 tail bookkeeping rely on.
double poisson_survival_head(double mu, std::int64_t k0) {
  long double term = std::exp(static_cast<long double>(-mu));
  long double sum = term;
  for (std::int64_t k = 1; k < k0; ++k) {
    term *= mu / static_cast<long double>(k);
    sum += term;
    if (static_cast<double>(k) > mu && term < sum * 1e-22L) break;  // tail exhausted
  }
  const long double s = 1.0L - sum;
  return s > 0.0L ? static_cast<double>(s) : 0.0;
}

// mu >= 700: anchor the chain at k_max via lgamma instead.
double poisson_cdf_large(double mu, std::int64_t k_max) {
  if (k_max < 0) return 0.0;
  long double term = std::exp(static_cast<long double>(log_poisson_pmf(mu, k_max)));
  long double sum = term;
  for (std::int64_t k = k_max; k >= 1; --k) {
    term *= static_cast<long double>(k) / mu;
    if (term == 0.0L || term < sum * 1e-21L) break;
    sum += term;
  }
  return static_cast<double>(sum);
}

// P(Z >= k0) summed directly, for k0 above the mean.
double poisson_tail(double mu, std::int64_t k0) {
  long double term = std::exp(static_cast<long double>(log_poisson_pmf(mu, k0)));
  if (term == 0.0L) return 0.0;
  long double sum = term;
  for (std::int64_t k = k0 + 1;; ++k) {
    term *= mu / static_cast<long double>(k);
    if (term == 0.0L || term < sum * 1e-21L) break;
    sum += term;
  }
  return static_cast<double>(sum);
}

}  // namespace

double poisson_pmf(double mu, std::int64_t k) {
  if (!(mu >= 0.0)) throw std::domain_error("poisson_pmf: mu must be >= 0");
  if (k < 0) return 0.0;
  if (mu == 0.0) return k == 0 ? 1.0 : 0.0;
  return std::exp(log_poisson_pmf(mu, k));
}

double poisson_survival(double mu, double y) {
  if (!(mu >= 0.0)) throw std::domain_error("poisson_survival: mu must be >= 0");
  if (!(y > 0.0)) return 1.0;  // support is the non-negative integers
  if (y > 9.0e18) return 0.0;
  const std::int64_t k0 = static_cast<std::int64_t>(std::ceil(y));
  if (mu == 0.0) return 0.0;  // k0 >= 1 here
  if (mu < 700.0) return poisson_survival_head(mu, k0);
  if (static_cast<double>(k0) <= mu) {
    const double s = 1.0 - poisson_cdf_large(mu, k0 - 1);
    return s < 0.0 ? 0.0 : (s > 1.0 ? 1.0 : s);
  }
  const double s = poisson_tail(mu, k0);
  return s > 1.0 ? 1.0 : s;
}

double poisson_survival_above(double mu, double y) {
  return poisson_survival(mu, std::floor(y) + 1.0);
}

std::int64_t poisson_tail_cut(double mu, double tail) {
  if (!(mu >= 0.0)) throw std::domain_error("poisson_tail_cut: mu must be >= 0");
  std::int64_t k = mu > 1.0 ? static_cast<std::int64_t>(std::floor(mu)) : 0;
  while (poisson_survival(mu, static_cast<double>(k)) >= tail) ++k;
  return k;
}

double normal_survival(double y) {
  return 0.5 * std::erfc(y / std::sqrt(2.0));
}

}  // namespace powdiv
