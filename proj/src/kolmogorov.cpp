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

#include "powdiv/kolmogorov.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "powdiv/distributions.hpp"

namespace powdiv {

double dkw_margin(std::size_t n_samples, double alpha) {
  if (n_samples == 0) throw std::invalid_argument("dkw_margin: need at least one sample");
  return std::sqrt(std::log(2.0 / alpha) / (2.0 * static_cast<double>(n_samples)));
}

namespace {

// Survival table for Poisson(mu) on 0..K, built backward so deep-tail
// entries keep their relative accuracy.
struct PoissonTable {
  std::int64_t k_cut = 0;
  std::vector<double> survival;  // survival[k] = P(Z >= k), k = 0..K+1

  explicit PoissonTable(double mu) {
    k_cut = poisson_tail_cut(mu);
    std::vector<double> pmf(static_cast<std::size_t>(k_cut) + 1);
    for (std::int64_t k = 0; k <= k_cut; ++k)
      pmf[static_cast<std::size_t>(k)] = poisson_pmf(mu, k);
    survival.assign(static_cast<std::size_t>(k_cut) + 2, 0.0);
    survival[static_cast<std::size_t>(k_cut) + 1] =
        poisson_survival(mu, static_cast<double>(k_cut) + 1.0);
    for (std::int64_t k = k_cut; k >= 0; --k)
      survival[static_cast<std::size_t>(k)] =
          survival[static_cast<std::size_t>(k) + 1] + pmf[static_cast<std::size_t>(k)];
    if (survival[0] > 1.0) survival[0] = 1.0;
  }

  double at(double mu, double y) const {  // P(Z >= y)
    if (!(y > 0.0)) return 1.0;
    const double ky = std::ceil(y);
    if (ky <= static_cast<double>(k_cut) + 1.0)
      return survival[static_cast<std::size_t>(ky)];
    return poisson_survival(mu, y);  // sample atoms beyond the cut
  }
  double above(double mu, double y) const { return at(mu, std::floor(y) + 1.0); }
};

}  // namespace

KolmogorovReport empirical_dk(std::span<const double> samples,
                              const ReferenceDistribution& reference) {
  if (samples.empty()) throw std::invalid_argument("empirical_dk: need at least one sample");
  if (!std::is_sorted(samples.begin(), samples.end()))
    throw std::invalid_argument("empirical_dk: samples must be sorted ascending");

  const double n = static_cast<double>(samples.size());

  // Candidate atoms: distinct sample values, plus the reference lattice for
  // the Poisson case. Ties collapse to one atom with multiplicity carried by
  // the empirical counts.
  std::vector<double> candidates;
  candidates.reserve(samples.size());
  for (double v : samples)
    if (candidates.empty() || candidates.back() != v) candidates.push_back(v);

  const bool poisson = reference.kind == ReferenceDistribution::Kind::poisson;
  std::optional<PoissonTable> table;
  if (poisson) {
    if (!(reference.mu >= 0.0)) throw std::domain_error("empirical_dk: Poisson mu must be >= 0");
    table.emplace(reference.mu);
    std::vector<double> merged;
    merged.reserve(candidates.size() + static_cast<std::size_t>(table->k_cut) + 1);
    std::vector<double> lattice;
    lattice.reserve(static_cast<std::size_t>(table->k_cut) + 1);
    for (std::int64_t k = 0; k <= table->k_cut; ++k)
      lattice.push_back(static_cast<double>(k));
    std::merge(candidates.begin(), candidates.end(), lattice.begin(), lattice.end(),
               std::back_inserter(merged));
    merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
    candidates = std::move(merged);
  }

  KolmogorovReport report;
  report.dkw_margin = dkw_margin(samples.size());
  report.tail_truncation =
      poisson ? table->survival[static_cast<std::size_t>(table->k_cut)] : 0.0;

  for (double c : candidates) {
    // empirical survival at c and just above c
    const auto first_ge = std::lower_bound(samples.begin(), samples.end(), c);
    const auto first_gt = std::upper_bound(first_ge, samples.end(), c);
    const double emp_at = static_cast<double>(samples.end() - first_ge) / n;
    const double emp_above = static_cast<double>(samples.end() - first_gt) / n;

    double ref_at, ref_above;
    if (poisson) {
      ref_at = table->at(reference.mu, c);
      ref_above = table->above(reference.mu, c);
    } else {
      ref_at = normal_survival(c);
      ref_above = ref_at;  // continuous reference
    }

    const double gap = std::max(std::abs(emp_at - ref_at), std::abs(emp_above - ref_above));
    if (gap > report.d_hat) {
      report.d_hat = gap;
      report.argmax_point = c;
    }
  }
  if (report.d_hat > 1.0) report.d_hat = 1.0;
  return report;
}

}  // namespace powdiv
