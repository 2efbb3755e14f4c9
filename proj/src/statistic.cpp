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

#include "powdiv/statistic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "powdiv/kahan.hpp"

namespace powdiv {

StatisticConfig::StatisticConfig(double lambda_in, std::int64_t n_in)
    : lambda(lambda_in), n(n_in) {
  if (!(lambda > -1.0))
    throw std::invalid_argument("statistic: lambda must be > -1");
  if (n < 1) throw std::invalid_argument("statistic: n must be >= 1");
  g2 = g_lambda(lambda, 2.0);
}

double g_lambda(double lambda, double x) {
  if (!(lambda > -1.0)) throw std::invalid_argument("g_lambda: lambda must be > -1");
  if (x < 0.0) throw std::domain_error("g_lambda: x must be >= 0");
  if (x == 0.0) return 0.0;  // continuity limit, x^(lambda+1) -> 0
  if (lambda == 0.0) return 2.0 * x * std::log(x);
  return 2.0 * x * std::expm1(lambda * std::log(x)) / (lambda * (lambda + 1.0));
}

Counts Counts::from_dense(std::span<const std::int64_t> dense) {
  Counts c;
  c.r_ = static_cast<std::int64_t>(dense.size());
  for (std::int64_t j = 0; j < c.r_; ++j) {
    const std::int64_t v = dense[static_cast<std::size_t>(j)];
    if (v < 0) throw std::invalid_argument("counts: negative count");
    if (v > 0) c.occupied_.emplace_back(j, v);
    c.n_ += v;
  }
  return c;
}

Counts Counts::from_sparse(std::vector<std::pair<std::int64_t, std::int64_t>> occupied,
                           std::int64_t r) {
  std::sort(occupied.begin(), occupied.end());
  Counts c;
  c.r_ = r;
  for (const auto& [cell, count] : occupied) {
    if (cell < 0 || cell >= r) throw std::invalid_argument("counts: cell index out of range");
    if (count <= 0) throw std::invalid_argument("counts: sparse counts must be positive");
    if (!c.occupied_.empty() && c.occupied_.back().first == cell) {
      c.occupied_.back().second += count;
    } else {
      c.occupied_.emplace_back(cell, count);
    }
    c.n_ += count;
  }
  return c;
}

Counts Counts::from_assignments(std::span<const std::int64_t> cells, std::int64_t r) {
  std::vector<std::int64_t> sorted(cells.begin(), cells.end());
  std::sort(sorted.begin(), sorted.end());
  Counts c;
  c.r_ = r;
  c.n_ = static_cast<std::int64_t>(sorted.size());
  for (std::size_t i = 0; i < sorted.size();) {
    const std::int64_t cell = sorted[i];
    if (cell < 0 || cell >= r) throw std::invalid_argument("counts: cell index out of range");
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == cell) ++j;
    c.occupied_.emplace_back(cell, static_cast<std::int64_t>(j - i));
    i = j;
  }
  return c;
}

std::vector<std::int64_t> Counts::dense() const {
  std::vector<std::int64_t> out(static_cast<std::size_t>(r_), 0);
  for (const auto& [cell, count] : occupied_) out[static_cast<std::size_t>(cell)] = count;
  return out;
}

namespace {

void check_compatible(const StatisticConfig& cfg, const ClassificationScheme& scheme,
                      const Counts& counts) {
  if (counts.size() != scheme.size())
    throw std::invalid_argument("statistic: counts and scheme have different cell counts");
  if (counts.total() != cfg.n)
    throw std::invalid_argument("statistic: counts total differs from configured n");
}

double t_lambda_dense(const StatisticConfig& cfg, const ClassificationScheme& scheme,
                      const Counts& counts) {
  const double n = static_cast<double>(cfg.n);
  const std::vector<std::int64_t> dense = counts.dense();
  KahanSum sum;
  for (std::int64_t j = 0; j < scheme.size(); ++j) {
    const double p = scheme.prob(j);
    const double nj = static_cast<double>(dense[static_cast<std::size_t>(j)]);
    sum.add(p * g_lambda(cfg.lambda, nj / (n * p)));
  }
  return n * sum.value();
}

double t_lambda_sparse(const StatisticConfig& cfg, const ClassificationScheme& scheme,
                       const Counts& counts) {
  const double n = static_cast<double>(cfg.n);
  KahanSum cell_sum;     // sum_j p_j^-lambda g(N_j), zero cells drop since g(0) = 0
  KahanSum sample_sum;   // sum_k p_X_k g(1/(n p_X_k)) = sum_j N_j p_j g(1/(n p_j))
  for (const auto& [cell, count] : counts.occupied()) {
    const double p = scheme.prob(cell);
    const double nj = static_cast<double>(count);
    cell_sum.add(std::pow(p, -cfg.lambda) * g_lambda(cfg.lambda, nj));
    sample_sum.add(nj * p * g_lambda(cfg.lambda, 1.0 / (n * p)));
  }
  return std::pow(n, -cfg.lambda) * cell_sum.value() + n * sample_sum.value();
}

}  // namespace

double t_lambda(const StatisticConfig& cfg, const ClassificationScheme& scheme,
                const Counts& counts, EvalPath path) {
  check_compatible(cfg, scheme, counts);
  if (path == EvalPath::automatic)
    path = scheme.size() > 10 * cfg.n ? EvalPath::sparse : EvalPath::dense;
  return path == EvalPath::sparse ? t_lambda_sparse(cfg, scheme, counts)
                                  : t_lambda_dense(cfg, scheme, counts);
}

Normalization normalization(const StatisticConfig& cfg, const ClassificationScheme& scheme) {
  const double n = static_cast<double>(cfg.n);
  KahanSum expect;  // E[P g((nP)^-1)] = sum_j p_j^2 g(1/(n p_j))
  for (double p : scheme.probs()) expect.add(p * p * g_lambda(cfg.lambda, 1.0 / (n * p)));
  Normalization norm;
  norm.center = n * n * expect.value();
  norm.scale = std::pow(n, cfg.lambda) / (cfg.g2 * scheme.moment(-cfg.lambda));
  return norm;
}

double t_tilde(const StatisticConfig& cfg, const ClassificationScheme& scheme,
               const Counts& counts, EvalPath path) {
  const Normalization norm = normalization(cfg, scheme);
  return norm.scale * (t_lambda(cfg, scheme, counts, path) - norm.center);
}

TTildeEvaluator::TTildeEvaluator(const StatisticConfig& cfg, const ClassificationScheme& scheme)
    : scheme_(&scheme),
      lambda_(cfg.lambda),
      g2_(cfg.g2),
      n_(cfg.n),
      uniform_(scheme.kind() == SchemeKind::uniform) {
  inv_norm_ = 1.0 / (cfg.g2 * scheme.moment(-cfg.lambda));
  n_pow_lam1_ = std::pow(static_cast<double>(cfg.n), cfg.lambda + 1.0);
  if (uniform_) {
    expect_term_ = 0.0;  // the sample term cancels its expectation exactly
  } else {
    const double n = static_cast<double>(cfg.n);
    KahanSum expect;
    for (double p : scheme.probs()) expect.add(p * (p * g_lambda(lambda_, 1.0 / (n * p))));
    expect_term_ = n * expect.value();
  }
}

RepresentationSplit TTildeEvaluator::split(
    std::span<const std::pair<std::int64_t, std::int64_t>> occupied) const {
  KahanSum cell_sum;
  KahanSum sample_sum;
  const double n = static_cast<double>(n_);
  for (const auto& [cell, count] : occupied) {
    if (count == 1 && uniform_) continue;  // g(1) = 0 and the sample term is zero anyway
    const double p = scheme_->prob(cell);
    const double nj = static_cast<double>(count);
    if (count != 1) {
      // uniform: p^-lambda cancels E[P^-lambda] identically, so W reduces to
      // sum g(N_j) / g(2); keeping the cancellation analytic puts doubleton
      // cells exactly on the Poisson lattice
      cell_sum.add(uniform_ ? g_lambda(lambda_, nj)
                            : std::pow(p, -lambda_) * g_lambda(lambda_, nj));
    }
    if (!uniform_) sample_sum.add(nj * (p * g_lambda(lambda_, 1.0 / (n * p))));
  }
  RepresentationSplit out;
  out.w_part = uniform_ ? cell_sum.value() / g2_ : inv_norm_ * cell_sum.value();
  out.r_part =
      uniform_ ? 0.0 : n_pow_lam1_ * inv_norm_ * (sample_sum.value() - expect_term_);
  return out;
}

RepresentationSplit representation_split(const StatisticConfig& cfg,
                                         const ClassificationScheme& scheme,
                                         const Counts& counts) {
  check_compatible(cfg, scheme, counts);
  return TTildeEvaluator(cfg, scheme).split(counts.occupied());
}

RepresentationSplit representation_split(const StatisticConfig& cfg,
                                         const ClassificationScheme& scheme,
                                         std::span<const std::int64_t> assignments) {
  if (static_cast<std::int64_t>(assignments.size()) != cfg.n)
    throw std::invalid_argument("representation_split: need exactly n assignments");
  for (std::int64_t cell : assignments)
    if (cell < 0 || cell >= scheme.size())
      throw std::out_of_range("representation_split: cell index out of range");

  const Counts counts = Counts::from_assignments(assignments, scheme.size());
  const double n = static_cast<double>(cfg.n);
  const bool uniform = scheme.kind() == SchemeKind::uniform;
  const double inv_norm = 1.0 / (cfg.g2 * scheme.moment(-cfg.lambda));

  KahanSum cell_sum;
  for (const auto& [cell, count] : counts.occupied()) {
    if (count == 1) continue;  // g(1) = 0
    cell_sum.add(uniform ? g_lambda(cfg.lambda, static_cast<double>(count))
                         : std::pow(scheme.prob(cell), -cfg.lambda) *
                               g_lambda(cfg.lambda, static_cast<double>(count)));
  }

  RepresentationSplit out;
  if (uniform) {
    out.w_part = cell_sum.value() / cfg.g2;
    out.r_part = 0.0;  // p_X_k is constant, the sample term equals its expectation
    return out;
  }
  out.w_part = inv_norm * cell_sum.value();

  KahanSum sample_sum;  // evaluated in the given sample order
  for (std::int64_t cell : assignments) {
    const double p = scheme.prob(cell);
    sample_sum.add(p * g_lambda(cfg.lambda, 1.0 / (n * p)));
  }
  KahanSum expect;
  for (double p : scheme.probs()) expect.add(p * (p * g_lambda(cfg.lambda, 1.0 / (n * p))));
  out.r_part = std::pow(n, cfg.lambda + 1.0) * inv_norm *
               (sample_sum.value() - n * expect.value());
  return out;
}

std::int64_t occupancy_count(const Counts& counts, std::int64_t m) {
  if (m < 0) throw std::invalid_argument("occupancy_count: m must be >= 0");
  if (m == 0)
    return counts.size() - static_cast<std::int64_t>(counts.occupied().size());
  std::int64_t hits = 0;
  for (const auto& [cell, count] : counts.occupied())
    if (count == m) ++hits;
  return hits;
}

}  // namespace powdiv
