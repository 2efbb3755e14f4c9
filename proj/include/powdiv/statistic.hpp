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
#include <span>
#include <utility>
#include <vector>

#include "powdiv/scheme.hpp"

namespace powdiv {

// Index parameter and trial count of a power divergence statistic.
// The family is defined for lambda > -1; below that the statistic is infinite
// with high probability in the sparse regime, so construction rejects it.
struct StatisticConfig {
  double lambda;
  std::int64_t n;
  double g2;  // g_lambda(2), nonzero for every lambda > -1

  StatisticConfig(double lambda, std::int64_t n);
};

// Observed class frequencies N_1..N_r with sum n. Stored sparsely as sorted
// (cell, count) pairs with positive counts; the dense vector form is
// recoverable on demand. Cell indices are 0-based in memory (file formats
// use the 1-based convention, see io).
class Counts {
 public:
  static Counts from_dense(std::span<const std::int64_t> dense);
  static Counts from_sparse(std::vector<std::pair<std::int64_t, std::int64_t>> occupied,
                            std::int64_t r);
  static Counts from_assignments(std::span<const std::int64_t> cells, std::int64_t r);

  std::int64_t size() const { return r_; }    // number of cells
  std::int64_t total() const { return n_; }   // number of trials
  const std::vector<std::pair<std::int64_t, std::int64_t>>& occupied() const { return occupied_; }
  std::vector<std::int64_t> dense() const;

 private:
  std::vector<std::pair<std::int64_t, std::int64_t>> occupied_;
  std::int64_t r_ = 0;
  std::int64_t n_ = 0;
};

// g_lambda(x) for x >= 0:
//   2x log x            when lambda = 0,
//   2x(x^lambda - 1) / (lambda(lambda+1)) otherwise,
// with g_lambda(0) = 0 by continuity for all lambda > -1. The general branch
// is evaluated through expm1(lambda log x) to avoid cancellation near x = 1
// and small lambda; the lambda = 0 branch is taken only for lambda exactly 0.
double g_lambda(double lambda, double x);
inline double g_lambda(const StatisticConfig& cfg, double x) { return g_lambda(cfg.lambda, x); }

enum class EvalPath { automatic, dense, sparse };

// T_lambda = n sum_j p_j g_lambda(N_j / (n p_j)).
// The dense path evaluates the definition over all r cells; the sparse path
// uses the split T = n^-lambda sum_j p_j^-lambda g(N_j) + n sum_k p_X_k g(1/(n p_X_k))
// and costs O(occupied cells). automatic picks sparse when r > 10 n.
double t_lambda(const StatisticConfig& cfg, const ClassificationScheme& scheme,
                const Counts& counts, EvalPath path = EvalPath::automatic);

struct Normalization {
  double center;  // n^2 E[P g_lambda((nP)^-1)]
  double scale;   // n^lambda / (g_lambda(2) E[P^-lambda])
};
Normalization normalization(const StatisticConfig& cfg, const ClassificationScheme& scheme);

// The normalised statistic: scale * (T_lambda - center).
double t_tilde(const StatisticConfig& cfg, const ClassificationScheme& scheme,
               const Counts& counts, EvalPath path = EvalPath::automatic);

struct RepresentationSplit {
  double w_part;  // normalised cell-sum term W
  double r_part;  // normalised sample-term remainder R; exactly 0 for uniform schemes
};

// Splits the normalised statistic as T~ = W + R with
//   W = (g2 E[P^-lambda])^-1 sum_j p_j^-lambda g(N_j)           (occupied cells only)
//   R = n^(lambda+1) (g2 E[P^-lambda])^-1 (sum_k p_X_k g(1/(n p_X_k)) - n E[P g((nP)^-1)]).
// The assignment form evaluates the sample term in the given order; the
// Counts form collapses it to sum_j N_j p_j g(1/(n p_j)).
RepresentationSplit representation_split(const StatisticConfig& cfg,
                                         const ClassificationScheme& scheme,
                                         std::span<const std::int64_t> assignments);
RepresentationSplit representation_split(const StatisticConfig& cfg,
                                         const ClassificationScheme& scheme,
                                         const Counts& counts);

// Number of cells with N_j exactly m; O(occupied cells) for m >= 1.
std::int64_t occupancy_count(const Counts& counts, std::int64_t m);

// Batch evaluator for the sparse path: hoists the per-(config, scheme)
// constants (normalisation, expectation term) out of the replicate loop.
// Shares no mutable state, so one instance serves many threads.
class TTildeEvaluator {
 public:
  TTildeEvaluator(const StatisticConfig& cfg, const ClassificationScheme& scheme);

  RepresentationSplit split(
      std::span<const std::pair<std::int64_t, std::int64_t>> occupied) const;
  double t_tilde(std::span<const std::pair<std::int64_t, std::int64_t>> occupied) const {
    const RepresentationSplit s = split(occupied);
    return s.w_part + s.r_part;
  }

 private:
  const ClassificationScheme* scheme_;
  double lambda_;
  double g2_;
  double inv_norm_;     // 1 / (g2 E[P^-lambda])
  double n_pow_lam1_;   // n^(lambda+1)
  double expect_term_;  // n E[P g((nP)^-1)]
  std::int64_t n_;
  bool uniform_;
};

}  // namespace powdiv
