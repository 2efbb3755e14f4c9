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

#include <cstddef>
#include <span>

namespace powdiv {

// Empirical Kolmogorov distance in the survival convention,
// d = sup_y |P_hat(X >= y) - P(Z >= y)|, with a candidate-point audit.
struct KolmogorovReport {
  double d_hat = 0.0;            // the supremum over the candidate set
  double argmax_point = 0.0;     // candidate where it is attained
  double dkw_margin = 0.0;       // distribution-free MC half-width at 95%
  double tail_truncation = 0.0;  // bound on the neglected reference tail
};

struct ReferenceDistribution {
  enum class Kind { poisson, normal };
  Kind kind = Kind::poisson;
  double mu = 0.0;  // poisson only

  static ReferenceDistribution poisson(double mu) { return {Kind::poisson, mu}; }
  static ReferenceDistribution normal() { return {Kind::normal, 0.0}; }
};

// 95% Dvoretzky–Kiefer–Wolfowitz half-width sqrt(log(2/alpha) / (2 N)).
double dkw_margin(std::size_t n_samples, double alpha = 0.05);

// Exact supremum of the two step functions' survival difference. Both
// one-sided limits are evaluated at every atom of either distribution:
// the sample values, plus (Poisson case) the lattice 0..K where K is the
// 1e-12 tail cut. samples must be sorted ascending and non-empty.
KolmogorovReport empirical_dk(std::span<const double> sorted_samples,
                              const ReferenceDistribution& reference);

}  // namespace powdiv
