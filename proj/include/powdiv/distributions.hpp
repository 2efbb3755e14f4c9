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

namespace powdiv {

// Poisson(mu) probability mass at integer k; 0 for k < 0.
double poisson_pmf(double mu, std::int64_t k);

// P(Z >= y) for Z ~ Poisson(mu), evaluated over the real line with the
// survival (>=) convention: 1 for y <= 0, and the tail sum from ceil(y)
// otherwise. Uses the stable pmf recurrence and switches between head
// (complement) and direct tail summation around the mean.
double poisson_survival(double mu, double y);

// P(Z > y): the just-above limit of the survival function.
double poisson_survival_above(double mu, double y);

// Smallest integer K >= 0 with poisson_survival(mu, K) < tail.
std::int64_t poisson_tail_cut(double mu, double tail = 1e-12);

// P(N >= y) for a standard Gaussian, via the complementary error function.
double normal_survival(double y);

}  // namespace powdiv
