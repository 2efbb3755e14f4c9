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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "powdiv/distributions.hpp"
#include "approx.hpp"

using namespace powdiv;
using powdiv_test::within_abs;
using powdiv_test::within_rel;

TEST_CASE("poisson_survival: closed-form spot values") {
  CHECK(within_abs(poisson_survival(1.0, 1.0), 1.0 - std::exp(-1.0), 1e-15));
  CHECK(poisson_survival(2.5, 0.0) == 1.0);
  CHECK(poisson_survival(2.5, -3.0) == 1.0);
  const double mu = 0.033;
  const double two_term =
      static_cast<double>(1.0L - std::exp(static_cast<long double>(-mu)) *
                                     (1.0L + static_cast<long double>(mu)));
  CHECK(within_rel(poisson_survival(mu, 2.0), two_term, 1e-13));
  CHECK_THROWS_AS(poisson_survival(-1.0, 0.5), std::domain_error);
}

TEST_CASE("poisson_survival: degenerate mu = 0") {
  CHECK(poisson_survival(0.0, 0.0) == 1.0);
  CHECK(poisson_survival(0.0, 0.5) == 0.0);
  CHECK(poisson_survival(0.0, 3.0) == 0.0);
}

TEST_CASE("poisson_survival: non-increasing in y, step equals pmf") {
  for (double mu : {0.01, 0.5742188, 3.0, 40.0, 1234.5}) {
    double prev = 1.0;
    for (double y = -1.0; y <= mu + 12.0 * std::sqrt(mu) + 3.0; y += 0.5) {
      const double s = poisson_survival(mu, y);
      CHECK(s <= prev + 1e-15);
      prev = s;
    }
    // past the exp(-700) underflow point the lgamma-anchored start caps the
    // achievable consistency, hence the looser tolerance there
    const double tol = mu < 700.0 ? 1e-14 : 1e-11;
    for (std::int64_t k = 0; k < static_cast<std::int64_t>(mu + 8.0 * std::sqrt(mu)) + 4; ++k) {
      const double y = static_cast<double>(k);
      const double diff = poisson_survival(mu, y) - poisson_survival(mu, y + 1.0);
      CHECK(within_abs(diff, poisson_pmf(mu, k < 1 ? 0 : k), tol));
    }
  }
}

TEST_CASE("poisson_survival: non-integer y matches the ceiling lattice point") {
  for (double mu : {0.1, 2.0, 9.0}) {
    CHECK(poisson_survival(mu, 1.5) == poisson_survival(mu, 2.0));
    CHECK(poisson_survival(mu, 0.0001) == poisson_survival(mu, 1.0));
  }
}

TEST_CASE("poisson_survival_above at the lattice") {
  const double mu = 1.7;
  CHECK(poisson_survival_above(mu, 0.0) == poisson_survival(mu, 1.0));
  CHECK(poisson_survival_above(mu, 2.0) == poisson_survival(mu, 3.0));
  CHECK(poisson_survival_above(mu, 2.5) == poisson_survival(mu, 3.0));
  CHECK(poisson_survival_above(mu, -0.5) == 1.0);
}

TEST_CASE("poisson_pmf sums to one") {
  for (double mu : {0.3, 5.0, 77.0}) {
    long double total = 0.0L;
    for (std::int64_t k = 0; k < static_cast<std::int64_t>(mu + 20.0 * std::sqrt(mu)) + 20; ++k)
      total += poisson_pmf(mu, k);
    CHECK(within_abs(static_cast<double>(total), 1.0, 1e-12));
  }
  CHECK(poisson_pmf(2.0, -1) == 0.0);
}

TEST_CASE("poisson_tail_cut finds the 1e-12 tail") {
  for (double mu : {0.0, 0.0033, 0.574, 5.0, 250.0}) {
    const std::int64_t k = poisson_tail_cut(mu);
    CHECK(poisson_survival(mu, static_cast<double>(k)) < 1e-12);
    if (k > 0) CHECK(poisson_survival(mu, static_cast<double>(k - 1)) >= 1e-12);
  }
}

TEST_CASE("normal_survival: symmetry, tails, quantile") {
  CHECK(normal_survival(0.0) == 0.5);
  CHECK(normal_survival(50.0) == 0.0);
  CHECK(within_abs(normal_survival(-50.0), 1.0, 1e-15));
  CHECK(within_abs(normal_survival(1.959964), 0.025, 1e-6));
  CHECK(within_abs(normal_survival(1.0) + normal_survival(-1.0), 1.0, 1e-14));
}
