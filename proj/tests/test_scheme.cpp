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
#include <thread>

#include "powdiv/scheme.hpp"
#include "approx.hpp"

using namespace powdiv;
using powdiv_test::close;
using powdiv_test::within_rel;

TEST_CASE("build_scheme: uniform broadcasts 1/r exactly") {
  const auto s = build_scheme(SchemeDescriptor::uniform(4));
  REQUIRE(s.size() == 4);
  for (double p : s.probs()) CHECK(p == 0.25);
  CHECK(s.max_prob() == 0.25);
}

TEST_CASE("build_scheme: power(1,2) normalises by z_2(1) = 1.5") {
  const auto s = build_scheme(SchemeDescriptor::power(1.0, 2));
  CHECK(close(s.prob(0), 2.0 / 3.0, 1e-15));
  CHECK(close(s.prob(1), 1.0 / 3.0, 1e-15));
}

TEST_CASE("build_scheme: power probabilities are non-increasing") {
  const auto s = build_scheme(SchemeDescriptor::power(0.7, 100));
  for (std::int64_t j = 1; j < s.size(); ++j) CHECK(s.prob(j) <= s.prob(j - 1));
  CHECK(s.max_prob() == s.prob(0));
}

TEST_CASE("build_scheme: explicit validation") {
  CHECK_NOTHROW(build_scheme(SchemeDescriptor::explicit_probs({0.6, 0.4})));
  CHECK_THROWS_AS(build_scheme(SchemeDescriptor::explicit_probs({0.6, 0.3})),
                  std::invalid_argument);
  CHECK_THROWS_AS(build_scheme(SchemeDescriptor::explicit_probs({0.5, 0.5, 0.0})),
                  std::invalid_argument);
  CHECK_THROWS_AS(build_scheme(SchemeDescriptor::explicit_probs({1.2, -0.2})),
                  std::invalid_argument);
  CHECK_THROWS_AS(build_scheme(SchemeDescriptor::uniform(0)), std::invalid_argument);
  CHECK_THROWS_AS(build_scheme(SchemeDescriptor::power(1.5, 10)), std::invalid_argument);
  CHECK_THROWS_AS(build_scheme(SchemeDescriptor::power(-0.1, 10)), std::invalid_argument);
}

TEST_CASE("harmonic: examples") {
  CHECK(close(harmonic(4, 1.0), 25.0 / 12.0, 1e-15));
  CHECK(harmonic(1000, 0.0) == 1000.0);
  CHECK(harmonic(1, 0.37) == 1.0);
  CHECK(harmonic(1, -2.5) == 1.0);
  CHECK_THROWS_AS(harmonic(0, 1.0), std::invalid_argument);
}

TEST_CASE("harmonic: strictly increasing in r, decreasing in a for r >= 2") {
  for (double a : {-0.5, 0.0, 0.3, 1.0, 2.0}) {
    double prev = harmonic(1, a);
    for (std::int64_t r : {2, 3, 10, 100}) {
      const double cur = harmonic(r, a);
      CHECK(cur > prev);
      prev = cur;
    }
  }
  for (std::int64_t r : {2, 5, 1000}) {
    double prev = harmonic(r, -1.0);
    for (double a : {-0.5, 0.0, 0.25, 0.5, 1.0, 1.5}) {
      const double cur = harmonic(r, a);
      CHECK(cur < prev);
      prev = cur;
    }
  }
}

TEST_CASE("moment: uniform closed forms") {
  const auto s = build_scheme(SchemeDescriptor::uniform(4));
  CHECK(s.moment(-1.0) == 4.0);   // sum p_j / p_j = r
  CHECK(s.moment(0.0) == 1.0);
  for (double x : {-2.0, -0.5, 0.7, 2.0})
    CHECK(close(s.moment(x), std::pow(4.0, -x), 1e-15));
}

TEST_CASE("moment: power(1,2) follows the two-term sum") {
  const auto s = build_scheme(SchemeDescriptor::power(1.0, 2));
  // direct: (2/3)^-1 + (1/3)^-1 = 1.5 + 3
  CHECK(close(s.moment(-2.0), 4.5, 1e-13));
}

TEST_CASE("moment: normalisation E[P^0] = 1 for every kind") {
  const auto u = build_scheme(SchemeDescriptor::uniform(1000));
  const auto p = build_scheme(SchemeDescriptor::power(0.4, 2500));
  const auto e = build_scheme(SchemeDescriptor::explicit_probs({0.1, 0.2, 0.3, 0.4}));
  CHECK(close(u.moment(0.0), 1.0, 1e-12));
  CHECK(close(p.moment(0.0), 1.0, 1e-12));
  CHECK(close(e.moment(0.0), 1.0, 1e-12));
}

TEST_CASE("moment: power closed form meets the direct sum at 1e-12") {
  // oracle: long double plain summation over the explicit probabilities
  for (double a : {0.0, 0.2, 0.5, 1.0}) {
    for (std::int64_t r : {2, 17, 301}) {
      const auto s = build_scheme(SchemeDescriptor::power(a, r));
      for (double lambda : {-0.9, -0.5, 0.0, 0.5, 1.0, 2.0, 3.0}) {
        for (double x : {-2.0 * lambda, -lambda, 1.0 - lambda, 1.0}) {
          long double direct = 0.0L;
          for (double p : s.probs())
            direct += std::pow(static_cast<long double>(p), 1.0L + static_cast<long double>(x));
          CHECK(within_rel(s.moment(x), static_cast<double>(direct), 1e-12));
        }
      }
    }
  }
}

TEST_CASE("moment: memoized values are consistent under concurrent readers") {
  const auto s = build_scheme(SchemeDescriptor::power(0.3, 5000));
  const double expected = s.moment(-1.3);
  std::vector<std::thread> threads;
  std::vector<double> got(8, 0.0);
  for (int t = 0; t < 8; ++t)
    threads.emplace_back([&, t] { got[static_cast<std::size_t>(t)] = s.moment(-1.3); });
  for (auto& t : threads) t.join();
  for (double v : got) CHECK(v == expected);
}

TEST_CASE("var_log: uniform is exactly zero") {
  for (std::int64_t r : {1, 2, 7, 1000}) {
    CHECK(build_scheme(SchemeDescriptor::uniform(r)).var_log() == 0.0);
  }
  CHECK(build_scheme(SchemeDescriptor::explicit_probs({0.5, 0.5})).var_log() == 0.0);
}

TEST_CASE("var_log: power(1,2) two-term evaluation") {
  const auto s = build_scheme(SchemeDescriptor::power(1.0, 2));
  const double p1 = 2.0 / 3.0, p2 = 1.0 / 3.0;
  const double mean = p1 * std::log(p1) + p2 * std::log(p2);
  const double expected =
      p1 * std::log(p1) * std::log(p1) + p2 * std::log(p2) * std::log(p2) - mean * mean;
  CHECK(close(s.var_log(), expected, 1e-14));
  CHECK(s.var_log() >= 0.0);
}
