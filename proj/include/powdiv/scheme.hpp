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
#include <memory>
#include <mutex>
#include <unordered_map>
#include <vector>

namespace powdiv {

enum class SchemeKind { explicit_probs, uniform, power };

// Unvalidated description of a classification scheme. Use build_scheme to
// turn it into a ClassificationScheme.
struct SchemeDescriptor {
  SchemeKind kind = SchemeKind::uniform;
  std::vector<double> probs;  // explicit_probs only
  std::int64_t r = 0;         // uniform / power
  double a = 0.0;             // power only, must lie in [0, 1]

  static SchemeDescriptor explicit_probs(std::vector<double> probs);
  static SchemeDescriptor uniform(std::int64_t r);
  static SchemeDescriptor power(double a, std::int64_t r);
};

// Generalised harmonic number z_r(a) = sum_{k=1..r} k^(-a), computed with
// compensated summation. Defined for any real a; throws for r < 1.
double harmonic(std::int64_t r, double a);

// Cell probabilities p_1..p_r of a multinomial classification, together with
// the moment functionals of the random variable P defined by
// P(P = p_j) = p_j. Every bound formula is expressed through E[P^x],
// Var(log P) and max_j p_j, so those live here.
//
// Instances are immutable after construction. Moment values are memoized
// behind a lock, so a scheme can be shared by concurrent readers.
class ClassificationScheme {
 public:
  SchemeKind kind() const { return kind_; }
  std::int64_t size() const { return static_cast<std::int64_t>(probs_.size()); }
  double power_exponent() const { return a_; }
  const std::vector<double>& probs() const { return probs_; }
  double prob(std::int64_t cell) const { return probs_[static_cast<std::size_t>(cell)]; }
  double max_prob() const { return max_prob_; }

  // E[P^x] = sum_j p_j^(1+x). Uniform schemes use the closed form r^(-x),
  // power schemes z_r(a(1+x)) / z_r(a)^(1+x); explicit ones are summed
  // with compensation. Negative x is safe since all p_j > 0.
  double moment(double x) const;

  // Var(log P); exactly zero for uniform schemes.
  double var_log() const;

  ClassificationScheme(ClassificationScheme&&) = default;
  ClassificationScheme& operator=(ClassificationScheme&&) = default;

 private:
  friend ClassificationScheme build_scheme(const SchemeDescriptor& desc);
  ClassificationScheme() = default;

  double moment_uncached(double x) const;

  SchemeKind kind_ = SchemeKind::uniform;
  std::vector<double> probs_;
  double a_ = 0.0;
  double z_a_ = 0.0;  // z_r(a), power schemes only
  double max_prob_ = 0.0;

  struct MomentCache {
    std::mutex mutex;
    std::unordered_map<std::uint64_t, double> values;  // keyed by bit pattern of x
  };
  std::unique_ptr<MomentCache> cache_;
};

// Validates the descriptor and builds the scheme.
// Throws std::invalid_argument on: a non-positive probability, probabilities
// not summing to 1 within 1e-12, r < 1, or a power exponent outside [0, 1].
ClassificationScheme build_scheme(const SchemeDescriptor& desc);

inline double moment(const ClassificationScheme& scheme, double x) { return scheme.moment(x); }
inline double var_log(const ClassificationScheme& scheme) { return scheme.var_log(); }

}  // namespace powdiv
