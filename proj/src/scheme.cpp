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

#include "powdiv/scheme.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

#include "powdiv/kahan.hpp"

namespace powdiv {

SchemeDescriptor SchemeDescriptor::explicit_probs(std::vector<double> probs) {
  SchemeDescriptor d;
  d.kind = SchemeKind::explicit_probs;
  d.r = static_cast<std::int64_t>(probs.size());
  d.probs = std::move(probs);
  return d;
}

SchemeDescriptor SchemeDescriptor::uniform(std::int64_t r) {
  SchemeDescriptor d;
  d.kind = SchemeKind::uniform;
  d.r = r;
  return d;
}

SchemeDescriptor SchemeDescriptor::power(double a, std::int64_t r) {
  SchemeDescriptor d;
  d.kind = SchemeKind::power;
  d.r = r;
  d.a = a;
  return d;
}

double harmonic(std::int64_t r, double a) {
  if (r < 1) throw std::invalid_argument("harmonic: r must be >= 1");
  if (a == 0.0) return static_cast<double>(r);  // every term is 1
  KahanSum sum;
  for (std::int64_t k = 1; k <= r; ++k) {
    sum.add(std::pow(static_cast<double>(k), -a));
  }
  return sum.value();
}

ClassificationScheme build_scheme(const SchemeDescriptor& desc) {
  if (desc.r < 1) throw std::invalid_argument("scheme: cell count r must be >= 1");

  ClassificationScheme s;
  s.kind_ = desc.kind;
  s.cache_ = std::make_unique<ClassificationScheme::MomentCache>();

  switch (desc.kind) {
    case SchemeKind::uniform: {
      s.probs_.assign(static_cast<std::size_t>(desc.r), 1.0 / static_cast<double>(desc.r));
      break;
    }
    case SchemeKind::power: {
      if (!(desc.a >= 0.0 && desc.a <= 1.0))
        throw std::invalid_argument("scheme: power exponent a must lie in [0, 1]");
      s.a_ = desc.a;
      s.z_a_ = harmonic(desc.r, desc.a);
      s.probs_.resize(static_cast<std::size_t>(desc.r));
      for (std::int64_t j = 0; j < desc.r; ++j) {
        s.probs_[static_cast<std::size_t>(j)] =
            std::pow(static_cast<double>(j + 1), -desc.a) / s.z_a_;
      }
      break;
    }
    case SchemeKind::explicit_probs: {
      if (desc.probs.empty()) throw std::invalid_argument("scheme: empty probability vector");
      s.probs_ = desc.probs;
      break;
    }
  }

  KahanSum total;
  double max_p = 0.0;
  for (double p : s.probs_) {
    if (!(p > 0.0)) throw std::invalid_argument("scheme: probabilities must be strictly positive");
    total.add(p);
    if (p > max_p) max_p = p;
  }
  if (std::abs(total.value() - 1.0) > 1e-12)
    throw std::invalid_argument("scheme: probabilities sum to " + std::to_string(total.value()) +
                                ", expected 1 within 1e-12");
  s.max_prob_ = max_p;
  return s;
}

double ClassificationScheme::moment_uncached(double x) const {
  switch (kind_) {
    case SchemeKind::uniform:
      return std::pow(static_cast<double>(size()), -x);
    case SchemeKind::power:
      return harmonic(size(), a_ * (1.0 + x)) / std::pow(z_a_, 1.0 + x);
    case SchemeKind::explicit_probs:
      break;
  }
  KahanSum sum;
  for (double p : probs_) sum.add(std::pow(p, 1.0 + x));
  return sum.value();
}

double ClassificationScheme::moment(double x) const {
  const std::uint64_t key = std::bit_cast<std::uint64_t>(x);
  {
    std::lock_guard<std::mutex> lock(cache_->mutex);
    auto it = cache_->values.find(key);
    if (it != cache_->values.end()) return it->second;
  }
  const double value = moment_uncached(x);
  std::lock_guard<std::mutex> lock(cache_->mutex);
  cache_->values.emplace(key, value);
  return value;
}

double ClassificationScheme::var_log() const {
  if (kind_ == SchemeKind::uniform) return 0.0;  // log P is constant
  KahanSum mean, second;
  for (double p : probs_) {
    const double lp = std::log(p);
    mean.add(p * lp);
    second.add(p * lp * lp);
  }
  const double m = mean.value();
  const double v = second.value() - m * m;
  return v > 0.0 ? v : 0.0;
}

}  // namespace powdiv
