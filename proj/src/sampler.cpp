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

#include "powdiv/sampler.hpp"

#include <algorithm>
#include <stdexcept>

namespace powdiv {

AliasTable::AliasTable(const std::vector<double>& probs) {
  const std::size_t r = probs.size();
  if (r == 0) throw std::invalid_argument("alias table: empty probability vector");
  size_ = r;
  accept_.assign(r, 1.0);
  alias_.resize(r);
  for (std::size_t j = 0; j < r; ++j) alias_[j] = static_cast<std::int64_t>(j);

  std::vector<double> scaled(r);
  for (std::size_t j = 0; j < r; ++j) scaled[j] = probs[j] * static_cast<double>(r);

  std::vector<std::uint32_t> small, large;
  small.reserve(r);
  large.reserve(r);
  for (std::size_t j = 0; j < r; ++j) {
    (scaled[j] < 1.0 ? small : large).push_back(static_cast<std::uint32_t>(j));
  }
  while (!small.empty() && !large.empty()) {
    const std::uint32_t s = small.back();
    small.pop_back();
    const std::uint32_t l = large.back();
    accept_[s] = scaled[s];
    alias_[s] = static_cast<std::int64_t>(l);
    scaled[l] = (scaled[l] + scaled[s]) - 1.0;
    if (scaled[l] < 1.0) {
      large.pop_back();
      small.push_back(l);
    }
  }
  // leftovers keep accept = 1 (self-aliased), absorbing rounding residue
}

CellSampler::CellSampler(const ClassificationScheme& scheme)
    : r_(scheme.size()), uniform_(scheme.kind() == SchemeKind::uniform) {
  if (!uniform_) alias_ = std::make_unique<AliasTable>(scheme.probs());
}

void CellSampler::draw_occupied(
    CounterRng& rng, std::int64_t n, std::vector<std::int64_t>& scratch,
    std::vector<std::pair<std::int64_t, std::int64_t>>& occupied) const {
  scratch.clear();
  scratch.reserve(static_cast<std::size_t>(n));
  for (std::int64_t k = 0; k < n; ++k) scratch.push_back(draw(rng));
  std::sort(scratch.begin(), scratch.end());
  occupied.clear();
  for (std::size_t i = 0; i < scratch.size();) {
    const std::int64_t cell = scratch[i];
    std::size_t j = i;
    while (j < scratch.size() && scratch[j] == cell) ++j;
    occupied.emplace_back(cell, static_cast<std::int64_t>(j - i));
    i = j;
  }
}

Counts sample_counts(const ClassificationScheme& scheme, std::int64_t n, CounterRng& rng) {
  if (n < 0) throw std::invalid_argument("sample_counts: n must be >= 0");
  const CellSampler sampler(scheme);
  std::vector<std::int64_t> scratch;
  std::vector<std::pair<std::int64_t, std::int64_t>> occupied;
  sampler.draw_occupied(rng, n, scratch, occupied);
  return Counts::from_sparse(std::move(occupied), scheme.size());
}

}  // namespace powdiv
