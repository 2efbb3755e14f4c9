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
#include <utility>
#include <vector>

#include "powdiv/rng.hpp"
#include "powdiv/scheme.hpp"
#include "powdiv/statistic.hpp"

namespace powdiv {

// Walker/Vose alias table: O(r) setup, O(1) per draw.
class AliasTable {
 public:
  explicit AliasTable(const std::vector<double>& probs);
  std::int64_t draw(CounterRng& rng) const {
    const std::int64_t j = static_cast<std::int64_t>(rng.next_below(size_));
    return rng.next_double() < accept_[static_cast<std::size_t>(j)]
               ? j
               : alias_[static_cast<std::size_t>(j)];
  }

 private:
  std::uint64_t size_;
  std::vector<double> accept_;
  std::vector<std::int64_t> alias_;
};

// Per-scheme cell sampler. Uniform schemes draw cell indices directly;
// everything else goes through an alias table built once at construction.
class CellSampler {
 public:
  explicit CellSampler(const ClassificationScheme& scheme);

  std::int64_t r() const { return r_; }
  std::int64_t draw(CounterRng& rng) const {
    return uniform_ ? static_cast<std::int64_t>(rng.next_below(static_cast<std::uint64_t>(r_)))
                    : alias_->draw(rng);
  }

  // n draws aggregated into sorted (cell, count) pairs. scratch is reused
  // between calls to keep the replicate loop allocation-free.
  void draw_occupied(CounterRng& rng, std::int64_t n, std::vector<std::int64_t>& scratch,
                     std::vector<std::pair<std::int64_t, std::int64_t>>& occupied) const;

 private:
  std::int64_t r_;
  bool uniform_;
  std::unique_ptr<AliasTable> alias_;
};

// One-shot convenience form; builds the sampler (O(r)) per call, so batch
// callers should hold a CellSampler instead.
Counts sample_counts(const ClassificationScheme& scheme, std::int64_t n, CounterRng& rng);

}  // namespace powdiv
