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
#include <vector>

#include "powdiv/scheme.hpp"

namespace powdiv {

// A Monte Carlo experiment: `replicates` multinomial draws of n trials from
// the scheme, evaluating the requested target statistics per replicate.
// A fixed seed gives byte-identical output for any worker count: replicate i
// always consumes the RNG stream keyed (seed, i).
struct ExperimentConfig {
  SchemeDescriptor scheme;
  std::int64_t n = 1;
  double lambda = 1.0;
  std::int64_t replicates = 1;
  std::uint64_t seed = 0;
  bool target_t_tilde = true;
  std::int64_t occupancy_m = -1;  // occupancy level; -1 disables the target
};

// Samples in replicate order (not sorted).
struct ReplicateBatch {
  std::vector<double> t_tilde;
  std::vector<double> occupancy;
};

// Worker count override: POWDIV_WORKERS if set, else hardware concurrency.
int resolve_workers();

// Runs the experiment with the given worker count (0 = resolve_workers()).
ReplicateBatch simulate(const ExperimentConfig& config, int workers = 0);

}  // namespace powdiv
