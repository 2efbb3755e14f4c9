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

#include "powdiv/simulate.hpp"

#include <cstdlib>
#include <exception>
#include <optional>
#include <stdexcept>
#include <thread>

#include "powdiv/rng.hpp"
#include "powdiv/sampler.hpp"
#include "powdiv/statistic.hpp"

namespace powdiv {

int resolve_workers() {
  if (const char* env = std::getenv("POWDIV_WORKERS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<int>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

ReplicateBatch simulate(const ExperimentConfig& config, int workers) {
  if (config.replicates < 1) throw std::invalid_argument("simulate: replicates must be >= 1");
  if (config.n < 1) throw std::invalid_argument("simulate: n must be >= 1");
  if (!config.target_t_tilde && config.occupancy_m < 0)
    throw std::invalid_argument("simulate: no target requested");

  const ClassificationScheme scheme = build_scheme(config.scheme);
  const CellSampler sampler(scheme);
  std::optional<StatisticConfig> cfg;
  std::optional<TTildeEvaluator> evaluator;
  if (config.target_t_tilde) {
    cfg.emplace(config.lambda, config.n);
    evaluator.emplace(*cfg, scheme);
  }

  ReplicateBatch batch;
  if (config.target_t_tilde) batch.t_tilde.resize(static_cast<std::size_t>(config.replicates));
  if (config.occupancy_m >= 0) batch.occupancy.resize(static_cast<std::size_t>(config.replicates));

  int nworkers = workers > 0 ? workers : resolve_workers();
  if (static_cast<std::int64_t>(nworkers) > config.replicates)
    nworkers = static_cast<int>(config.replicates);

  auto run_range = [&](std::int64_t begin, std::int64_t end) {
    std::vector<std::int64_t> scratch;
    std::vector<std::pair<std::int64_t, std::int64_t>> occupied;
    for (std::int64_t rep = begin; rep < end; ++rep) {
      CounterRng rng(config.seed, static_cast<std::uint64_t>(rep));
      sampler.draw_occupied(rng, config.n, scratch, occupied);
      if (config.target_t_tilde)
        batch.t_tilde[static_cast<std::size_t>(rep)] = evaluator->t_tilde(occupied);
      if (config.occupancy_m >= 0) {
        std::int64_t hits = 0;
        if (config.occupancy_m == 0) {
          hits = scheme.size() - static_cast<std::int64_t>(occupied.size());
        } else {
          for (const auto& [cell, count] : occupied)
            if (count == config.occupancy_m) ++hits;
        }
        batch.occupancy[static_cast<std::size_t>(rep)] = static_cast<double>(hits);
      }
    }
  };

  if (nworkers <= 1) {
    run_range(0, config.replicates);
    return batch;
  }

  std::vector<std::thread> threads;
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(nworkers));
  threads.reserve(static_cast<std::size_t>(nworkers));
  for (int w = 0; w < nworkers; ++w) {
    const std::int64_t begin = config.replicates * w / nworkers;
    const std::int64_t end = config.replicates * (w + 1) / nworkers;
    threads.emplace_back([&, w, begin, end] {
      try {
        run_range(begin, end);
      } catch (...) {
        errors[static_cast<std::size_t>(w)] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (const auto& err : errors)
    if (err) std::rethrow_exception(err);
  return batch;
}

}  // namespace powdiv
