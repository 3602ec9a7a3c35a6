// Copyright 2026 The combcov Authors
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

#include "combcov/greedy.h"

#include <random>
#include <string>
#include <utility>

namespace combcov {

IncompleteCoverage::IncompleteCoverage(TestSuite partial,
                                       std::uint64_t remaining)
    : Error("coverage incomplete after " + std::to_string(partial.rows.size()) +
            " rows: " + std::to_string(remaining) + " elements uncovered"),
      partial_(std::move(partial)),
      remaining_(remaining) {}

void ValidateConfig(const GreedyConfig& config) {
  if (config.candidates_per_row < 1) {
    throw InvalidArgument("candidates_per_row must be >= 1");
  }
  if (config.max_rows < 1) throw InvalidArgument("max_rows must be >= 1");
}

TestSuite GenerateCa(InteractionStore& store, const GreedyConfig& config,
                     GreedyStats* stats, const QueryObserver& observer) {
  ValidateConfig(config);
  const CoveringArraySpec& spec = store.spec();
  const int k = spec.num_params();
  std::mt19937_64 rng(config.rng_seed);
  TestSuite suite{spec, {}};
  GreedyStats local;

  TestCase candidate{std::vector<int>(k)};
  TestCase best;
  while (store.Remaining() > 0) {
    if (static_cast<int>(suite.rows.size()) >= config.max_rows) {
      if (stats) *stats = local;
      throw IncompleteCoverage(std::move(suite), store.Remaining());
    }
    std::uint64_t best_gain = 0;
    for (int c = 0; c < config.candidates_per_row; ++c) {
      for (int i = 0; i < k; ++i) {
        candidate.assignment[i] =
            std::uniform_int_distribution<int>(0, spec.domain(i) - 1)(rng);
      }
      std::uint64_t gain = 0;
      if (observer) {
        const auto start = std::chrono::steady_clock::now();
        gain = store.CoverageCount(candidate);
        observer(std::chrono::steady_clock::now() - start, store);
      } else {
        gain = store.CoverageCount(candidate);
      }
      ++local.queries;
      if (c == 0 || gain > best_gain) {
        best = candidate;
        best_gain = gain;
      }
    }
    if (best_gain == 0) {
      const auto element = store.FirstUncovered();
      for (std::size_t j = 0; j < element->combo.size(); ++j) {
        best.assignment[element->combo[j]] = element->values[j];
      }
      ++local.fallback_rows;
    }
    store.MarkCovered(best);
    suite.rows.push_back(best);
    ++local.rows;
  }
  if (stats) *stats = local;
  return suite;
}

TestSuite GenerateCa(const CoveringArraySpec& spec, StoreMechanism mechanism,
                     const GreedyConfig& config, const StoreOptions& options,
                     GreedyStats* stats) {
  ValidateConfig(config);
  auto store = BuildStore(spec, mechanism, options);
  return GenerateCa(*store, config, stats);
}

}  // namespace combcov
