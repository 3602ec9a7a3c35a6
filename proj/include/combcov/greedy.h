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

// One-test-at-a-time greedy covering array construction. Each iteration
// samples random candidate rows, asks the store how many uncovered elements
// each would cover, and appends the best one.

#ifndef COMBCOV_GREEDY_H_
#define COMBCOV_GREEDY_H_

#include <chrono>
#include <cstdint>
#include <functional>
#include <string_view>

#include "combcov/ca_model.h"
#include "combcov/errors.h"
#include "combcov/interaction_store.h"

namespace combcov {

// Candidate rows are drawn with this engine, seeded with rng_seed, and
// std::uniform_int_distribution per parameter.
inline constexpr std::string_view kGreedyRngName = "mt19937_64";

struct GreedyConfig {
  int candidates_per_row = 50;
  std::uint64_t rng_seed = 1;
  int max_rows = 100'000;
};

struct GreedyStats {
  std::uint64_t rows = 0;
  std::uint64_t queries = 0;
  // Rows built from the first uncovered element because no sampled
  // candidate covered anything new.
  std::uint64_t fallback_rows = 0;
};

// Invoked after every coverage query with its wall time.
using QueryObserver =
    std::function<void(std::chrono::nanoseconds elapsed,
                       const InteractionStore& store)>;

// Thrown when max_rows is reached with elements still uncovered.
class IncompleteCoverage : public Error {
 public:
  IncompleteCoverage(TestSuite partial, std::uint64_t remaining);

  const TestSuite& partial() const { return partial_; }
  std::uint64_t remaining() const { return remaining_; }

 private:
  TestSuite partial_;
  std::uint64_t remaining_;
};

// Throws InvalidArgument for candidates_per_row < 1 or max_rows < 1.
void ValidateConfig(const GreedyConfig& config);

// Runs the greedy loop until the store is empty. Candidates are sampled the
// same way whatever the store mechanism, so for one seed every mechanism
// yields the same rows. Ties go to the earliest sampled candidate. If no
// candidate covers anything new, the best candidate is overwritten with the
// values of store.FirstUncovered().
TestSuite GenerateCa(InteractionStore& store, const GreedyConfig& config,
                     GreedyStats* stats = nullptr,
                     const QueryObserver& observer = {});

TestSuite GenerateCa(const CoveringArraySpec& spec, StoreMechanism mechanism,
                     const GreedyConfig& config,
                     const StoreOptions& options = {},
                     GreedyStats* stats = nullptr);

}  // namespace combcov

#endif  // COMBCOV_GREEDY_H_
