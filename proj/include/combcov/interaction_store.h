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

// Stores of uncovered interaction elements answering "how many of them does
// this row cover?".
//
// Three mechanisms share one interface and give identical answers:
//
//   kHash      one bucket per combination, keyed by the combination; each
//              bucket is a hash set of packed value tuples. A query does one
//              bucket lookup per combination.
//   kIndexed   all elements in one array sorted by (combination rank, value
//              tuple), plus an offset table per combination. A query ranks
//              the combination and scans its slice linearly.
//   kFullScan  one flat array; every query walks all live elements.
//
// A value tuple is packed into one integer by mixed-radix encoding over the
// domains of its combination, last value fastest.

#ifndef COMBCOV_INTERACTION_STORE_H_
#define COMBCOV_INTERACTION_STORE_H_

#include <atomic>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "combcov/ca_model.h"

namespace combcov {

enum class StoreMechanism { kHash, kIndexed, kFullScan };

inline constexpr StoreMechanism kAllMechanisms[] = {
    StoreMechanism::kHash, StoreMechanism::kIndexed, StoreMechanism::kFullScan};

// "hash", "indexed" or "full".
std::string_view MechanismName(StoreMechanism mechanism);
// Accepts the names above plus "full_scan"/"full-scan". Throws
// InvalidArgument otherwise.
StoreMechanism ParseMechanism(std::string_view name);

struct StoreOptions {
  // Upper bound on the number of interaction elements a store may hold.
  std::uint64_t max_elements = 50'000'000;
};

struct StoreCounters {
  std::uint64_t queries = 0;
  // Combination buckets located by key (kHash only).
  std::uint64_t bucket_lookups = 0;
  // Stored elements compared against the row (kIndexed and kFullScan).
  std::uint64_t elements_scanned = 0;
};

// The C(k,t) combinations of a spec in lexicographic order, with the number
// of value tuples of each and the mixed-radix encoder for rows.
class CombinationTable {
 public:
  explicit CombinationTable(const CoveringArraySpec& spec);

  std::size_t size() const { return combos_.size(); }
  const Combination& combo(std::size_t i) const { return combos_[i]; }
  std::uint64_t cells(std::size_t i) const { return cells_[i]; }

  // Packs the values `row` takes at combination i.
  std::uint64_t EncodeRow(std::size_t i, std::span<const int> row) const {
    std::uint64_t code = 0;
    for (int index : combos_[i]) {
      code = code * static_cast<std::uint64_t>(domains_[index]) +
             static_cast<std::uint64_t>(row[index]);
    }
    return code;
  }
  std::uint64_t EncodeValues(const Combination& combo,
                             std::span<const int> values) const;
  std::vector<int> DecodeValues(const Combination& combo,
                                std::uint64_t code) const;

 private:
  std::vector<int> domains_;
  std::vector<Combination> combos_;
  std::vector<std::uint64_t> cells_;
};

// Mutable set of uncovered interaction elements. Queries are const and may
// run concurrently with each other; MarkCovered needs exclusive access.
class InteractionStore {
 public:
  virtual ~InteractionStore() = default;

  const CoveringArraySpec& spec() const { return spec_; }
  StoreMechanism mechanism() const { return mechanism_; }

  // Number of still-uncovered elements the row covers. Throws
  // InvalidTestCase if the row does not fit the spec.
  virtual std::uint64_t CoverageCount(const TestCase& row) const = 0;

  // Removes the elements CoverageCount would count and returns how many.
  virtual std::uint64_t MarkCovered(const TestCase& row) = 0;

  std::uint64_t Remaining() const { return remaining_; }
  std::uint64_t Total() const { return total_; }

  // True iff the element is still uncovered.
  virtual bool Contains(const InteractionElement& element) const = 0;

  // The smallest uncovered element in (combination, value tuple) order.
  virtual std::optional<InteractionElement> FirstUncovered() const = 0;

  // Every uncovered element in (combination, value tuple) order.
  virtual std::vector<InteractionElement> UncoveredElements() const;

  virtual std::unique_ptr<InteractionStore> Clone() const = 0;

  // Totals since construction (or the last ResetCounters).
  StoreCounters counters() const;
  // Counters of the most recent CoverageCount or MarkCovered call.
  StoreCounters last_query() const;
  void ResetCounters();

 protected:
  InteractionStore(const CoveringArraySpec& spec, StoreMechanism mechanism);
  InteractionStore(const InteractionStore& other);
  InteractionStore& operator=(const InteractionStore&) = delete;

  const CombinationTable& table() const { return *table_; }
  void Record(std::uint64_t bucket_lookups, std::uint64_t scanned) const;

  std::uint64_t remaining_ = 0;
  std::uint64_t total_ = 0;

 private:
  CoveringArraySpec spec_;
  StoreMechanism mechanism_;
  std::shared_ptr<const CombinationTable> table_;

  mutable std::atomic<std::uint64_t> queries_{0};
  mutable std::atomic<std::uint64_t> lookups_{0};
  mutable std::atomic<std::uint64_t> scanned_{0};
  mutable std::atomic<std::uint64_t> last_lookups_{0};
  mutable std::atomic<std::uint64_t> last_scanned_{0};
};

// Builds a store holding every interaction element of `spec`. Throws
// CapacityExceeded if the element count exceeds options.max_elements and
// ArithmeticOverflow if it does not fit in 64 bits.
std::unique_ptr<InteractionStore> BuildStore(const CoveringArraySpec& spec,
                                             StoreMechanism mechanism,
                                             const StoreOptions& options = {});

}  // namespace combcov

#endif  // COMBCOV_INTERACTION_STORE_H_
