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

#include "combcov/interaction_store.h"

#include <algorithm>
#include <limits>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>

#include "combcov/combgen.h"
#include "combcov/errors.h"

namespace combcov {

std::string_view MechanismName(StoreMechanism mechanism) {
  switch (mechanism) {
    case StoreMechanism::kHash:
      return "hash";
    case StoreMechanism::kIndexed:
      return "indexed";
    case StoreMechanism::kFullScan:
      return "full";
  }
  return "unknown";
}

StoreMechanism ParseMechanism(std::string_view name) {
  if (name == "hash") return StoreMechanism::kHash;
  if (name == "indexed" || name == "index") return StoreMechanism::kIndexed;
  if (name == "full" || name == "full_scan" || name == "full-scan") {
    return StoreMechanism::kFullScan;
  }
  throw InvalidArgument("unknown store mechanism '" + std::string(name) +
                        "' (expected hash, indexed or full)");
}

CombinationTable::CombinationTable(const CoveringArraySpec& spec)
    : domains_(spec.domains().begin(), spec.domains().end()) {
  StackCombinationStream stream(spec.num_params(), spec.strength());
  while (stream.Next()) {
    const auto indices = stream.current();
    std::uint64_t cells = 1;
    for (int index : indices) cells *= static_cast<std::uint64_t>(domains_[index]);
    combos_.emplace_back(std::vector<int>(indices.begin(), indices.end()));
    cells_.push_back(cells);
  }
}

std::uint64_t CombinationTable::EncodeValues(const Combination& combo,
                                             std::span<const int> values) const {
  std::uint64_t code = 0;
  for (std::size_t j = 0; j < combo.size(); ++j) {
    code = code * static_cast<std::uint64_t>(domains_[combo[j]]) +
           static_cast<std::uint64_t>(values[j]);
  }
  return code;
}

std::vector<int> CombinationTable::DecodeValues(const Combination& combo,
                                                std::uint64_t code) const {
  std::vector<int> values(combo.size());
  for (std::size_t j = combo.size(); j-- > 0;) {
    const auto radix = static_cast<std::uint64_t>(domains_[combo[j]]);
    values[j] = static_cast<int>(code % radix);
    code /= radix;
  }
  return values;
}

InteractionStore::InteractionStore(const CoveringArraySpec& spec,
                                   StoreMechanism mechanism)
    : spec_(spec),
      mechanism_(mechanism),
      table_(std::make_shared<const CombinationTable>(spec)) {}

InteractionStore::InteractionStore(const InteractionStore& other)
    : remaining_(other.remaining_),
      total_(other.total_),
      spec_(other.spec_),
      mechanism_(other.mechanism_),
      table_(other.table_),
      queries_(other.queries_.load()),
      lookups_(other.lookups_.load()),
      scanned_(other.scanned_.load()),
      last_lookups_(other.last_lookups_.load()),
      last_scanned_(other.last_scanned_.load()) {}

std::vector<InteractionElement> InteractionStore::UncoveredElements() const {
  std::vector<InteractionElement> out;
  out.reserve(remaining_);
  for (std::size_t i = 0; i < table_->size(); ++i) {
    const Combination& combo = table_->combo(i);
    for (std::uint64_t code = 0; code < table_->cells(i); ++code) {
      InteractionElement element{combo, table_->DecodeValues(combo, code)};
      if (Contains(element)) out.push_back(std::move(element));
    }
  }
  return out;
}

StoreCounters InteractionStore::counters() const {
  return {queries_.load(std::memory_order_relaxed),
          lookups_.load(std::memory_order_relaxed),
          scanned_.load(std::memory_order_relaxed)};
}

StoreCounters InteractionStore::last_query() const {
  return {1, last_lookups_.load(std::memory_order_relaxed),
          last_scanned_.load(std::memory_order_relaxed)};
}

void InteractionStore::ResetCounters() {
  queries_ = 0;
  lookups_ = 0;
  scanned_ = 0;
  last_lookups_ = 0;
  last_scanned_ = 0;
}

void InteractionStore::Record(std::uint64_t bucket_lookups,
                              std::uint64_t scanned) const {
  queries_.fetch_add(1, std::memory_order_relaxed);
  lookups_.fetch_add(bucket_lookups, std::memory_order_relaxed);
  scanned_.fetch_add(scanned, std::memory_order_relaxed);
  last_lookups_.store(bucket_lookups, std::memory_order_relaxed);
  last_scanned_.store(scanned, std::memory_order_relaxed);
}

namespace {

class HashStore final : public InteractionStore {
 public:
  explicit HashStore(const CoveringArraySpec& spec)
      : InteractionStore(spec, StoreMechanism::kHash) {
    buckets_.reserve(table().size());
    for (std::size_t i = 0; i < table().size(); ++i) {
      auto& bucket = buckets_[table().combo(i)];
      bucket.reserve(table().cells(i));
      for (std::uint64_t code = 0; code < table().cells(i); ++code) {
        bucket.insert(code);
      }
      total_ += table().cells(i);
    }
    remaining_ = total_;
  }

  std::uint64_t CoverageCount(const TestCase& row) const override {
    ValidateTestCase(spec(), row);
    std::uint64_t covered = 0;
    for (std::size_t i = 0; i < table().size(); ++i) {
      auto it = buckets_.find(table().combo(i));
      covered += it->second.count(table().EncodeRow(i, row.assignment));
    }
    Record(table().size(), 0);
    return covered;
  }

  std::uint64_t MarkCovered(const TestCase& row) override {
    ValidateTestCase(spec(), row);
    std::uint64_t removed = 0;
    for (std::size_t i = 0; i < table().size(); ++i) {
      auto it = buckets_.find(table().combo(i));
      removed += it->second.erase(table().EncodeRow(i, row.assignment));
    }
    Record(table().size(), 0);
    remaining_ -= removed;
    return removed;
  }

  bool Contains(const InteractionElement& element) const override {
    ValidateElement(spec(), element);
    const auto& bucket = buckets_.at(element.combo);
    return bucket.contains(table().EncodeValues(element.combo, element.values));
  }

  std::optional<InteractionElement> FirstUncovered() const override {
    for (std::size_t i = 0; i < table().size(); ++i) {
      const auto& bucket = buckets_.at(table().combo(i));
      if (bucket.empty()) continue;
      const std::uint64_t code = *std::min_element(bucket.begin(), bucket.end());
      return InteractionElement{table().combo(i),
                                table().DecodeValues(table().combo(i), code)};
    }
    return std::nullopt;
  }

  std::unique_ptr<InteractionStore> Clone() const override {
    return std::make_unique<HashStore>(*this);
  }

 private:
  std::unordered_map<Combination, std::unordered_set<std::uint64_t>,
                     CombinationHash>
      buckets_;
};

class IndexedStore final : public InteractionStore {
 public:
  explicit IndexedStore(const CoveringArraySpec& spec)
      : InteractionStore(spec, StoreMechanism::kIndexed),
        ranker_(spec.num_params(), spec.strength()) {
    offsets_.reserve(table().size() + 1);
    offsets_.push_back(0);
    for (std::size_t i = 0; i < table().size(); ++i) {
      for (std::uint64_t code = 0; code < table().cells(i); ++code) {
        codes_.push_back(code);
      }
      offsets_.push_back(codes_.size());
    }
    dead_.assign(codes_.size(), 0);
    total_ = remaining_ = codes_.size();
  }

  std::uint64_t CoverageCount(const TestCase& row) const override {
    ValidateTestCase(spec(), row);
    std::uint64_t covered = 0;
    std::uint64_t scanned = 0;
    for (std::size_t i = 0; i < table().size(); ++i) {
      const std::size_t pos = Find(i, row, scanned);
      if (pos != kNotFound && !dead_[pos]) ++covered;
    }
    Record(0, scanned);
    return covered;
  }

  std::uint64_t MarkCovered(const TestCase& row) override {
    ValidateTestCase(spec(), row);
    std::uint64_t removed = 0;
    std::uint64_t scanned = 0;
    for (std::size_t i = 0; i < table().size(); ++i) {
      const std::size_t pos = Find(i, row, scanned);
      if (pos != kNotFound && !dead_[pos]) {
        dead_[pos] = 1;
        ++removed;
      }
    }
    Record(0, scanned);
    remaining_ -= removed;
    return removed;
  }

  bool Contains(const InteractionElement& element) const override {
    ValidateElement(spec(), element);
    const std::uint64_t rank = ranker_.Rank(element.combo.indices());
    const std::uint64_t code =
        table().EncodeValues(element.combo, element.values);
    for (std::uint64_t p = offsets_[rank]; p < offsets_[rank + 1]; ++p) {
      if (codes_[p] == code) return !dead_[p];
    }
    return false;
  }

  std::optional<InteractionElement> FirstUncovered() const override {
    for (std::size_t i = 0; i < table().size(); ++i) {
      for (std::uint64_t p = offsets_[i]; p < offsets_[i + 1]; ++p) {
        if (dead_[p]) continue;
        return InteractionElement{
            table().combo(i), table().DecodeValues(table().combo(i), codes_[p])};
      }
    }
    return std::nullopt;
  }

  std::unique_ptr<InteractionStore> Clone() const override {
    return std::make_unique<IndexedStore>(*this);
  }

 private:
  static constexpr std::size_t kNotFound = std::numeric_limits<std::size_t>::max();

  // Linear search of the slice belonging to combination i.
  std::size_t Find(std::size_t i, const TestCase& row,
                   std::uint64_t& scanned) const {
    const std::uint64_t rank = ranker_.Rank(table().combo(i).indices());
    const std::uint64_t code = table().EncodeRow(i, row.assignment);
    for (std::uint64_t p = offsets_[rank]; p < offsets_[rank + 1]; ++p) {
      ++scanned;
      if (codes_[p] == code) return p;
    }
    return kNotFound;
  }

  CombinationRanker ranker_;
  std::vector<std::uint64_t> codes_;
  std::vector<std::uint64_t> offsets_;
  std::vector<char> dead_;
};

class FullScanStore final : public InteractionStore {
 public:
  explicit FullScanStore(const CoveringArraySpec& spec)
      : InteractionStore(spec, StoreMechanism::kFullScan),
        width_(spec.strength()) {
    for (std::size_t i = 0; i < table().size(); ++i) {
      const Combination& combo = table().combo(i);
      for (std::uint64_t code = 0; code < table().cells(i); ++code) {
        combo_of_.push_back(static_cast<std::uint32_t>(i));
        const std::vector<int> values = table().DecodeValues(combo, code);
        values_.insert(values_.end(), values.begin(), values.end());
      }
    }
    dead_.assign(combo_of_.size(), 0);
    total_ = remaining_ = combo_of_.size();
  }

  std::uint64_t CoverageCount(const TestCase& row) const override {
    ValidateTestCase(spec(), row);
    std::uint64_t covered = 0;
    std::uint64_t scanned = 0;
    for (std::size_t p = 0; p < combo_of_.size(); ++p) {
      if (dead_[p]) continue;
      ++scanned;
      if (Matches(p, row)) ++covered;
    }
    Record(0, scanned);
    return covered;
  }

  std::uint64_t MarkCovered(const TestCase& row) override {
    ValidateTestCase(spec(), row);
    std::uint64_t removed = 0;
    std::uint64_t scanned = 0;
    for (std::size_t p = 0; p < combo_of_.size(); ++p) {
      if (dead_[p]) continue;
      ++scanned;
      if (Matches(p, row)) {
        dead_[p] = 1;
        ++removed;
      }
    }
    Record(0, scanned);
    remaining_ -= removed;
    return removed;
  }

  bool Contains(const InteractionElement& element) const override {
    ValidateElement(spec(), element);
    for (std::size_t p = 0; p < combo_of_.size(); ++p) {
      if (dead_[p] || table().combo(combo_of_[p]) != element.combo) continue;
      if (std::equal(element.values.begin(), element.values.end(),
                     values_.begin() + p * width_)) {
        return true;
      }
    }
    return false;
  }

  std::optional<InteractionElement> FirstUncovered() const override {
    // Elements sit in build order, which is (combination, value tuple)
    // order, but nothing else relies on it.
    std::optional<InteractionElement> best;
    for (std::size_t p = 0; p < combo_of_.size(); ++p) {
      if (dead_[p]) continue;
      InteractionElement element{
          table().combo(combo_of_[p]),
          std::vector<int>(values_.begin() + p * width_,
                           values_.begin() + (p + 1) * width_)};
      if (!best || element < *best) best = std::move(element);
    }
    return best;
  }

  std::vector<InteractionElement> UncoveredElements() const override {
    std::vector<InteractionElement> out;
    out.reserve(remaining_);
    for (std::size_t p = 0; p < combo_of_.size(); ++p) {
      if (dead_[p]) continue;
      out.push_back({table().combo(combo_of_[p]),
                     std::vector<int>(values_.begin() + p * width_,
                                      values_.begin() + (p + 1) * width_)});
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  std::unique_ptr<InteractionStore> Clone() const override {
    return std::make_unique<FullScanStore>(*this);
  }

 private:
  bool Matches(std::size_t p, const TestCase& row) const {
    const Combination& combo = table().combo(combo_of_[p]);
    const int* values = values_.data() + p * width_;
    for (std::size_t j = 0; j < width_; ++j) {
      if (row.assignment[combo[j]] != values[j]) return false;
    }
    return true;
  }

  std::size_t width_;
  std::vector<std::uint32_t> combo_of_;
  std::vector<int> values_;
  std::vector<char> dead_;
};

}  // namespace

std::unique_ptr<InteractionStore> BuildStore(const CoveringArraySpec& spec,
                                             StoreMechanism mechanism,
                                             const StoreOptions& options) {
  const std::uint64_t total = spec.TotalInteractions();
  if (total > options.max_elements) {
    throw CapacityExceeded(total, options.max_elements);
  }
  switch (mechanism) {
    case StoreMechanism::kHash:
      return std::make_unique<HashStore>(spec);
    case StoreMechanism::kIndexed:
      return std::make_unique<IndexedStore>(spec);
    case StoreMechanism::kFullScan:
      return std::make_unique<FullScanStore>(spec);
  }
  throw InvalidArgument("unknown store mechanism");
}

}  // namespace combcov
