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

#include "combcov/combgen.h"

#include <algorithm>
#include <bit>
#include <limits>
#include <string>

#include "combcov/errors.h"

namespace combcov {
namespace {

void CheckArgs(int k, int t) {
  if (k < 1 || t < 1 || t > k) {
    throw InvalidArgument("need 1 <= t <= k, got k=" + std::to_string(k) +
                          " t=" + std::to_string(t));
  }
}

CombinationList Drain(int k, int t, auto& stream) {
  CombinationList list{k, t, {}};
  while (stream.Next()) {
    const auto current = stream.current();
    list.combos.emplace_back(std::vector<int>(current.begin(), current.end()));
  }
  return list;
}

}  // namespace

StackCombinationStream::StackCombinationStream(int k, int t) : k_(k), t_(t) {
  CheckArgs(k, t);
  comb_.assign(t, 0);
  stack_.reserve(t + 1);
  stack_.push_back(0);
}

bool StackCombinationStream::Next() {
  while (!stack_.empty()) {
    int i = static_cast<int>(stack_.size()) - 1;
    int v = stack_.back();
    stack_.pop_back();
    // Position i can hold at most k-t+i; anything larger leaves too few
    // values for the remaining positions.
    while (v <= k_ - t_ + i) {
      comb_[i++] = v++;
      stack_.push_back(v);
      if (i == t_) return true;
    }
  }
  return false;
}

NbitCombinationStream::NbitCombinationStream(int k, int t) : k_(k), t_(t) {
  CheckArgs(k, t);
  if (k > kNbitMaxParams) {
    throw UnsupportedSize("n-bit enumerator supports at most " +
                          std::to_string(kNbitMaxParams) +
                          " parameters, got k=" + std::to_string(k));
  }
  last_mask_ = k == 64 ? std::numeric_limits<std::uint64_t>::max()
                       : (std::uint64_t{1} << k) - 1;
  comb_.reserve(t);
}

bool NbitCombinationStream::Next() {
  constexpr std::uint64_t kChunk = std::uint64_t{1} << 32;
  Step step;
  while ((step = Advance(kChunk)) == Step::kPaused) {
  }
  return step == Step::kYield;
}

NbitCombinationStream::Step NbitCombinationStream::Advance(
    std::uint64_t max_masks) {
  for (std::uint64_t n = 0; n < max_masks; ++n) {
    if (done_) return Step::kDone;
    const std::uint64_t mask = next_mask_;
    ++visited_;
    if (mask == last_mask_) {
      done_ = true;
    } else {
      ++next_mask_;
    }
    if (std::popcount(mask) != t_) continue;
    mask_ = mask;
    comb_.clear();
    for (int bit = 0; bit < k_; ++bit) {
      if (mask >> bit & 1) comb_.push_back(bit);
    }
    return Step::kYield;
  }
  return done_ ? Step::kDone : Step::kPaused;
}

CombinationList GenerateStack(int k, int t) {
  StackCombinationStream stream(k, t);
  return Drain(k, t, stream);
}

CombinationList GenerateNbit(int k, int t) {
  NbitCombinationStream stream(k, t);
  CombinationList list = Drain(k, t, stream);
  std::sort(list.combos.begin(), list.combos.end());
  return list;
}

std::uint64_t CountCombinations(int k, int t) {
  CheckArgs(k, t);
  const int r = std::min(t, k - t);
  // C(k-r+i, i) for i = 1..r; every intermediate is itself a binomial.
  unsigned __int128 result = 1;
  for (int i = 1; i <= r; ++i) {
    result = result * static_cast<unsigned>(k - r + i) / static_cast<unsigned>(i);
    if (result > std::numeric_limits<std::uint64_t>::max()) {
      throw ArithmeticOverflow("C(" + std::to_string(k) + "," +
                               std::to_string(t) + ") exceeds 64 bits");
    }
  }
  return static_cast<std::uint64_t>(result);
}

CombinationRanker::CombinationRanker(int k, int t)
    : k_(k), t_(t), total_(CountCombinations(k, t)) {
  table_.assign(static_cast<std::size_t>(k + 1) * (t + 1), 0);
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  for (int n = 0; n <= k; ++n) {
    table_[static_cast<std::size_t>(n) * (t + 1)] = 1;
    for (int r = 1; r <= std::min(n, t); ++r) {
      std::uint64_t sum = 0;
      // Saturates; entries that large never reach Rank because each term
      // there is bounded by C(k, t), which fits.
      if (__builtin_add_overflow(Binomial(n - 1, r - 1), Binomial(n - 1, r),
                                 &sum)) {
        sum = kMax;
      }
      table_[static_cast<std::size_t>(n) * (t + 1) + r] = sum;
    }
  }
}

std::uint64_t CombinationRanker::Rank(std::span<const int> combo) const {
  std::uint64_t below = 0;
  for (int j = 0; j < t_; ++j) below += Binomial(k_ - 1 - combo[j], t_ - j);
  return total_ - 1 - below;
}

}  // namespace combcov
