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

// Enumeration of the t-subsets of k parameter indices.
//
// Two generators are provided. The stack generator walks the subsets with an
// explicit stack of candidate start values and runs for any k. The n-bit
// enumerator counts through all 2^k masks and keeps those with t bits set;
// it is limited to the 64-bit word and serves as a reference.

#ifndef COMBCOV_COMBGEN_H_
#define COMBCOV_COMBGEN_H_

#include <cstdint>
#include <span>
#include <vector>

#include "combcov/ca_model.h"

namespace combcov {

inline constexpr int kNbitMaxParams = 64;

// All t-combinations of 0..k-1 in lexicographic order.
struct CombinationList {
  int k = 0;
  int t = 0;
  std::vector<Combination> combos;
};

// Caller-pulled producer over the stack generator; yields combinations in
// lexicographic order without storing them.
//
//   StackCombinationStream stream(k, t);
//   while (stream.Next()) Use(stream.current());
class StackCombinationStream {
 public:
  // Throws InvalidArgument unless 1 <= t <= k.
  StackCombinationStream(int k, int t);

  // Advances to the next combination. Returns false once exhausted.
  bool Next();
  std::span<const int> current() const { return comb_; }

  int k() const { return k_; }
  int t() const { return t_; }

 private:
  int k_;
  int t_;
  std::vector<int> comb_;
  // Candidate start value for each position of comb_; the top entry is the
  // next value to try at position stack_.size() - 1.
  std::vector<int> stack_;
};

// Caller-pulled producer over the n-bit enumerator. Yields combinations in
// ascending mask order (colexicographic), not lexicographic.
class NbitCombinationStream {
 public:
  // Throws InvalidArgument unless 1 <= t <= k, UnsupportedSize if
  // k > kNbitMaxParams.
  NbitCombinationStream(int k, int t);

  bool Next();

  enum class Step { kYield, kDone, kPaused };
  // Like Next(), but examines at most `max_masks` masks before returning
  // kPaused, so callers can bound the time spent between yields.
  Step Advance(std::uint64_t max_masks);

  std::span<const int> current() const { return comb_; }
  std::uint64_t mask() const { return mask_; }
  // Masks examined so far, including rejected ones.
  std::uint64_t masks_visited() const { return visited_; }

 private:
  int k_;
  int t_;
  std::uint64_t mask_ = 0;
  std::uint64_t next_mask_ = 0;
  std::uint64_t last_mask_ = 0;
  std::uint64_t visited_ = 0;
  bool done_ = false;
  std::vector<int> comb_;
};

CombinationList GenerateStack(int k, int t);

// Output is sorted, so it compares element-wise with GenerateStack.
CombinationList GenerateNbit(int k, int t);

// Binomial coefficient C(k, t). Throws InvalidArgument unless 1 <= t <= k
// and ArithmeticOverflow if the result does not fit in 64 bits.
std::uint64_t CountCombinations(int k, int t);

// Lexicographic rank of a t-combination of 0..k-1 via the combinatorial
// number system: the rank of c equals C(k,t) - 1 - sum_j C(k-1-c_j, t-j).
class CombinationRanker {
 public:
  CombinationRanker(int k, int t);

  std::uint64_t Rank(std::span<const int> combo) const;
  std::uint64_t size() const { return total_; }

 private:
  std::uint64_t Binomial(int n, int r) const {
    return r > n ? 0 : table_[static_cast<std::size_t>(n) * (t_ + 1) + r];
  }

  int k_;
  int t_;
  std::uint64_t total_;
  std::vector<std::uint64_t> table_;  // (k+1) x (t+1) Pascal triangle
};

}  // namespace combcov

#endif  // COMBCOV_COMBGEN_H_
