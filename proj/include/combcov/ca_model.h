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

// Domain types for covering arrays CA(N; t, k, v): the array shape, column
// selections, interaction elements, rows, and the coverage oracle.

#ifndef COMBCOV_CA_MODEL_H_
#define COMBCOV_CA_MODEL_H_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace combcov {

// Strength t, parameter count k and the per-parameter domain sizes v_i.
// Values of parameter i are the integers 0..v_i-1. Coverage is always
// "at least once" (lambda = 1).
class CoveringArraySpec {
 public:
  // Throws InvalidArgument unless 1 <= t <= k, domains.size() == k and
  // every domain is >= 1.
  CoveringArraySpec(int strength, std::vector<int> domains);

  // Uniform spec: k parameters with v values each.
  static CoveringArraySpec Uniform(int strength, int num_params, int values);

  // Parses `t=<t>;k=<k>;v=<list>` where <list> is a comma separated list of
  // items, each either `<v>` or `<v>^<n>` (n repeats). Throws SpecParseError.
  static CoveringArraySpec Parse(std::string_view text);

  // Inverse of Parse. Runs of equal domains are folded as `<v>^<n>`.
  std::string ToString() const;

  int strength() const { return strength_; }
  int num_params() const { return static_cast<int>(domains_.size()); }
  int domain(int param) const { return domains_[param]; }
  std::span<const int> domains() const { return domains_; }

  // Sum over every t-subset of parameters of the product of its domain
  // sizes, i.e. the number of interaction elements. Throws
  // ArithmeticOverflow past 2^64-1.
  std::uint64_t TotalInteractions() const;

  friend bool operator==(const CoveringArraySpec&,
                         const CoveringArraySpec&) = default;

 private:
  int strength_;
  std::vector<int> domains_;
};

// Strictly increasing selection of parameter indices.
class Combination {
 public:
  Combination() = default;
  // Throws InvalidCombination if the indices are negative or not strictly
  // increasing.
  explicit Combination(std::vector<int> indices);
  Combination(std::initializer_list<int> indices)
      : Combination(std::vector<int>(indices)) {}

  std::size_t size() const { return indices_.size(); }
  int operator[](std::size_t i) const { return indices_[i]; }
  std::span<const int> indices() const { return indices_; }
  auto begin() const { return indices_.begin(); }
  auto end() const { return indices_.end(); }

  friend bool operator==(const Combination&, const Combination&) = default;
  friend auto operator<=>(const Combination&, const Combination&) = default;

 private:
  std::vector<int> indices_;
};

struct CombinationHash {
  std::size_t operator()(const Combination& combo) const noexcept;
};

// A combination together with one value per selected parameter.
struct InteractionElement {
  Combination combo;
  std::vector<int> values;

  friend bool operator==(const InteractionElement&,
                         const InteractionElement&) = default;
  friend auto operator<=>(const InteractionElement&,
                          const InteractionElement&) = default;
};

// One value per parameter; a row of the array.
struct TestCase {
  std::vector<int> assignment;

  friend bool operator==(const TestCase&, const TestCase&) = default;
};

struct TestSuite {
  CoveringArraySpec spec;
  std::vector<TestCase> rows;
};

// Throws InvalidCombination unless `combo` has exactly t indices, all < k.
void ValidateCombination(const CoveringArraySpec& spec,
                         const Combination& combo);
// Throws InvalidTestCase unless the row has k in-domain values.
void ValidateTestCase(const CoveringArraySpec& spec, const TestCase& row);
void ValidateElement(const CoveringArraySpec& spec,
                     const InteractionElement& element);
void ValidateSuite(const TestSuite& suite);

// Projects `row` onto the columns of `combo`. Throws InvalidCombination if an
// index falls outside the row.
InteractionElement ExtractElement(const TestCase& row,
                                  const Combination& combo);

struct VerificationReport {
  std::uint64_t covered = 0;
  // Uncovered elements, ordered by combination (lexicographic) and then by
  // value tuple (last value fastest).
  std::vector<InteractionElement> missing;

  bool complete() const { return missing.empty(); }
};

// Checks every interaction element of the spec against the suite's rows.
VerificationReport VerifyCoverage(const TestSuite& suite);

// CSV: one row per line, comma separated integers, no header. Blank lines
// are ignored on input. Throws InvalidTestCase on malformed or out-of-domain
// rows.
std::vector<TestCase> ReadSuiteCsv(std::istream& in,
                                   const CoveringArraySpec& spec);
void WriteSuiteCsv(std::ostream& out, std::span<const TestCase> rows);

std::string FormatIndices(std::span<const int> values);

}  // namespace combcov

#endif  // COMBCOV_CA_MODEL_H_
