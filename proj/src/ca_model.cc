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

#include "combcov/ca_model.h"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <optional>
#include <utility>

#include "combcov/errors.h"

namespace combcov {
namespace {

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' ||
                        s.back() == '\r' || s.back() == '\n')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string_view> Split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      parts.push_back(s.substr(start));
      return parts;
    }
    parts.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

bool ParseInt(std::string_view s, int& out) {
  s = Trim(s);
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

int ParseSpecInt(std::string_view s, std::string_view what) {
  int value = 0;
  if (!ParseInt(s, value)) {
    throw SpecParseError("spec: bad " + std::string(what) + " '" +
                         std::string(s) + "'");
  }
  return value;
}

// Advances `combo` to its lexicographic successor among the t-subsets of
// 0..k-1. Returns false after the last one.
bool NextCombination(std::vector<int>& combo, int k) {
  const int t = static_cast<int>(combo.size());
  int i = t - 1;
  while (i >= 0 && combo[i] == k - t + i) --i;
  if (i < 0) return false;
  ++combo[i];
  for (int j = i + 1; j < t; ++j) combo[j] = combo[j - 1] + 1;
  return true;
}

bool MulOverflows(std::uint64_t a, std::uint64_t b, std::uint64_t& out) {
  return __builtin_mul_overflow(a, b, &out);
}

}  // namespace

CoveringArraySpec::CoveringArraySpec(int strength, std::vector<int> domains)
    : strength_(strength), domains_(std::move(domains)) {
  const int k = static_cast<int>(domains_.size());
  if (k < 1) throw InvalidArgument("spec: need at least one parameter");
  if (strength_ < 1 || strength_ > k) {
    throw InvalidArgument("spec: strength t=" + std::to_string(strength_) +
                          " must satisfy 1 <= t <= k=" + std::to_string(k));
  }
  for (int i = 0; i < k; ++i) {
    if (domains_[i] < 1) {
      throw InvalidArgument("spec: domain of parameter " + std::to_string(i) +
                            " must be >= 1");
    }
  }
}

CoveringArraySpec CoveringArraySpec::Uniform(int strength, int num_params,
                                             int values) {
  if (num_params < 1) throw InvalidArgument("spec: need at least one parameter");
  return CoveringArraySpec(strength, std::vector<int>(num_params, values));
}

CoveringArraySpec CoveringArraySpec::Parse(std::string_view text) {
  std::optional<int> t, k;
  std::optional<std::vector<int>> domains;
  for (std::string_view field : Split(Trim(text), ';')) {
    field = Trim(field);
    if (field.empty()) continue;
    std::size_t eq = field.find('=');
    if (eq == std::string_view::npos) {
      throw SpecParseError("spec: expected key=value, got '" +
                           std::string(field) + "'");
    }
    std::string_view key = Trim(field.substr(0, eq));
    std::string_view value = Trim(field.substr(eq + 1));
    if (key == "t") {
      if (t) throw SpecParseError("spec: duplicate 't'");
      t = ParseSpecInt(value, "t");
    } else if (key == "k") {
      if (k) throw SpecParseError("spec: duplicate 'k'");
      k = ParseSpecInt(value, "k");
    } else if (key == "v") {
      if (domains) throw SpecParseError("spec: duplicate 'v'");
      domains.emplace();
      for (std::string_view item : Split(value, ',')) {
        std::size_t caret = item.find('^');
        int v = 0;
        int repeat = 1;
        if (caret == std::string_view::npos) {
          v = ParseSpecInt(item, "domain size");
        } else {
          v = ParseSpecInt(item.substr(0, caret), "domain size");
          repeat = ParseSpecInt(item.substr(caret + 1), "repeat count");
          if (repeat < 1) throw SpecParseError("spec: repeat count must be >= 1");
        }
        if (v < 1) throw SpecParseError("spec: domain sizes must be >= 1");
        if (domains->size() + repeat > 1'000'000) {
          throw SpecParseError("spec: too many parameters");
        }
        domains->insert(domains->end(), repeat, v);
      }
    } else {
      throw SpecParseError("spec: unknown key '" + std::string(key) + "'");
    }
  }
  if (!t || !k || !domains) {
    throw SpecParseError("spec: expected t=<t>;k=<k>;v=<v,...>, got '" +
                         std::string(text) + "'");
  }
  if (*k < 1) throw SpecParseError("spec: k must be >= 1");
  if (static_cast<int>(domains->size()) != *k) {
    throw SpecParseError("spec: k=" + std::to_string(*k) + " but " +
                         std::to_string(domains->size()) +
                         " domain sizes given");
  }
  if (*t < 1 || *t > *k) {
    throw SpecParseError("spec: strength t=" + std::to_string(*t) +
                         " must satisfy 1 <= t <= k=" + std::to_string(*k));
  }
  return CoveringArraySpec(*t, std::move(*domains));
}

std::string CoveringArraySpec::ToString() const {
  std::ostringstream out;
  out << "t=" << strength_ << ";k=" << domains_.size() << ";v=";
  std::size_t i = 0;
  bool first = true;
  while (i < domains_.size()) {
    std::size_t j = i;
    while (j < domains_.size() && domains_[j] == domains_[i]) ++j;
    if (!first) out << ',';
    first = false;
    out << domains_[i];
    if (j - i > 1) out << '^' << (j - i);
    i = j;
  }
  return out.str();
}

std::uint64_t CoveringArraySpec::TotalInteractions() const {
  // Elementary symmetric polynomial e_t(v_1..v_k) by the usual DP:
  // sums[j] = sum over j-subsets of the parameters seen so far.
  std::vector<std::uint64_t> sums(strength_ + 1, 0);
  sums[0] = 1;
  for (int v : domains_) {
    for (int j = strength_; j >= 1; --j) {
      std::uint64_t term = 0;
      if (MulOverflows(sums[j - 1], static_cast<std::uint64_t>(v), term) ||
          __builtin_add_overflow(sums[j], term, &sums[j])) {
        throw ArithmeticOverflow("interaction count of " + ToString() +
                                 " exceeds 64 bits");
      }
    }
  }
  return sums[strength_];
}

Combination::Combination(std::vector<int> indices)
    : indices_(std::move(indices)) {
  for (std::size_t i = 0; i < indices_.size(); ++i) {
    if (indices_[i] < 0) {
      throw InvalidCombination("combination has a negative index");
    }
    if (i > 0 && indices_[i - 1] >= indices_[i]) {
      throw InvalidCombination("combination " + FormatIndices(indices_) +
                               " is not strictly increasing");
    }
  }
}

std::size_t CombinationHash::operator()(const Combination& combo) const noexcept {
  // FNV-1a over the indices.
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (int i : combo) {
    h ^= static_cast<std::uint32_t>(i);
    h *= 0x100000001b3ULL;
  }
  return static_cast<std::size_t>(h);
}

void ValidateCombination(const CoveringArraySpec& spec,
                         const Combination& combo) {
  if (static_cast<int>(combo.size()) != spec.strength()) {
    throw InvalidCombination("combination " + FormatIndices(combo.indices()) +
                             " has " + std::to_string(combo.size()) +
                             " indices, strength is " +
                             std::to_string(spec.strength()));
  }
  if (combo.size() > 0 && combo.indices().back() >= spec.num_params()) {
    throw InvalidCombination("combination " + FormatIndices(combo.indices()) +
                             " exceeds k=" + std::to_string(spec.num_params()));
  }
}

void ValidateTestCase(const CoveringArraySpec& spec, const TestCase& row) {
  if (static_cast<int>(row.assignment.size()) != spec.num_params()) {
    throw InvalidTestCase("test case has " +
                          std::to_string(row.assignment.size()) +
                          " values, spec has k=" +
                          std::to_string(spec.num_params()));
  }
  for (int i = 0; i < spec.num_params(); ++i) {
    int v = row.assignment[i];
    if (v < 0 || v >= spec.domain(i)) {
      throw InvalidTestCase("value " + std::to_string(v) + " of parameter " +
                            std::to_string(i) + " outside 0.." +
                            std::to_string(spec.domain(i) - 1));
    }
  }
}

void ValidateElement(const CoveringArraySpec& spec,
                     const InteractionElement& element) {
  ValidateCombination(spec, element.combo);
  if (element.values.size() != element.combo.size()) {
    throw InvalidArgument("interaction element has " +
                          std::to_string(element.values.size()) +
                          " values for " + std::to_string(element.combo.size()) +
                          " parameters");
  }
  for (std::size_t j = 0; j < element.values.size(); ++j) {
    int v = element.values[j];
    if (v < 0 || v >= spec.domain(element.combo[j])) {
      throw InvalidArgument("interaction element value out of domain");
    }
  }
}

void ValidateSuite(const TestSuite& suite) {
  for (const TestCase& row : suite.rows) ValidateTestCase(suite.spec, row);
}

InteractionElement ExtractElement(const TestCase& row,
                                  const Combination& combo) {
  InteractionElement element{combo, {}};
  element.values.reserve(combo.size());
  for (int index : combo) {
    if (index >= static_cast<int>(row.assignment.size())) {
      throw InvalidCombination("combination " + FormatIndices(combo.indices()) +
                               " indexes past a row of width " +
                               std::to_string(row.assignment.size()));
    }
    element.values.push_back(row.assignment[index]);
  }
  return element;
}

VerificationReport VerifyCoverage(const TestSuite& suite) {
  ValidateSuite(suite);
  const CoveringArraySpec& spec = suite.spec;
  const int t = spec.strength();
  VerificationReport report;

  std::vector<int> combo(t);
  for (int j = 0; j < t; ++j) combo[j] = j;
  std::vector<char> seen;
  do {
    std::uint64_t cells = 1;
    for (int index : combo) cells *= static_cast<std::uint64_t>(spec.domain(index));
    seen.assign(cells, 0);
    for (const TestCase& row : suite.rows) {
      std::uint64_t code = 0;
      for (int index : combo) {
        code = code * spec.domain(index) + row.assignment[index];
      }
      seen[code] = 1;
    }
    for (std::uint64_t code = 0; code < cells; ++code) {
      if (seen[code]) {
        ++report.covered;
        continue;
      }
      std::vector<int> values(t);
      std::uint64_t rest = code;
      for (int j = t - 1; j >= 0; --j) {
        values[j] = static_cast<int>(rest % spec.domain(combo[j]));
        rest /= spec.domain(combo[j]);
      }
      report.missing.push_back({Combination(combo), std::move(values)});
    }
  } while (NextCombination(combo, spec.num_params()));
  return report;
}

std::vector<TestCase> ReadSuiteCsv(std::istream& in,
                                   const CoveringArraySpec& spec) {
  std::vector<TestCase> rows;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view trimmed = Trim(line);
    if (trimmed.empty()) continue;
    TestCase row;
    for (std::string_view cell : Split(trimmed, ',')) {
      int v = 0;
      if (!ParseInt(cell, v)) {
        throw InvalidTestCase("line " + std::to_string(line_no) +
                              ": not an integer: '" + std::string(cell) + "'");
      }
      row.assignment.push_back(v);
    }
    try {
      ValidateTestCase(spec, row);
    } catch (const InvalidTestCase& e) {
      throw InvalidTestCase("line " + std::to_string(line_no) + ": " +
                            e.what());
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

void WriteSuiteCsv(std::ostream& out, std::span<const TestCase> rows) {
  for (const TestCase& row : rows) {
    out << FormatIndices(row.assignment) << '\n';
  }
}

std::string FormatIndices(std::span<const int> values) {
  std::string s;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(values[i]);
  }
  return s;
}

}  // namespace combcov
