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

#ifndef COMBCOV_ERRORS_H_
#define COMBCOV_ERRORS_H_

#include <cstdint>
#include <stdexcept>
#include <string>

namespace combcov {

// Root of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad caller input: malformed spec strings, out-of-range (k, t), rows that
// do not fit their spec, and so on.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class InvalidCombination : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class InvalidTestCase : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class SpecParseError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

// A request that is well formed but outside what an algorithm supports,
// e.g. the n-bit enumerator past the machine word width.
class UnsupportedSize : public Error {
 public:
  using Error::Error;
};

class ArithmeticOverflow : public Error {
 public:
  using Error::Error;
};

// The projected number of interaction elements exceeds the store budget.
class CapacityExceeded : public Error {
 public:
  CapacityExceeded(std::uint64_t requested, std::uint64_t budget)
      : Error("interaction store needs " + std::to_string(requested) +
              " elements, budget is " + std::to_string(budget)),
        requested_(requested),
        budget_(budget) {}

  std::uint64_t requested() const { return requested_; }
  std::uint64_t budget() const { return budget_; }

 private:
  std::uint64_t requested_;
  std::uint64_t budget_;
};

}  // namespace combcov

#endif  // COMBCOV_ERRORS_H_
