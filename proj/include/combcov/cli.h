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

#ifndef COMBCOV_CLI_H_
#define COMBCOV_CLI_H_

#include <iosfwd>

namespace combcov {

// Process exit codes of the combcov tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCoverageFailure = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitCapacity = 3;

// Entry point of the combcov tool. Subcommands: gen-combos, generate-ca,
// verify-ca, bench-gen, bench-search. Returns the process exit code.
int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err);

}  // namespace combcov

#endif  // COMBCOV_CLI_H_
