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

// Benchmark harness for the two experiment families: wall time of a full
// combination generation pass, and per-query coverage search time while a
// greedy run fills the array.
//
// Timing protocol: steady_clock, `warmup` leading measurements discarded,
// min/median/max over the rest. Cases run strictly one after another.

#ifndef COMBCOV_BENCH_H_
#define COMBCOV_BENCH_H_

#include <chrono>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "combcov/ca_model.h"
#include "combcov/greedy.h"
#include "combcov/interaction_store.h"

namespace combcov {

enum class BenchKind { kGeneration, kSearch };

struct BenchScenario {
  BenchKind kind = BenchKind::kGeneration;

  // Generation: every (k, t) pair with t <= k.
  std::vector<int> k_list;
  std::vector<int> t_list;
  bool include_nbit = true;

  // Search.
  std::optional<CoveringArraySpec> spec;
  std::vector<StoreMechanism> mechanisms;
  GreedyConfig greedy;
  StoreOptions store;

  // Generation: measured passes per case. Search: greedy runs per mechanism.
  int repetitions = 3;
  // Generation: untimed passes per case. Search: leading queries dropped
  // from each run.
  int warmup = 3;
  // A generation pass that runs longer than this is abandoned and the case
  // reported as skipped.
  std::chrono::milliseconds budget{120'000};
};

struct EnvironmentStamp {
  std::string os;
  std::string cpu;
  std::string compiler;
  std::string timestamp;  // UTC, ISO 8601

  static EnvironmentStamp Capture();
};

// One (case, generator or mechanism) measurement. Times are in milliseconds
// and present only for status "ok" and "truncated".
struct BenchRecord {
  std::string kind;     // "generation" | "search"
  std::string subject;  // "stack" | "nbit" | "hash" | "indexed" | "full"
  std::string spec;     // search only
  int k = 0;
  int t = 0;
  // "ok", "skipped" (over budget), "unsupported" (beyond the generator's
  // limit), "truncated" (greedy hit max_rows), "capacity_error".
  std::string status;
  std::string note;
  int repetitions = 0;
  int warmup = 0;
  std::uint64_t samples = 0;
  std::optional<double> min_ms;
  std::optional<double> median_ms;
  std::optional<double> max_ms;

  std::uint64_t combinations = 0;   // per generation pass
  std::uint64_t masks_visited = 0;  // nbit, per pass
  std::optional<double> build_ms;   // search: store construction, first run
  std::uint64_t elements = 0;       // search: store size after build
  std::uint64_t rows = 0;           // search: rows of the last greedy run
  std::uint64_t queries = 0;        // search: coverage queries timed or not
  std::uint64_t bucket_lookups = 0;
  std::uint64_t elements_scanned = 0;
};

struct BenchReport {
  EnvironmentStamp environment;
  std::vector<BenchRecord> records;
};

inline constexpr std::string_view kBenchSchemaVersion = "combcov.bench/1";

BenchReport RunGenerationBench(const BenchScenario& scenario);
BenchReport RunSearchBench(const BenchScenario& scenario);
BenchReport RunScenario(const BenchScenario& scenario);

// Median of the samples (mean of the two middle ones for an even count).
double Median(std::vector<double> samples);

void WriteReportJson(std::ostream& out, const BenchReport& report);
void WriteReportCsv(std::ostream& out, const BenchReport& report);

}  // namespace combcov

#endif  // COMBCOV_BENCH_H_
