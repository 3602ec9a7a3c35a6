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

#include "combcov/bench.h"

#include <sys/utsname.h>

#include <algorithm>
#include <ctime>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>

#include "combcov/combgen.h"
#include "combcov/errors.h"
#include "json.hpp"

namespace combcov {
namespace {

using Clock = std::chrono::steady_clock;

double ToMs(Clock::duration d) {
  return std::chrono::duration<double, std::milli>(d).count();
}

struct PassResult {
  bool finished = false;
  std::uint64_t combinations = 0;
  std::uint64_t masks = 0;
  Clock::duration elapsed{};
};

// Keeps the optimizer from discarding the generated combinations.
volatile std::uint64_t g_sink = 0;

PassResult StackPass(int k, int t, Clock::time_point deadline) {
  PassResult result;
  const auto start = Clock::now();
  StackCombinationStream stream(k, t);
  std::uint64_t checksum = 0;
  while (stream.Next()) {
    checksum += static_cast<std::uint64_t>(stream.current().back());
    if ((++result.combinations & 0xffff) == 0 && Clock::now() > deadline) {
      result.elapsed = Clock::now() - start;
      return result;
    }
  }
  result.elapsed = Clock::now() - start;
  result.finished = true;
  g_sink = g_sink + checksum;
  return result;
}

PassResult NbitPass(int k, int t, Clock::time_point deadline) {
  PassResult result;
  const auto start = Clock::now();
  NbitCombinationStream stream(k, t);
  std::uint64_t checksum = 0;
  while (true) {
    const auto step = stream.Advance(std::uint64_t{1} << 20);
    if (step == NbitCombinationStream::Step::kDone) break;
    if (step == NbitCombinationStream::Step::kYield) {
      checksum += static_cast<std::uint64_t>(stream.current().back());
      ++result.combinations;
      if ((result.combinations & 0xffff) != 0) continue;
    }
    if (Clock::now() > deadline) {
      result.masks = stream.masks_visited();
      result.elapsed = Clock::now() - start;
      return result;
    }
  }
  result.elapsed = Clock::now() - start;
  result.masks = stream.masks_visited();
  result.finished = true;
  g_sink = g_sink + checksum;
  return result;
}

void FillTimes(BenchRecord& record, const std::vector<double>& samples) {
  record.samples = samples.size();
  if (samples.empty()) return;
  auto [lo, hi] = std::minmax_element(samples.begin(), samples.end());
  record.min_ms = *lo;
  record.max_ms = *hi;
  record.median_ms = Median(samples);
}

BenchRecord GenerationCase(const BenchScenario& scenario, int k, int t,
                           bool nbit) {
  BenchRecord record;
  record.kind = "generation";
  record.subject = nbit ? "nbit" : "stack";
  record.k = k;
  record.t = t;
  record.repetitions = scenario.repetitions;
  record.warmup = scenario.warmup;

  std::uint64_t expected = 0;
  try {
    expected = CountCombinations(k, t);
  } catch (const ArithmeticOverflow& e) {
    record.status = "unsupported";
    record.note = e.what();
    return record;
  }
  if (nbit && k > kNbitMaxParams) {
    record.status = "unsupported";
    record.note = "n-bit enumerator is limited to k <= " +
                  std::to_string(kNbitMaxParams) + " (machine word width)";
    return record;
  }

  std::vector<double> samples;
  for (int pass = 0; pass < scenario.warmup + scenario.repetitions; ++pass) {
    const auto deadline = Clock::now() + scenario.budget;
    const PassResult result =
        nbit ? NbitPass(k, t, deadline) : StackPass(k, t, deadline);
    if (!result.finished) {
      record.status = "skipped";
      record.note = "pass exceeded budget of " +
                    std::to_string(scenario.budget.count()) + " ms after " +
                    std::to_string(result.combinations) + " of " +
                    std::to_string(expected) + " combinations";
      record.combinations = result.combinations;
      record.masks_visited = result.masks;
      samples.clear();
      FillTimes(record, samples);
      return record;
    }
    if (result.combinations != expected) {
      throw Error("generator produced " + std::to_string(result.combinations) +
                  " combinations, expected " + std::to_string(expected));
    }
    record.combinations = result.combinations;
    record.masks_visited = result.masks;
    if (pass >= scenario.warmup) samples.push_back(ToMs(result.elapsed));
  }
  record.status = "ok";
  FillTimes(record, samples);
  return record;
}

BenchRecord SearchCase(const BenchScenario& scenario,
                       StoreMechanism mechanism) {
  const CoveringArraySpec& spec = *scenario.spec;
  BenchRecord record;
  record.kind = "search";
  record.subject = std::string(MechanismName(mechanism));
  record.spec = spec.ToString();
  record.k = spec.num_params();
  record.t = spec.strength();
  record.repetitions = scenario.repetitions;
  record.warmup = scenario.warmup;
  record.status = "ok";

  std::vector<double> samples;
  for (int rep = 0; rep < scenario.repetitions; ++rep) {
    std::unique_ptr<InteractionStore> store;
    const auto build_start = Clock::now();
    try {
      store = BuildStore(spec, mechanism, scenario.store);
    } catch (const CapacityExceeded& e) {
      record.status = "capacity_error";
      record.note = e.what();
      return record;
    } catch (const ArithmeticOverflow& e) {
      record.status = "capacity_error";
      record.note = e.what();
      return record;
    }
    if (rep == 0) {
      record.build_ms = ToMs(Clock::now() - build_start);
      record.elements = store->Total();
    }

    int seen = 0;
    auto observer = [&](std::chrono::nanoseconds elapsed,
                        const InteractionStore&) {
      if (seen++ >= scenario.warmup) samples.push_back(ToMs(elapsed));
    };
    GreedyStats stats;
    try {
      GenerateCa(*store, scenario.greedy, &stats, observer);
    } catch (const IncompleteCoverage& e) {
      record.status = "truncated";
      record.note = "stopped at max_rows=" +
                    std::to_string(scenario.greedy.max_rows) + " with " +
                    std::to_string(e.remaining()) + " elements uncovered";
    }
    const StoreCounters counters = store->counters();
    record.rows = stats.rows;
    record.queries += stats.queries;
    record.bucket_lookups += counters.bucket_lookups;
    record.elements_scanned += counters.elements_scanned;
  }
  FillTimes(record, samples);
  if (samples.empty()) record.note += "no samples left after warmup";
  return record;
}

std::string ReadCpuModel() {
  std::ifstream in("/proc/cpuinfo");
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("model name", 0) == 0) {
      auto colon = line.find(':');
      if (colon != std::string::npos) {
        auto value = line.substr(colon + 1);
        value.erase(0, value.find_first_not_of(' '));
        return value;
      }
    }
  }
  return "unknown";
}

nlohmann::json OptionalMs(const std::optional<double>& value) {
  return value ? nlohmann::json(*value) : nlohmann::json(nullptr);
}

std::string CsvField(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string CsvMs(const std::optional<double>& value) {
  if (!value) return "";
  std::ostringstream out;
  out.precision(9);
  out << *value;
  return out.str();
}

}  // namespace

EnvironmentStamp EnvironmentStamp::Capture() {
  EnvironmentStamp stamp;
  utsname info{};
  if (uname(&info) == 0) {
    stamp.os = std::string(info.sysname) + " " + info.release + " " +
               info.machine;
  } else {
    stamp.os = "unknown";
  }
  stamp.cpu = ReadCpuModel();
#if defined(__clang__)
  stamp.compiler = "clang " __clang_version__;
#elif defined(__GNUC__)
  stamp.compiler = "gcc " __VERSION__;
#else
  stamp.compiler = "unknown";
#endif
  const std::time_t now = std::time(nullptr);
  std::tm utc{};
  gmtime_r(&now, &utc);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &utc);
  stamp.timestamp = buf;
  return stamp;
}

double Median(std::vector<double> samples) {
  if (samples.empty()) throw InvalidArgument("median of an empty sample");
  const std::size_t mid = samples.size() / 2;
  std::nth_element(samples.begin(), samples.begin() + mid, samples.end());
  const double upper = samples[mid];
  if (samples.size() % 2 == 1) return upper;
  const double lower = *std::max_element(samples.begin(), samples.begin() + mid);
  return (lower + upper) / 2;
}

BenchReport RunGenerationBench(const BenchScenario& scenario) {
  if (scenario.repetitions < 1) throw InvalidArgument("repetitions must be >= 1");
  if (scenario.warmup < 0) throw InvalidArgument("warmup must be >= 0");
  BenchReport report{EnvironmentStamp::Capture(), {}};
  for (int k : scenario.k_list) {
    for (int t : scenario.t_list) {
      if (k < 1 || t < 1 || t > k) {
        throw InvalidArgument("generation case needs 1 <= t <= k, got k=" +
                              std::to_string(k) + " t=" + std::to_string(t));
      }
      report.records.push_back(GenerationCase(scenario, k, t, false));
      if (scenario.include_nbit) {
        report.records.push_back(GenerationCase(scenario, k, t, true));
      }
    }
  }
  return report;
}

BenchReport RunSearchBench(const BenchScenario& scenario) {
  if (scenario.repetitions < 1) throw InvalidArgument("repetitions must be >= 1");
  if (scenario.warmup < 0) throw InvalidArgument("warmup must be >= 0");
  if (!scenario.spec) throw InvalidArgument("search scenario needs a spec");
  ValidateConfig(scenario.greedy);
  BenchReport report{EnvironmentStamp::Capture(), {}};
  for (StoreMechanism mechanism : scenario.mechanisms) {
    report.records.push_back(SearchCase(scenario, mechanism));
  }
  return report;
}

BenchReport RunScenario(const BenchScenario& scenario) {
  return scenario.kind == BenchKind::kGeneration ? RunGenerationBench(scenario)
                                                 : RunSearchBench(scenario);
}

void WriteReportJson(std::ostream& out, const BenchReport& report) {
  nlohmann::json doc;
  doc["schema"] = kBenchSchemaVersion;
  doc["environment"] = {{"os", report.environment.os},
                        {"cpu", report.environment.cpu},
                        {"compiler", report.environment.compiler},
                        {"timestamp", report.environment.timestamp}};
  doc["records"] = nlohmann::json::array();
  for (const BenchRecord& r : report.records) {
    doc["records"].push_back({
        {"kind", r.kind},
        {"subject", r.subject},
        {"spec", r.spec},
        {"k", r.k},
        {"t", r.t},
        {"status", r.status},
        {"note", r.note},
        {"repetitions", r.repetitions},
        {"warmup", r.warmup},
        {"samples", r.samples},
        {"min_ms", OptionalMs(r.min_ms)},
        {"median_ms", OptionalMs(r.median_ms)},
        {"max_ms", OptionalMs(r.max_ms)},
        {"combinations", r.combinations},
        {"masks_visited", r.masks_visited},
        {"build_ms", OptionalMs(r.build_ms)},
        {"elements", r.elements},
        {"rows", r.rows},
        {"queries", r.queries},
        {"bucket_lookups", r.bucket_lookups},
        {"elements_scanned", r.elements_scanned},
    });
  }
  out << doc.dump(2) << '\n';
}

void WriteReportCsv(std::ostream& out, const BenchReport& report) {
  out << "kind,subject,spec,k,t,status,note,repetitions,warmup,samples,"
         "min_ms,median_ms,max_ms,combinations,masks_visited,build_ms,"
         "elements,rows,queries,bucket_lookups,elements_scanned\n";
  for (const BenchRecord& r : report.records) {
    out << r.kind << ',' << r.subject << ',' << CsvField(r.spec) << ',' << r.k
        << ',' << r.t << ',' << r.status << ',' << CsvField(r.note) << ','
        << r.repetitions << ',' << r.warmup << ',' << r.samples << ','
        << CsvMs(r.min_ms) << ',' << CsvMs(r.median_ms) << ','
        << CsvMs(r.max_ms) << ',' << r.combinations << ',' << r.masks_visited
        << ',' << CsvMs(r.build_ms) << ',' << r.elements << ',' << r.rows
        << ',' << r.queries << ',' << r.bucket_lookups << ','
        << r.elements_scanned << '\n';
  }
}

}  // namespace combcov
