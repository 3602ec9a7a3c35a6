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

#include "combcov/cli.h"

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "combcov/bench.h"
#include "combcov/ca_model.h"
#include "combcov/combgen.h"
#include "combcov/errors.h"
#include "combcov/greedy.h"
#include "combcov/interaction_store.h"
#include "json.hpp"

namespace combcov {
namespace {

using Clock = std::chrono::steady_clock;

double ElapsedMs(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since)
      .count();
}

std::ofstream OpenOutput(const std::string& path) {
  std::ofstream file(path);
  if (!file) throw InvalidArgument("cannot open '" + path + "' for writing");
  return file;
}

struct GenCombosArgs {
  int k = 0;
  int t = 0;
  std::string algo = "stack";
  std::string out;
  bool count_only = false;
};

template <typename Stream>
void DumpCombinations(Stream& stream, std::ostream& out) {
  while (stream.Next()) out << FormatIndices(stream.current()) << '\n';
}

int GenCombos(const GenCombosArgs& args, std::ostream& out) {
  const bool nbit = args.algo == "nbit";
  if (args.count_only) {
    // Constructing the stream checks (k, t) and the generator's limits.
    if (nbit) {
      NbitCombinationStream check(args.k, args.t);
    } else {
      StackCombinationStream check(args.k, args.t);
    }
    out << CountCombinations(args.k, args.t) << '\n';
    return kExitOk;
  }
  std::ofstream file;
  if (!args.out.empty()) file = OpenOutput(args.out);
  std::ostream& sink = args.out.empty() ? out : file;
  if (nbit) {
    // Sorted so both algorithms print the same lexicographic listing.
    for (const Combination& combo : GenerateNbit(args.k, args.t).combos) {
      sink << FormatIndices(combo.indices()) << '\n';
    }
  } else {
    StackCombinationStream stream(args.k, args.t);
    DumpCombinations(stream, sink);
  }
  return kExitOk;
}

struct GenerateCaArgs {
  std::string spec;
  std::string mech = "hash";
  std::uint64_t seed = 1;
  int candidates = 50;
  int max_rows = 100'000;
  std::uint64_t max_elements = StoreOptions{}.max_elements;
  std::string out;
  std::string meta;
};

int GenerateCaCommand(const GenerateCaArgs& args, std::ostream& out,
                      std::ostream& err) {
  const CoveringArraySpec spec = CoveringArraySpec::Parse(args.spec);
  const StoreMechanism mechanism = ParseMechanism(args.mech);
  GreedyConfig config;
  config.rng_seed = args.seed;
  config.candidates_per_row = args.candidates;
  config.max_rows = args.max_rows;
  ValidateConfig(config);

  const auto start = Clock::now();
  auto store = BuildStore(spec, mechanism, {args.max_elements});
  const double build_ms = ElapsedMs(start);

  GreedyStats stats;
  TestSuite suite{spec, {}};
  std::uint64_t remaining = 0;
  const auto generate_start = Clock::now();
  try {
    suite = GenerateCa(*store, config, &stats);
  } catch (const IncompleteCoverage& e) {
    suite = e.partial();
    remaining = e.remaining();
  }
  const double generate_ms = ElapsedMs(generate_start);

  std::ofstream csv = OpenOutput(args.out);
  WriteSuiteCsv(csv, suite.rows);

  nlohmann::json meta = {
      {"spec", spec.ToString()},
      {"mechanism", MechanismName(mechanism)},
      {"seed", args.seed},
      {"rng", kGreedyRngName},
      {"candidates_per_row", config.candidates_per_row},
      {"max_rows", config.max_rows},
      {"N", suite.rows.size()},
      {"complete", remaining == 0},
      {"remaining", remaining},
      {"total_elements", store->Total()},
      {"queries", stats.queries},
      {"fallback_rows", stats.fallback_rows},
      {"timings_ms",
       {{"build", build_ms}, {"generate", generate_ms},
        {"total", ElapsedMs(start)}}},
  };
  std::ofstream meta_file =
      OpenOutput(args.meta.empty() ? args.out + ".json" : args.meta);
  meta_file << meta.dump(2) << '\n';

  if (remaining != 0) {
    err << "incomplete coverage: " << remaining << " elements uncovered after "
        << suite.rows.size() << " rows\n";
    return kExitCoverageFailure;
  }
  out << "N=" << suite.rows.size() << " mechanism=" << MechanismName(mechanism)
      << " seed=" << args.seed << '\n';
  return kExitOk;
}

struct VerifyArgs {
  std::string spec;
  std::string suite;
  int show_missing = 0;
};

int VerifyCommand(const VerifyArgs& args, std::ostream& out) {
  const CoveringArraySpec spec = CoveringArraySpec::Parse(args.spec);
  std::ifstream in(args.suite);
  if (!in) throw InvalidArgument("cannot open '" + args.suite + "'");
  TestSuite suite{spec, ReadSuiteCsv(in, spec)};
  const VerificationReport report = VerifyCoverage(suite);
  out << "rows=" << suite.rows.size() << " covered=" << report.covered
      << " missing=" << report.missing.size() << '\n';
  const std::size_t shown =
      std::min<std::size_t>(report.missing.size(), args.show_missing);
  for (std::size_t i = 0; i < shown; ++i) {
    const InteractionElement& e = report.missing[i];
    out << "missing (" << FormatIndices(e.combo.indices()) << ")=("
        << FormatIndices(e.values) << ")\n";
  }
  return report.complete() ? kExitOk : kExitCoverageFailure;
}

struct BenchArgs {
  std::vector<int> k_list{20, 50, 100, 200, 400};
  std::vector<int> t_list{2, 3, 4, 5, 6};
  bool no_nbit = false;
  std::string spec;
  std::vector<std::string> mechs{"hash", "indexed", "full"};
  int reps = 3;
  int warmup = 3;
  double budget_s = 120;
  std::uint64_t seed = 1;
  int candidates = 50;
  int max_rows = 100'000;
  std::uint64_t max_elements = StoreOptions{}.max_elements;
  std::string json;
  std::string csv;
};

int BenchCommand(const BenchArgs& args, BenchKind kind, std::ostream& out) {
  BenchScenario scenario;
  scenario.kind = kind;
  scenario.repetitions = args.reps;
  scenario.warmup = args.warmup;
  scenario.budget = std::chrono::milliseconds(
      static_cast<std::int64_t>(args.budget_s * 1000));
  if (kind == BenchKind::kGeneration) {
    scenario.k_list = args.k_list;
    scenario.t_list = args.t_list;
    scenario.include_nbit = !args.no_nbit;
  } else {
    scenario.spec = CoveringArraySpec::Parse(args.spec);
    for (const std::string& m : args.mechs) {
      scenario.mechanisms.push_back(ParseMechanism(m));
    }
    scenario.greedy.rng_seed = args.seed;
    scenario.greedy.candidates_per_row = args.candidates;
    scenario.greedy.max_rows = args.max_rows;
    scenario.store.max_elements = args.max_elements;
  }
  const BenchReport report = RunScenario(scenario);
  if (!args.json.empty()) {
    std::ofstream file = OpenOutput(args.json);
    WriteReportJson(file, report);
  }
  if (!args.csv.empty()) {
    std::ofstream file = OpenOutput(args.csv);
    WriteReportCsv(file, report);
  }
  if (args.json.empty() && args.csv.empty()) WriteReportJson(out, report);
  return kExitOk;
}

}  // namespace

int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Combination generation and interaction coverage tools",
               "combcov"};
  app.require_subcommand(1);

  GenCombosArgs gen;
  auto* gen_cmd = app.add_subcommand(
      "gen-combos", "List all t-combinations of k parameter indices");
  gen_cmd->add_option("--k", gen.k, "Number of parameters")->required();
  gen_cmd->add_option("--t", gen.t, "Combination strength")->required();
  gen_cmd->add_option("--algo", gen.algo, "Generator")
      ->check(CLI::IsMember({"stack", "nbit"}));
  auto* gen_out = gen_cmd->add_option("--out", gen.out, "Output file");
  gen_cmd->add_flag("--count-only", gen.count_only, "Print only the count")
      ->excludes(gen_out);

  GenerateCaArgs ca;
  auto* ca_cmd = app.add_subcommand(
      "generate-ca", "Build a covering array with the greedy generator");
  ca_cmd->add_option("--spec", ca.spec, "e.g. t=2;k=10;v=10^10")->required();
  ca_cmd->add_option("--mech", ca.mech, "hash, indexed or full");
  ca_cmd->add_option("--seed", ca.seed, "RNG seed");
  ca_cmd->add_option("--candidates", ca.candidates, "Candidates per row");
  ca_cmd->add_option("--max-rows", ca.max_rows, "Row cap");
  ca_cmd->add_option("--max-elements", ca.max_elements, "Store size budget");
  ca_cmd->add_option("--out", ca.out, "Suite CSV path")->required();
  ca_cmd->add_option("--meta", ca.meta, "Metadata JSON path (default <out>.json)");

  VerifyArgs verify;
  auto* verify_cmd =
      app.add_subcommand("verify-ca", "Check a suite CSV against a spec");
  verify_cmd->add_option("--spec", verify.spec, "Array spec")->required();
  verify_cmd->add_option("--suite", verify.suite, "Suite CSV")->required();
  verify_cmd->add_option("--show-missing", verify.show_missing,
                         "Print up to this many missing elements");

  BenchArgs bench_gen;
  auto* bench_gen_cmd =
      app.add_subcommand("bench-gen", "Time combination generation");
  bench_gen_cmd->add_option("--k-list", bench_gen.k_list)->delimiter(',');
  bench_gen_cmd->add_option("--t-list", bench_gen.t_list)->delimiter(',');
  bench_gen_cmd->add_flag("--no-nbit", bench_gen.no_nbit,
                          "Skip the n-bit enumerator");
  bench_gen_cmd->add_option("--reps", bench_gen.reps, "Measured passes");
  bench_gen_cmd->add_option("--warmup", bench_gen.warmup, "Untimed passes");
  bench_gen_cmd->add_option("--budget-s", bench_gen.budget_s,
                            "Per-pass time budget in seconds");
  bench_gen_cmd->add_option("--json", bench_gen.json, "JSON report path");
  bench_gen_cmd->add_option("--csv", bench_gen.csv, "CSV report path");

  BenchArgs bench_search;
  bench_search.reps = 1;
  auto* bench_search_cmd = app.add_subcommand(
      "bench-search", "Time coverage queries of each store mechanism");
  bench_search_cmd->add_option("--spec", bench_search.spec)->required();
  bench_search_cmd->add_option("--mech", bench_search.mechs)->delimiter(',');
  bench_search_cmd->add_option("--reps", bench_search.reps,
                               "Greedy runs per mechanism");
  bench_search_cmd->add_option("--warmup", bench_search.warmup,
                               "Leading queries dropped per run");
  bench_search_cmd->add_option("--seed", bench_search.seed);
  bench_search_cmd->add_option("--candidates", bench_search.candidates);
  bench_search_cmd->add_option("--max-rows", bench_search.max_rows,
                               "Stop each greedy run after this many rows");
  bench_search_cmd->add_option("--max-elements", bench_search.max_elements);
  bench_search_cmd->add_option("--json", bench_search.json, "JSON report path");
  bench_search_cmd->add_option("--csv", bench_search.csv, "CSV report path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*gen_cmd) return GenCombos(gen, out);
    if (*ca_cmd) return GenerateCaCommand(ca, out, err);
    if (*verify_cmd) return VerifyCommand(verify, out);
    if (*bench_gen_cmd) {
      return BenchCommand(bench_gen, BenchKind::kGeneration, out);
    }
    if (*bench_search_cmd) {
      return BenchCommand(bench_search, BenchKind::kSearch, out);
    }
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const UnsupportedSize& e) {
    err << "error: " << e.what() << '\n';
    return kExitCapacity;
  } catch (const CapacityExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kExitCapacity;
  } catch (const ArithmeticOverflow& e) {
    err << "error: " << e.what() << '\n';
    return kExitCapacity;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitCoverageFailure;
  }
  return kExitUsage;
}

}  // namespace combcov
