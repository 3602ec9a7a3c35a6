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

#include <chrono>
#include <fstream>
#include <sstream>
#include <string>

#include "combcov/combgen.h"
#include "gtest/gtest.h"
#include "json.hpp"

namespace combcov {
namespace {

using json = nlohmann::json;

BenchScenario GenerationScenario(std::vector<int> ks, std::vector<int> ts) {
  BenchScenario scenario;
  scenario.kind = BenchKind::kGeneration;
  scenario.k_list = std::move(ks);
  scenario.t_list = std::move(ts);
  scenario.repetitions = 2;
  scenario.warmup = 1;
  return scenario;
}

BenchScenario SearchScenario(const char* spec) {
  BenchScenario scenario;
  scenario.kind = BenchKind::kSearch;
  scenario.spec = CoveringArraySpec::Parse(spec);
  scenario.mechanisms.assign(std::begin(kAllMechanisms), std::end(kAllMechanisms));
  scenario.repetitions = 1;
  return scenario;
}

const BenchRecord& Find(const BenchReport& report, const std::string& subject,
                        int k = -1) {
  for (const auto& r : report.records) {
    if (r.subject == subject && (k < 0 || r.k == k)) return r;
  }
  throw std::runtime_error("no record for " + subject);
}

TEST(MedianTest, OddAndEven) {
  EXPECT_DOUBLE_EQ(Median({3, 1, 2}), 2);
  EXPECT_DOUBLE_EQ(Median({4, 1, 3, 2}), 2.5);
  EXPECT_DOUBLE_EQ(Median({7}), 7);
  EXPECT_THROW(Median({}), InvalidArgument);
}

TEST(GenerationBenchTest, SmokeCase) {
  const auto report = RunGenerationBench(GenerationScenario({3}, {2}));
  ASSERT_EQ(report.records.size(), 2u);
  for (const auto& r : report.records) {
    EXPECT_EQ(r.status, "ok");
    EXPECT_EQ(r.combinations, 3u);
    EXPECT_EQ(r.samples, 2u);
    EXPECT_GT(*r.min_ms, 0);
    EXPECT_LE(*r.min_ms, *r.median_ms);
    EXPECT_LE(*r.median_ms, *r.max_ms);
  }
  EXPECT_EQ(Find(report, "nbit").masks_visited, 8u);
  EXPECT_FALSE(report.environment.timestamp.empty());
  EXPECT_FALSE(report.environment.os.empty());
}

TEST(GenerationBenchTest, NbitBeyondWordWidthIsUnsupported) {
  const auto report = RunGenerationBench(GenerationScenario({20, 400}, {2}));
  ASSERT_EQ(report.records.size(), 4u);
  EXPECT_EQ(Find(report, "stack", 400).status, "ok");
  EXPECT_EQ(Find(report, "stack", 400).combinations, 79800u);
  EXPECT_EQ(Find(report, "nbit", 20).status, "ok");
  EXPECT_EQ(Find(report, "nbit", 20).combinations, 190u);
  EXPECT_EQ(Find(report, "nbit", 400).status, "unsupported");
  EXPECT_FALSE(Find(report, "nbit", 400).median_ms.has_value());
}

TEST(GenerationBenchTest, OverBudgetCasesAreSkipped) {
  auto scenario = GenerationScenario({40}, {2});
  scenario.budget = std::chrono::milliseconds(20);
  const auto report = RunGenerationBench(scenario);
  EXPECT_EQ(Find(report, "stack").status, "ok");
  const auto& nbit = Find(report, "nbit");
  EXPECT_EQ(nbit.status, "skipped");
  EXPECT_FALSE(nbit.median_ms.has_value());
  EXPECT_LT(nbit.masks_visited, std::uint64_t{1} << 40);
}

TEST(GenerationBenchTest, InvalidCaseThrows) {
  EXPECT_THROW(RunGenerationBench(GenerationScenario({3}, {4})), InvalidArgument);
  auto scenario = GenerationScenario({3}, {2});
  scenario.repetitions = 0;
  EXPECT_THROW(RunGenerationBench(scenario), InvalidArgument);
}

TEST(SearchBenchTest, SmokeCaseUnderOneSecond) {
  const auto start = std::chrono::steady_clock::now();
  const auto report = RunSearchBench(SearchScenario("t=2;k=2;v=2,2"));
  EXPECT_LT(std::chrono::steady_clock::now() - start, std::chrono::seconds(1));
  ASSERT_EQ(report.records.size(), 3u);
  for (const auto& r : report.records) {
    EXPECT_EQ(r.status, "ok");
    EXPECT_EQ(r.rows, 4u);
    EXPECT_EQ(r.elements, 4u);
    EXPECT_EQ(r.samples, r.queries - 3);
    EXPECT_GT(*r.min_ms, 0);
    EXPECT_GT(*r.build_ms, 0);
  }
}

TEST(SearchBenchTest, CountersFollowTheMechanism) {
  const auto report = RunSearchBench(SearchScenario("t=2;k=6;v=3^6"));
  const auto& hash = Find(report, "hash");
  // One bucket lookup per combination for every query and every mark.
  EXPECT_EQ(hash.bucket_lookups, (hash.queries + hash.rows) * 15);
  EXPECT_EQ(hash.elements_scanned, 0u);
  const auto& full = Find(report, "full");
  EXPECT_EQ(full.bucket_lookups, 0u);
  EXPECT_GE(full.elements_scanned, full.elements);
  EXPECT_LE(full.elements_scanned, (full.queries + full.rows) * full.elements);
  // Indexed touches at least one and at most v^2 slots per combination.
  const auto& indexed = Find(report, "indexed");
  const auto ops = indexed.queries + indexed.rows;
  EXPECT_GE(indexed.elements_scanned, ops * 15);
  EXPECT_LE(indexed.elements_scanned, ops * 15 * 9);
  EXPECT_EQ(hash.rows, Find(report, "full").rows);
}

TEST(SearchBenchTest, RowCapTruncates) {
  auto scenario = SearchScenario("t=3;k=8;v=4^8");
  scenario.greedy.max_rows = 2;
  const auto report = RunSearchBench(scenario);
  for (const auto& r : report.records) {
    EXPECT_EQ(r.status, "truncated");
    EXPECT_EQ(r.rows, 2u);
    EXPECT_EQ(r.queries, 100u);
    EXPECT_EQ(r.samples, 97u);
  }
}

TEST(SearchBenchTest, CapacityErrorIsRecorded) {
  auto scenario = SearchScenario("t=2;k=10;v=10^10");
  scenario.store.max_elements = 1000;
  const auto report = RunSearchBench(scenario);
  for (const auto& r : report.records) {
    EXPECT_EQ(r.status, "capacity_error");
    EXPECT_NE(r.note.find("4500"), std::string::npos);
  }
}

TEST(SearchBenchTest, MediansStableAcrossIdenticalRuns) {
  auto scenario = SearchScenario("t=2;k=10;v=10^10");
  scenario.greedy.max_rows = 20;
  const auto first = RunSearchBench(scenario);
  const auto second = RunSearchBench(scenario);
  for (std::size_t i = 0; i < first.records.size(); ++i) {
    const double a = *first.records[i].median_ms;
    const double b = *second.records[i].median_ms;
    EXPECT_LT(std::max(a, b) / std::min(a, b), 5.0) << first.records[i].subject;
  }
}

TEST(ReportFormatTest, JsonFollowsSchema) {
  std::ifstream schema_file(COMBCOV_SOURCE_DIR "/docs/bench_report.schema.json");
  ASSERT_TRUE(schema_file);
  const json schema = json::parse(schema_file);
  const json& record_schema = schema["properties"]["records"]["items"];

  auto report = RunGenerationBench(GenerationScenario({3, 70}, {2}));
  const auto search = RunSearchBench(SearchScenario("t=2;k=3;v=2^3"));
  report.records.insert(report.records.end(), search.records.begin(),
                        search.records.end());
  std::stringstream out;
  WriteReportJson(out, report);
  const json doc = json::parse(out.str());

  for (const auto& key : schema["required"]) EXPECT_TRUE(doc.contains(key));
  EXPECT_EQ(doc["schema"], kBenchSchemaVersion);
  for (const auto& key : schema["properties"]["environment"]["required"]) {
    EXPECT_TRUE(doc["environment"][key.get<std::string>()].is_string());
  }
  ASSERT_EQ(doc["records"].size(), 7u);
  for (const auto& record : doc["records"]) {
    EXPECT_EQ(record.size(), record_schema["required"].size());
    for (const auto& key : record_schema["required"]) {
      const std::string name = key;
      ASSERT_TRUE(record.contains(name)) << name;
      const json& type = record_schema["properties"][name]["type"];
      const json& value = record[name];
      auto matches = [&](const std::string& t) {
        return (t == "string" && value.is_string()) ||
               (t == "integer" && value.is_number_integer()) ||
               (t == "number" && value.is_number()) ||
               (t == "null" && value.is_null());
      };
      bool ok = false;
      if (type.is_array()) {
        for (const auto& t : type) ok = ok || matches(t);
      } else {
        ok = matches(type);
      }
      EXPECT_TRUE(ok) << name << " = " << value.dump();
    }
    if (record["status"] == "ok") EXPECT_GT(record["median_ms"].get<double>(), 0);
  }
}

TEST(ReportFormatTest, CsvHasHeaderAndOneLinePerRecord) {
  const auto report = RunSearchBench(SearchScenario("t=2;k=3;v=2^3"));
  std::stringstream out;
  WriteReportCsv(out, report);
  std::string line;
  std::getline(out, line);
  EXPECT_EQ(line.rfind("kind,subject,spec,k,t,status", 0), 0u);
  int lines = 0;
  while (std::getline(out, line)) {
    ++lines;
    EXPECT_EQ(line.rfind("search,", 0), 0u);
  }
  EXPECT_EQ(lines, 3);
}

}  // namespace
}  // namespace combcov
