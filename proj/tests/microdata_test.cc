// Copyright 2026 The Ganon Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "ganon/microdata.h"

#include <algorithm>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "absl/strings/str_cat.h"
#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "tests/testing/italy_data.h"

namespace ganon {
namespace {

using ::testing::ElementsAre;
using ::testing::HasSubstr;

AttributeSchema SmallSchema() {
  return *AttributeSchema::Create({{"SEX", {"1", "2"}},
                                   {"AGE", {"21", "22", "23"}},
                                   {"REGNIT", {"1", "2", "3", "4"}}});
}

Microfile Parse(const std::string& text, const AttributeSchema& schema) {
  std::istringstream in(text);
  absl::StatusOr<Microfile> file = LoadMicrofile(in, schema);
  EXPECT_TRUE(file.ok()) << file.status();
  return *std::move(file);
}

ParameterSpec RegionSpec() {
  ParameterSpec spec;
  spec.attribute = "REGNIT";
  spec.order = {"1", "2", "3", "4"};
  return spec;
}

// Counts by comparing code strings directly.
std::vector<int64_t> BruteForceCounts(const Microfile& file,
                                      const VitalSelection& selection,
                                      const ParameterSpec& spec) {
  const size_t p = *file.schema().IndexOf(spec.attribute);
  std::vector<size_t> vital;
  for (const std::string& name : selection.attributes) {
    vital.push_back(*file.schema().IndexOf(name));
  }
  std::vector<int64_t> counts(spec.order.size(), 0);
  for (size_t r = 0; r < file.record_count(); ++r) {
    bool match = false;
    for (const auto& tuple : selection.combinations) {
      bool all = true;
      for (size_t i = 0; i < vital.size(); ++i) {
        all = all && file.code(r, vital[i]) == tuple[i];
      }
      match = match || all;
    }
    if (!match) continue;
    for (size_t i = 0; i < spec.order.size(); ++i) {
      if (file.code(r, p) == spec.order[i]) ++counts[i];
    }
  }
  return counts;
}

Microfile RandomFile(std::mt19937_64& gen, size_t records) {
  AttributeSchema schema = SmallSchema();
  MicrofileBuilder builder(schema);
  for (size_t r = 0; r < records; ++r) {
    const CodeId row[] = {static_cast<CodeId>(gen() % 2),
                          static_cast<CodeId>(gen() % 3),
                          static_cast<CodeId>(gen() % 4)};
    builder.AddRecordIds(row);
  }
  return std::move(builder).Build();
}

std::vector<std::string> Column(const Microfile& file, size_t attribute) {
  std::vector<std::string> out;
  for (size_t r = 0; r < file.record_count(); ++r) {
    out.emplace_back(file.code(r, attribute));
  }
  std::sort(out.begin(), out.end());
  return out;
}

TEST(AttributeSchemaTest, RejectsDuplicateNames) {
  auto schema = AttributeSchema::Create({{"A", {"1"}}, {"A", {"2"}}});
  EXPECT_FALSE(schema.ok());
}

TEST(AttributeSchemaTest, RejectsEmptyDomain) {
  EXPECT_FALSE(AttributeSchema::Create({{"A", {}}}).ok());
}

TEST(AttributeSchemaTest, RejectsDuplicateCodes) {
  EXPECT_FALSE(AttributeSchema::Create({{"A", {"1", "1"}}}).ok());
}

TEST(AttributeSchemaTest, RejectsSeparatorInCode) {
  EXPECT_FALSE(AttributeSchema::Create({{"A", {"1,2"}}}).ok());
}

TEST(AttributeSchemaTest, LooksUpNamesAndCodes) {
  AttributeSchema schema = SmallSchema();
  EXPECT_EQ(schema.IndexOf("AGE"), 1u);
  EXPECT_EQ(schema.IndexOf("NOPE"), std::nullopt);
  EXPECT_EQ(schema.CodeIndex(2, "3"), 2u);
  EXPECT_EQ(schema.CodeIndex(2, "9"), std::nullopt);
}

TEST(AttributeSchemaTest, WithCodeAppends) {
  auto extended = SmallSchema().WithCode(2, "1P");
  ASSERT_TRUE(extended.ok());
  EXPECT_EQ(extended->CodeIndex(2, "1P"), 4u);
  EXPECT_EQ(extended->CodeIndex(2, "1"), 0u);
  EXPECT_FALSE(extended->WithCode(2, "1P").ok());
}

TEST(LoadMicrofileTest, ParsesThreeRows) {
  Microfile file =
      Parse("SEX,AGE,REGNIT\n1,22,3\n2,21,1\n1,23,4\n", SmallSchema());
  EXPECT_EQ(file.record_count(), 3u);
  EXPECT_EQ(file.code(1, 0), "2");
  EXPECT_EQ(file.code(2, 2), "4");
}

TEST(LoadMicrofileTest, EmptyBody) {
  EXPECT_EQ(Parse("SEX,AGE,REGNIT\n", SmallSchema()).record_count(), 0u);
}

TEST(LoadMicrofileTest, AcceptsCrlf) {
  Microfile file = Parse("SEX,AGE,REGNIT\r\n1,22,3\r\n", SmallSchema());
  EXPECT_EQ(file.code(0, 2), "3");
}

TEST(LoadMicrofileTest, UnknownCodeNamesRow) {
  std::istringstream in("SEX,AGE,REGNIT\n1,22,3\n9,22,3\n");
  auto file = LoadMicrofile(in, SmallSchema());
  ASSERT_FALSE(file.ok());
  EXPECT_THAT(file.status().message(), HasSubstr("line 3"));
  EXPECT_THAT(file.status().message(), HasSubstr("record 2"));
  EXPECT_THAT(file.status().message(), HasSubstr("'9'"));
}

TEST(LoadMicrofileTest, WrongArityNamesRow) {
  std::istringstream in("SEX,AGE,REGNIT\n1,22\n");
  auto file = LoadMicrofile(in, SmallSchema());
  ASSERT_FALSE(file.ok());
  EXPECT_THAT(file.status().message(), HasSubstr("line 2"));
}

TEST(LoadMicrofileTest, HeaderMismatch) {
  std::istringstream in("SEX,REGNIT,AGE\n");
  EXPECT_FALSE(LoadMicrofile(in, SmallSchema()).ok());
  std::istringstream empty("");
  EXPECT_FALSE(LoadMicrofile(empty, SmallSchema()).ok());
}

TEST(LoadMicrofileTest, WriteRoundTrip) {
  const std::string text = "SEX,AGE,REGNIT\n1,22,3\n2,21,1\n";
  Microfile file = Parse(text, SmallSchema());
  std::ostringstream out;
  ASSERT_TRUE(WriteMicrofile(file, out).ok());
  EXPECT_EQ(out.str(), text);
}

TEST(ApplySplitRulesTest, NoRulesIsIdentity) {
  Microfile file = Parse("SEX,AGE,REGNIT\n1,22,3\n2,21,1\n", SmallSchema());
  auto split = ApplySplitRules(file, RegionSpec(), 0);
  ASSERT_TRUE(split.ok());
  std::ostringstream a, b;
  ASSERT_TRUE(WriteMicrofile(file, a).ok());
  ASSERT_TRUE(WriteMicrofile(*split, b).ok());
  EXPECT_EQ(a.str(), b.str());
}

ParameterSpec HalfSplit() {
  ParameterSpec spec = RegionSpec();
  spec.order = {"A", "B", "2", "3", "4"};
  spec.split_rules = {{"1", {{"A", 0.5}, {"B", 0.5}}}};
  return spec;
}

Microfile TenInRegionOne() {
  MicrofileBuilder builder(SmallSchema());
  for (int i = 0; i < 10; ++i) {
    EXPECT_TRUE(builder.AddRecord({i % 2 ? "1" : "2", "22", "1"}).ok());
  }
  EXPECT_TRUE(builder.AddRecord({"1", "21", "3"}).ok());
  return std::move(builder).Build();
}

TEST(ApplySplitRulesTest, EvenSplitOfTen) {
  for (uint64_t seed : {0u, 1u, 99u}) {
    auto split = ApplySplitRules(TenInRegionOne(), HalfSplit(), seed);
    ASSERT_TRUE(split.ok()) << split.status();
    std::map<std::string, int> counts;
    for (size_t r = 0; r < split->record_count(); ++r) {
      ++counts[std::string(split->code(r, 2))];
    }
    EXPECT_EQ(counts["A"], 5);
    EXPECT_EQ(counts["B"], 5);
    EXPECT_EQ(counts["3"], 1);
    EXPECT_EQ(counts["1"], 0);
  }
}

TEST(ApplySplitRulesTest, SeedZeroKeepsFileOrder) {
  auto split = ApplySplitRules(TenInRegionOne(), HalfSplit(), 0);
  ASSERT_TRUE(split.ok());
  for (size_t r = 0; r < 10; ++r) {
    EXPECT_EQ(split->code(r, 2), r < 5 ? "A" : "B") << r;
  }
}

TEST(ApplySplitRulesTest, SeededSplitIsDeterministic) {
  auto a = ApplySplitRules(TenInRegionOne(), HalfSplit(), 42);
  auto b = ApplySplitRules(TenInRegionOne(), HalfSplit(), 42);
  ASSERT_TRUE(a.ok() && b.ok());
  std::ostringstream sa, sb;
  ASSERT_TRUE(WriteMicrofile(*a, sa).ok());
  ASSERT_TRUE(WriteMicrofile(*b, sb).ok());
  EXPECT_EQ(sa.str(), sb.str());
}

TEST(ApplySplitRulesTest, WeightsMustSumToOne) {
  ParameterSpec spec = HalfSplit();
  spec.split_rules[0].shares[1].weight = 0.4;
  EXPECT_FALSE(ApplySplitRules(TenInRegionOne(), spec, 0).ok());
  spec.split_rules[0].shares[1].weight = 0.5 + 1e-10;
  EXPECT_TRUE(ApplySplitRules(TenInRegionOne(), spec, 0).ok());
}

TEST(ApplySplitRulesTest, DerivedCodeCollision) {
  ParameterSpec spec = HalfSplit();
  spec.split_rules[0].shares[1].code = "3";
  auto split = ApplySplitRules(TenInRegionOne(), spec, 0);
  ASSERT_FALSE(split.ok());
  EXPECT_THAT(split.status().message(), HasSubstr("collides"));
}

TEST(ApplySplitRulesTest, UnknownSource) {
  ParameterSpec spec = HalfSplit();
  spec.split_rules[0].source = "7";
  EXPECT_FALSE(ApplySplitRules(TenInRegionOne(), spec, 0).ok());
}

TEST(ApplySplitRulesTest, ProportionsWithinOneRecord) {
  std::mt19937_64 gen(11);
  for (int trial = 0; trial < 50; ++trial) {
    Microfile file = RandomFile(gen, 200 + trial);
    const double w = 0.05 + 0.9 * (gen() % 1000) / 1000.0;
    ParameterSpec spec = RegionSpec();
    spec.order = {"X", "Y", "2", "3", "4"};
    spec.split_rules = {{"1", {{"X", w}, {"Y", 1.0 - w}}}};
    auto split = ApplySplitRules(file, spec, trial);
    ASSERT_TRUE(split.ok());
    int64_t members = 0, x = 0;
    for (size_t r = 0; r < file.record_count(); ++r) {
      members += file.code(r, 2) == "1";
      x += split->code(r, 2) == "X";
    }
    EXPECT_LE(std::abs(x - w * members), 1.0);
    // Split conservation: record count and the other columns.
    EXPECT_EQ(split->record_count(), file.record_count());
    EXPECT_EQ(Column(*split, 0), Column(file, 0));
    EXPECT_EQ(Column(*split, 1), Column(file, 1));
  }
}

TEST(ApplySplitRulesTest, ReferenceRegionSplit) {
  // 227278 records split by their reference shares.
  MicrofileBuilder builder(SmallSchema());
  for (int i = 0; i < 227278; ++i) {
    const CodeId row[] = {0, 0, 0};
    builder.AddRecordIds(row);
  }
  ParameterSpec spec = RegionSpec();
  spec.order = {"1P", "1V", "2", "3", "4"};
  spec.split_rules = {
      {"1", {{"1P", 220952.0 / 227278.0}, {"1V", 6326.0 / 227278.0}}}};
  auto split = ApplySplitRules(std::move(builder).Build(), spec, 0);
  ASSERT_TRUE(split.ok());
  auto q = ComputeQuantitySignal(*split, std::nullopt, spec);
  ASSERT_TRUE(q.ok()) << q.status();
  EXPECT_THAT(q->counts, ElementsAre(220952, 6326, 0, 0, 0));
}

TEST(QuantitySignalTest, MatchesBruteForceOnSmallFixture) {
  Microfile file = Parse(
      "SEX,AGE,REGNIT\n1,22,1\n1,22,1\n2,22,1\n1,21,2\n1,22,4\n2,23,4\n",
      SmallSchema());
  VitalSelection males{{"SEX", "AGE"}, {{"1", "22"}}};
  auto q = ComputeQuantitySignal(file, males, RegionSpec());
  ASSERT_TRUE(q.ok());
  EXPECT_THAT(q->counts, ElementsAre(2, 0, 0, 1));
  EXPECT_EQ(q->counts, BruteForceCounts(file, males, RegionSpec()));
}

TEST(QuantitySignalTest, NoMatchesGiveZeros) {
  Microfile file = Parse("SEX,AGE,REGNIT\n1,22,1\n", SmallSchema());
  VitalSelection none{{"SEX", "AGE"}, {{"2", "23"}}};
  auto q = ComputeQuantitySignal(file, none, RegionSpec());
  ASSERT_TRUE(q.ok());
  EXPECT_THAT(q->counts, ElementsAre(0, 0, 0, 0));
}

TEST(QuantitySignalTest, WholeFileWithoutSelection) {
  Microfile file =
      Parse("SEX,AGE,REGNIT\n1,22,1\n2,21,1\n1,23,3\n", SmallSchema());
  auto q = ComputeQuantitySignal(file, std::nullopt, RegionSpec());
  ASSERT_TRUE(q.ok());
  EXPECT_THAT(q->counts, ElementsAre(2, 0, 1, 0));
  EXPECT_EQ(q->total(), 3);
}

TEST(QuantitySignalTest, ParameterCannotBeVital) {
  Microfile file = Parse("SEX,AGE,REGNIT\n1,22,1\n", SmallSchema());
  VitalSelection bad{{"REGNIT"}, {{"1"}}};
  EXPECT_FALSE(ComputeQuantitySignal(file, bad, RegionSpec()).ok());
}

TEST(QuantitySignalTest, StrictModeRejectsUnlistedValue) {
  Microfile file = Parse("SEX,AGE,REGNIT\n1,22,4\n", SmallSchema());
  VitalSelection males{{"SEX"}, {{"1"}}};
  ParameterSpec spec = RegionSpec();
  spec.order = {"1", "2", "3"};
  auto strict = ComputeQuantitySignal(file, males, spec);
  ASSERT_FALSE(strict.ok());
  EXPECT_THAT(strict.status().message(), HasSubstr("record 1"));
  spec.strict = false;
  auto lenient = ComputeQuantitySignal(file, males, spec);
  ASSERT_TRUE(lenient.ok());
  EXPECT_THAT(lenient->counts, ElementsAre(0, 0, 0));
}

TEST(QuantitySignalTest, OrderNeedsTwoKnownValues) {
  Microfile file = Parse("SEX,AGE,REGNIT\n1,22,4\n", SmallSchema());
  ParameterSpec spec = RegionSpec();
  spec.order = {"1"};
  EXPECT_FALSE(ComputeQuantitySignal(file, std::nullopt, spec).ok());
  spec.order = {"1", "9"};
  EXPECT_FALSE(ComputeQuantitySignal(file, std::nullopt, spec).ok());
  spec.order = {"1", "1"};
  EXPECT_FALSE(ComputeQuantitySignal(file, std::nullopt, spec).ok());
}

TEST(QuantitySignalTest, SelectionErrors) {
  Microfile file = Parse("SEX,AGE,REGNIT\n1,22,4\n", SmallSchema());
  const ParameterSpec spec = RegionSpec();
  EXPECT_FALSE(
      ComputeQuantitySignal(file, VitalSelection{{"SEX"}, {}}, spec).ok());
  EXPECT_FALSE(
      ComputeQuantitySignal(file, VitalSelection{{"SEX"}, {{"1", "22"}}}, spec)
          .ok());
  EXPECT_FALSE(
      ComputeQuantitySignal(file, VitalSelection{{"X"}, {{"1"}}}, spec).ok());
  EXPECT_FALSE(
      ComputeQuantitySignal(file, VitalSelection{{"SEX", "SEX"}, {{"1", "1"}}},
                            spec)
          .ok());
}

TEST(QuantitySignalTest, RandomFixturesMatchBruteForce) {
  std::mt19937_64 gen(3);
  for (int trial = 0; trial < 40; ++trial) {
    Microfile file = RandomFile(gen, 300);
    VitalSelection selection{{"AGE", "SEX"}, {}};
    for (const char* age : {"21", "22", "23"}) {
      for (const char* sex : {"1", "2"}) {
        if (gen() % 2) selection.combinations.push_back({age, sex});
      }
    }
    if (selection.combinations.empty()) {
      selection.combinations.push_back({"22", "1"});
    }
    auto q = ComputeQuantitySignal(file, selection, RegionSpec());
    ASSERT_TRUE(q.ok());
    EXPECT_EQ(q->counts, BruteForceCounts(file, selection, RegionSpec()));
  }
}

TEST(QuantitySignalTest, PartitionCountsAddUp) {
  std::mt19937_64 gen(8);
  for (int trial = 0; trial < 30; ++trial) {
    Microfile file = RandomFile(gen, 250);
    VitalSelection whole{{"SEX", "AGE"}, {}};
    VitalSelection left = whole, right = whole;
    for (const char* sex : {"1", "2"}) {
      for (const char* age : {"21", "22", "23"}) {
        whole.combinations.push_back({sex, age});
        (gen() % 2 ? left : right).combinations.push_back({sex, age});
      }
    }
    if (left.combinations.empty() || right.combinations.empty()) continue;
    auto w = ComputeQuantitySignal(file, whole, RegionSpec());
    auto l = ComputeQuantitySignal(file, left, RegionSpec());
    auto r = ComputeQuantitySignal(file, right, RegionSpec());
    ASSERT_TRUE(w.ok() && l.ok() && r.ok());
    for (size_t i = 0; i < 4; ++i) {
      EXPECT_EQ(w->counts[i], l->counts[i] + r->counts[i]);
    }
    EXPECT_EQ(w->total(), static_cast<int64_t>(file.record_count()));
  }
}

TEST(QuantitySignalTest, RecordOrderDoesNotMatter) {
  std::mt19937_64 gen(21);
  Microfile file = RandomFile(gen, 400);
  std::vector<size_t> order(file.record_count());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), gen);
  MicrofileBuilder builder(file.schema());
  for (size_t r : order) {
    const CodeId row[] = {file.code_id(r, 0), file.code_id(r, 1),
                          file.code_id(r, 2)};
    builder.AddRecordIds(row);
  }
  Microfile shuffled = std::move(builder).Build();
  VitalSelection selection{{"SEX", "AGE"}, {{"1", "22"}, {"2", "23"}}};
  auto a = ComputeQuantitySignal(file, selection, RegionSpec());
  auto b = ComputeQuantitySignal(shuffled, selection, RegionSpec());
  ASSERT_TRUE(a.ok() && b.ok());
  EXPECT_EQ(a->counts, b->counts);
}

TEST(QuantitySignalTest, ReferenceCensusCounts) {
  using testing::ItalyConfig;
  Config config = ItalyConfig();
  auto split = ApplySplitRules(testing::BuildItalyMicrofile(),
                               config.parameter, config.split_seed);
  ASSERT_TRUE(split.ok()) << split.status();
  auto males =
      ComputeQuantitySignal(*split, config.main.selection, config.parameter);
  ASSERT_TRUE(males.ok());
  EXPECT_EQ(males->counts[0], 5808);
  EXPECT_EQ(males->counts[16], 1105);
  auto all = ComputeQuantitySignal(*split, std::nullopt, config.parameter);
  ASSERT_TRUE(all.ok());
  for (size_t i = 0; i < testing::kRegionCount; ++i) {
    EXPECT_EQ(all->counts[i], testing::kAllPeople[i]) << i;
    EXPECT_EQ(males->counts[i], testing::kMalesInitial[i]) << i;
  }
}

QuantitySignal Signal(std::vector<int64_t> counts) {
  return {"test", std::move(counts)};
}

TEST(ConcentrationSignalTest, ReferenceRatios) {
  auto c = ComputeConcentrationSignal(Signal({5808, 1105}),
                                      Signal({220952, 31368}));
  ASSERT_TRUE(c.ok());
  EXPECT_DOUBLE_EQ(testing::Round4(c->values[0]), 0.0263);
  EXPECT_DOUBLE_EQ(testing::Round4(c->values[1]), 0.0352);
}

TEST(ConcentrationSignalTest, EqualSignalsGiveOnes) {
  auto c = ComputeConcentrationSignal(Signal({3, 8, 1}), Signal({3, 8, 1}));
  ASSERT_TRUE(c.ok());
  EXPECT_THAT(c->values, ElementsAre(1.0, 1.0, 1.0));
}

TEST(ConcentrationSignalTest, ZeroOverZeroIsZero) {
  auto c = ComputeConcentrationSignal(Signal({0, 1}), Signal({0, 2}));
  ASSERT_TRUE(c.ok());
  EXPECT_THAT(c->values, ElementsAre(0.0, 0.5));
}

TEST(ConcentrationSignalTest, Errors) {
  EXPECT_FALSE(ComputeConcentrationSignal(Signal({3}), Signal({2})).ok());
  EXPECT_FALSE(ComputeConcentrationSignal(Signal({1}), Signal({0})).ok());
  EXPECT_FALSE(ComputeConcentrationSignal(Signal({1}), Signal({1, 2})).ok());
}

TEST(ConcentrationSignalTest, BoundsOnRandomFixtures) {
  std::mt19937_64 gen(2);
  for (int trial = 0; trial < 30; ++trial) {
    Microfile file = RandomFile(gen, 100);
    VitalSelection males{{"SEX"}, {{"1"}}};
    auto part = ComputeQuantitySignal(file, males, RegionSpec());
    auto whole = ComputeQuantitySignal(file, std::nullopt, RegionSpec());
    ASSERT_TRUE(part.ok() && whole.ok());
    auto c = ComputeConcentrationSignal(*part, *whole);
    ASSERT_TRUE(c.ok());
    for (double v : c->values) {
      EXPECT_GE(v, 0.0);
      EXPECT_LE(v, 1.0);
    }
  }
}

}  // namespace
}  // namespace ganon
