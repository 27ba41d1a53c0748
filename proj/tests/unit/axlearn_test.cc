// Copyright 2026 The Aspire Authors.
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

#include <gtest/gtest.h>

#include <algorithm>

#include "axlearn/learner.h"
#include "common/error.h"
#include "common/text.h"
#include "domains/ss.h"
#include "logic/parser.h"

namespace aspire::axlearn {
namespace {

using induction::DecisionTree;
using induction::LabeledExample;

kr::SystemDescription SsKb() {
  return kr::SystemDescription::FromText(ReadFile(std::string(ASPIRE_DATA_DIR) + "/ss/kb.sd"));
}

// The KB without the listed stability axioms (0-based, in file order).
kr::SystemDescription Without(std::vector<int> drop) {
  kr::SystemDescription d = SsKb();
  std::sort(drop.rbegin(), drop.rend());
  for (int i : drop) d.RemoveRule(static_cast<size_t>(i));
  return d;
}

std::vector<LabeledExample> SsData(int n, uint64_t seed, double band = 0.0) {
  domains::SsParams params;
  params.boundary_band = band;
  auto provider = domains::SsProvider(params);
  std::vector<LabeledExample> out;
  for (const auto &s : domains::GenSs(n, seed, params)) {
    out.push_back({provider.Extract(s).features, s.label});
  }
  return out;
}

FeatureVector Cell(const char *n, const char *base, const char *lean, const char *disp) {
  return {{"num_blocks", n}, {"base", base}, {"lean", lean}, {"displaced", disp}};
}

TEST(FindUncoveredTest, CompleteKbCoversNoiselessData) {
  EXPECT_TRUE(FindUncovered(SsKb(), {}, SsData(400, 1)).empty());
}

TEST(FindUncoveredTest, DisplacedExampleUncoveredWithoutAxiom) {
  std::vector<LabeledExample> data = {{Cell("3", "wide", "false", "true"), "unstable"},
                                      {Cell("2", "wide", "false", "false"), "stable"}};
  auto uncovered = FindUncovered(Without({0}), {}, data);
  ASSERT_EQ(uncovered.size(), 1u);
  EXPECT_EQ(uncovered[0].features.at("displaced"), "true");
}

const char kTree[] =
    "aspire-tree 1\n"
    "feature num_blocks 1 2 3 4 5\n"
    "feature base wide narrow\n"
    "feature lean true false\n"
    "feature displaced true false\n"
    "label _covered\n"
    "label stable\n"
    "label unstable\n"
    "split num_blocks 70 0 30\n"
    "  = 1\n"
    "    leaf _covered 10 0 0\n"
    "  = 2\n"
    "    leaf _covered 20 0 0\n"
    "  = 3\n"
    "    split base 10 0 25\n"
    "      = wide\n"
    "        split lean 5 0 10\n"
    "          = true\n"
    "            leaf unstable 0 0 10\n"
    "          = false\n"
    "            leaf _covered 5 0 0\n"
    "      = narrow\n"
    "        split lean 5 0 15\n"
    "          = true\n"
    "            leaf unstable 0 0 12\n"
    "          = false\n"
    "            leaf unstable 5 0 3\n"
    "  = 4\n"
    "    leaf unstable 0 0 5\n"
    "  = 5\n"
    "    leaf _covered 30 0 0\n";

TEST(ExtractTest, PureSupportedLeavesOnly) {
  DecisionTree t = DecisionTree::FromText(kTree);
  auto c = ExtractCandidates(t, 100, LearnerParams{});
  ASSERT_EQ(c.size(), 2u);
  EXPECT_EQ(c[0].label, "unstable");
  EXPECT_EQ(c[0].body.at("base"), "wide");
  EXPECT_EQ(c[0].support, 10);
  EXPECT_EQ(logic::ToString(ToRule(c[0], SsKb(), domains::SsSchema())),
            "-stable(S) :- num_blocks(S, 3), base(S, wide), struc_type(S, lean).");
  // The 5-example leaf only passes a lower gate; the impure one never does.
  LearnerParams low;
  low.leaf_support_fraction = 0.05;
  EXPECT_EQ(ExtractCandidates(t, 100, low).size(), 3u);
}

TEST(ExtractTest, GateScalesWithDatasetSize) {
  DecisionTree t = DecisionTree::FromText(kTree);
  // 50 examples at 10%: the gate is 5, so the num_blocks = 4 leaf passes.
  auto c = ExtractCandidates(t, 50, LearnerParams{});
  EXPECT_EQ(c.size(), 3u);
}

CandidateAxiom Cand(const char *label, std::map<std::string, std::string> body, int support = 10) {
  return {label, std::move(body), support, 1.0};
}

TEST(GeneralizeTest, MergesBaseSiblings) {
  auto out = Generalize({Cand("unstable", {{"num_blocks", "3"}, {"base", "wide"}, {"lean", "true"}}),
                         Cand("unstable", {{"num_blocks", "3"}, {"base", "narrow"}, {"lean", "true"}})},
                        domains::SsSchema());
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(logic::ToString(ToRule(out[0], SsKb(), domains::SsSchema())),
            "-stable(S) :- num_blocks(S, 3), struc_type(S, lean).");
  EXPECT_EQ(out[0].support, 20);
}

TEST(GeneralizeTest, DisjointUnchangedAndSubsumptionDrops) {
  auto schema = domains::SsSchema();
  std::vector<CandidateAxiom> disjoint = {Cand("unstable", {{"displaced", "true"}}),
                                          Cand("stable", {{"num_blocks", "1"}})};
  EXPECT_EQ(Generalize(disjoint, schema).size(), 2u);
  auto out = Generalize({Cand("unstable", {{"displaced", "true"}}),
                         Cand("unstable", {{"displaced", "true"}, {"lean", "true"}})},
                        schema);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].body.size(), 1u);
}

TEST(GeneralizeTest, Idempotent) {
  auto schema = domains::SsSchema();
  std::vector<CandidateAxiom> in = {
      Cand("unstable", {{"num_blocks", "3"}, {"base", "wide"}, {"lean", "true"}}),
      Cand("unstable", {{"num_blocks", "3"}, {"base", "narrow"}, {"lean", "true"}}),
      Cand("unstable", {{"num_blocks", "3"}, {"lean", "true"}, {"displaced", "true"}}),
      Cand("stable", {{"num_blocks", "1"}, {"base", "wide"}}),
      Cand("stable", {{"num_blocks", "2"}, {"base", "narrow"}})};
  auto once = Generalize(in, schema);
  EXPECT_EQ(Generalize(once, schema), once);
}

TEST(ValidateTest, AcceptsTrueAxiomRejectsSpuriousOne) {
  auto d = Without({0});
  auto data = SsData(600, 4);
  auto schema = domains::SsSchema();
  Rng rng(1);
  Validation ok = Validate(Cand("unstable", {{"displaced", "true"}}), d, {}, data, schema, {}, rng);
  EXPECT_TRUE(ok.accepted);
  EXPECT_GT(ok.checked, 0);
  // Two-block structures are not all stable; the sample must catch it.
  data.push_back({Cell("2", "wide", "true", "false"), "unstable"});
  LearnerParams all;
  all.validation_fraction = 1.0;
  Validation bad = Validate(Cand("stable", {{"num_blocks", "2"}}), SsKb(), {}, data, schema, all, rng);
  EXPECT_FALSE(bad.accepted);
  EXPECT_GT(bad.errors, 0);
}

TEST(ValidateTest, NoRelevantExampleIsUnvalidatable) {
  std::vector<LabeledExample> data = {{Cell("2", "wide", "false", "false"), "stable"}};
  Rng rng(1);
  Validation v = Validate(Cand("unstable", {{"displaced", "true"}}), Without({0}), {}, data,
                          domains::SsSchema(), {}, rng);
  EXPECT_FALSE(v.accepted);
  EXPECT_TRUE(v.unvalidatable);
}

logic::Rule R(const char *text) { return logic::Parse(std::string("#sort structure = {s}.\n#sort count = 1..5.\n#sort base_kind = {wide, narrow}.\n#sort shape = {lean}.\n#pred num_blocks(structure, count).\n#pred base(structure, base_kind).\n#pred struc_type(structure, shape).\n#pred block_displaced(structure).\n#pred stable(structure).\n") + text).rules[0]; }

TEST(SanityTest, DuplicateAndOverSpecificationDropped) {
  auto d = SsKb();
  auto dup = R("-stable(S) :- block_displaced(S).");
  auto specific = R("-stable(S) :- num_blocks(S, 4), struc_type(S, lean).");
  auto fresh = R("stable(S) :- num_blocks(S, 1), base(S, wide).");
  SanityResult s = SanityCheck({dup, specific}, d);
  EXPECT_TRUE(s.install.empty());
  EXPECT_EQ(s.duplicates.size(), 1u);
  EXPECT_EQ(s.over_specified.size(), 1u);
  EXPECT_EQ(SanityCheck({fresh}, d).install.size(), 0u);
}

TEST(SanityTest, MoreGeneralInstalledAndSpecificFlagged) {
  auto d = Without({2});
  d.AddRule(R("-stable(S) :- num_blocks(S, 3), base(S, wide), struc_type(S, lean)."));
  SanityResult s = SanityCheck({R("-stable(S) :- num_blocks(S, 3), struc_type(S, lean).")}, d);
  ASSERT_EQ(s.install.size(), 1u);
  ASSERT_EQ(s.flagged_existing.size(), 1u);
  EXPECT_EQ(logic::ToString(d.rules()[s.flagged_existing[0]]),
            "-stable(S) :- num_blocks(S, 3), base(S, wide), struc_type(S, lean).");
}

TEST(RegionTest, ComparisonAxiomExpands) {
  auto d = SsKb();
  auto reg = RegionOf(d.rules()[3], d);
  ASSERT_TRUE(reg.has_value());
  EXPECT_EQ(reg->label, "unstable");
  EXPECT_EQ(reg->cells.size(), 2u);
  EXPECT_FALSE(RegionOf(d.rules()[8], d).has_value());  // unstable(S) :- -stable(S).
}

TEST(LearnTest, CompleteKbIsNoOp) {
  auto d = SsKb();
  auto [out, report] = Learn(d, {}, SsData(300, 2), domains::SsSchema());
  EXPECT_EQ(report.uncovered, 0u);
  EXPECT_EQ(report.installed, 0u);
  EXPECT_EQ(out.ToText(), d.ToText());
}

TEST(LearnTest, RecoversRemovedAxioms) {
  auto data = SsData(2000, 11);
  LearnerParams params;
  params.leaf_support_fraction = 0.02;
  auto ablated = Without({0, 2, 4, 6});
  auto [out, report] = Learn(ablated, {}, data, domains::SsSchema(), params);
  EXPECT_GT(report.installed, 0u);
  EXPECT_GE(report.accuracy_after, report.accuracy_before);
  // Same labels as the complete KB on every realizable cell.
  kr::Reasoner full(SsKb()), learned(out);
  for (const char *n : {"1", "2", "3", "4", "5"})
    for (const char *b : {"wide", "narrow"})
      for (const char *l : {"true", "false"})
        for (const char *x : {"true", "false"}) {
          if (std::string(n) == "1" && std::string(x) == "true") continue;
          FeatureVector f = Cell(n, b, l, x);
          EXPECT_EQ(learned.Classify(f).label, full.Classify(f).label) << FormatFeatures(f);
        }
  EXPECT_NE(report.AxiomsText().find(":-"), std::string::npos);
  EXPECT_NE(report.CountsCsv().find("installed,"), std::string::npos);
}

TEST(LearnTest, SeededDeterminism) {
  auto data = SsData(800, 12);
  LearnerParams params;
  params.leaf_support_fraction = 0.02;
  auto a = Learn(Without({1, 3}), {}, data, domains::SsSchema(), params);
  auto b = Learn(Without({1, 3}), {}, data, domains::SsSchema(), params);
  EXPECT_EQ(a.second.installed_rules, b.second.installed_rules);
}

}  // namespace
}  // namespace aspire::axlearn
