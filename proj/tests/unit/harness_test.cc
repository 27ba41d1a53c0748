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
#include <set>

#include "common/error.h"
#include "common/paths.h"
#include "common/text.h"
#include "harness/config.h"
#include "harness/experiments.h"
#include "harness/manifest.h"
#include "harness/stats.h"

namespace aspire::harness {
namespace {

ErrorCode CodeOf(const std::function<void()> &fn) {
  try {
    fn();
  } catch (const Error &e) {
    return e.code();
  }
  return ErrorCode::kInternal;
}

TEST(SignTestTest, ExactTwoSided) {
  // 9 wins, 1 loss: 2 * (1 + 10) / 1024.
  std::vector<double> a(10, 1.0), b(10, 0.0);
  b[3] = 2.0;
  SignTest t = PairedSignTest(a, b);
  EXPECT_EQ(t.wins, 9);
  EXPECT_EQ(t.losses, 1);
  EXPECT_NEAR(t.p_value, 22.0 / 1024.0, 1e-12);
}

TEST(SignTestTest, TiesDroppedAndCapped) {
  SignTest t = PairedSignTest({1, 2, 3, 4}, {2, 1, 3, 4});
  EXPECT_EQ(t.ties, 2);
  EXPECT_DOUBLE_EQ(t.p_value, 1.0);
  EXPECT_DOUBLE_EQ(PairedSignTest({1, 1}, {1, 1}).p_value, 1.0);
}

TEST(SignTestTest, ThirtyWins) {
  std::vector<double> a(30, 1.0), b(30, 0.0);
  EXPECT_NEAR(PairedSignTest(a, b).p_value / (2.0 / (1 << 30)), 1.0, 1e-9);
}

TEST(SpearmanTest, Values) {
  EXPECT_DOUBLE_EQ(Spearman({1, 2, 3, 4}, {10, 20, 30, 40}), 1.0);
  EXPECT_DOUBLE_EQ(Spearman({1, 2, 3, 4}, {4, 3, 2, 1}), -1.0);
  EXPECT_DOUBLE_EQ(Spearman({1, 2, 3}, {5, 5, 5}), 0.0);
  EXPECT_NEAR(Spearman({1, 2, 3, 4}, {1, 1, 2, 2}), 0.894427190999916, 1e-12);
}

TEST(ConfigTest, DefaultsAndOverrides) {
  ExperimentConfig c = ExperimentConfig::FromText("experiment = ss-classify\ntrials = 3\n");
  EXPECT_EQ(c.Int("trials"), 3);
  EXPECT_NEAR(c.Double("train_fraction"), 2.0 / 3.0, 1e-12);
  EXPECT_EQ(c.Ints("sizes").front(), 50);
  ExperimentConfig round = ExperimentConfig::FromText(c.ToText());
  EXPECT_EQ(round.values(), c.values());
}

TEST(ConfigTest, RejectsBadConfigs) {
  EXPECT_EQ(CodeOf([] { ExperimentConfig::FromText("experiment = ss-classify\nbogus = 1"); }),
            ErrorCode::kInvalidArgument);
  EXPECT_EQ(CodeOf([] { ExperimentConfig::FromText("trials = 3"); }),
            ErrorCode::kInvalidArgument);
  EXPECT_EQ(CodeOf([] { ExperimentConfig::For("no-such"); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(CodeOf([] { ExperimentConfig::For("ra-paired", {{"trials", "0"}}).Validate(); }),
            ErrorCode::kInvalidArgument);
  EXPECT_EQ(CodeOf([] { ExperimentConfig::For("ss-classify", {{"kb", "ss/none.sd"}}).Validate(); }),
            ErrorCode::kInvalidArgument);
}

TEST(SplitTest, DisjointAndComplete) {
  for (size_t n : {2u, 3u, 10u, 301u}) {
    TrainTestSplit s(n, 2.0 / 3.0, 7);
    std::set<size_t> all(s.train().begin(), s.train().end());
    for (size_t i : s.test()) EXPECT_TRUE(all.insert(i).second);
    EXPECT_EQ(all.size(), n);
    EXPECT_FALSE(s.train().empty());
    EXPECT_FALSE(s.test().empty());
  }
  TrainTestSplit s(300, 2.0 / 3.0, 7);
  EXPECT_EQ(s.train().size(), 200u);
  std::vector<int> rows(299);
  EXPECT_EQ(CodeOf([&] { s.Train(rows); }), ErrorCode::kInternal);
}

TEST(ManifestTest, RoundTrip) {
  RunManifest m;
  m.experiment = "ra-paired";
  m.version = "0.3.0";
  m.run_id = "abc";
  m.config = "experiment = ra-paired\ntrials = 2\n";
  m.trial_seeds = {{0, 11}, {1, 12}};
  m.inputs = {{"ra/map.csv", "0123"}};
  m.outputs = {{"trials.csv", "4567"}};
  m.volatile_outputs = {"timing.csv"};
  m.complete = false;
  m.errors = {"trial 1: no plan"};
  RunManifest back = RunManifest::FromText(m.ToText());
  EXPECT_EQ(back.ToText(), m.ToText());
  EXPECT_FALSE(back.complete);
  EXPECT_EQ(back.trial_seeds, m.trial_seeds);
  EXPECT_EQ(CodeOf([] { RunManifest::FromText("not a manifest"); }), ErrorCode::kParse);
}

ExperimentConfig SmallCurve(int threads) {
  return ExperimentConfig::For("ss-classify", {{"trials", "3"},
                                               {"sizes", "50,100"},
                                               {"threads", std::to_string(threads)}});
}

TEST(ExperimentTest, SameSeedSameBytes) {
  ExperimentResult a = RunExperiment(SmallCurve(1));
  ExperimentResult b = RunExperiment(SmallCurve(4));
  EXPECT_EQ(a.tables, b.tables);
  EXPECT_EQ(a.manifest.run_id, b.manifest.run_id);
  EXPECT_EQ(a.manifest.outputs, b.manifest.outputs);
  ExperimentConfig other = SmallCurve(1);
  other.Set("seed", "2");
  EXPECT_NE(RunExperiment(other).tables.at("curve.csv"), a.tables.at("curve.csv"));
}

TEST(ExperimentTest, ManifestMatchesInputsAndOutputs) {
  ExperimentResult r = RunExperiment(SmallCurve(0));
  EXPECT_TRUE(r.manifest.complete);
  EXPECT_EQ(r.manifest.trial_seeds.size(), 3u);
  ASSERT_FALSE(r.manifest.inputs.empty());
  for (const auto &[path, digest] : r.manifest.inputs) {
    ASSERT_EQ(path.rfind("data/", 0), 0u);
    EXPECT_EQ(HexDigest(ReadFile(DataPath(path.substr(5)))), digest) << path;
  }
  for (const auto &[file, text] : r.tables) {
    EXPECT_EQ(text.rfind("# manifest=manifest.txt run=" + r.manifest.run_id, 0), 0u) << file;
    EXPECT_EQ(r.manifest.outputs.at(file), HexDigest(text)) << file;
  }
}

TEST(ExperimentTest, NoiseFreeRaPairedNeedsOnePlan) {
  ExperimentResult r = RunExperiment(ExperimentConfig::For(
      "ra-paired",
      {{"trials", "5"}, {"p_home", "1"}, {"p_fail", "0"}, {"p_miss", "0"}}));
  EXPECT_TRUE(r.manifest.complete);
  EXPECT_DOUBLE_EQ(r.metrics.at("mean_after_plans"), 1.0);
  EXPECT_GE(r.metrics.at("mean_before_plans"), 1.0);
}

}  // namespace
}  // namespace aspire::harness
