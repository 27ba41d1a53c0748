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

#include "common/error.h"
#include "common/random.h"
#include "domains/ss.h"
#include "induction/tree.h"

namespace aspire::induction {
namespace {

FeatureSchema Binary(std::initializer_list<const char *> names) {
  std::vector<FeatureDef> defs;
  for (const char *n : names) defs.push_back({n, {"a", "b"}});
  return FeatureSchema(defs);
}

LabeledExample Ex(std::initializer_list<std::pair<const char *, const char *>> f, const char *label) {
  LabeledExample e;
  for (const auto &[k, v] : f) e.features[k] = v;
  e.label = label;
  return e;
}

TEST(GiniTest, ClosedForms) {
  EXPECT_NEAR(Gini({1.0}), 0.0, 1e-12);
  EXPECT_NEAR(Gini({0.5, 0.5}), 0.5, 1e-12);
  EXPECT_NEAR(Gini({0.75, 0.25}), 0.375, 1e-12);
  EXPECT_NEAR(Gini({0.2, 0.3, 0.5}), 1 - 0.04 - 0.09 - 0.25, 1e-12);
}

TEST(GiniTest, RejectsBadDistributions) {
  EXPECT_THROW(Gini({}), Error);
  EXPECT_THROW(Gini({0.5, 0.6}), Error);
  EXPECT_THROW(Gini({1.5, -0.5}), Error);
}

TEST(TrainTest, SingleLabelIsLeaf) {
  auto schema = Binary({"f", "g"});
  DecisionTree t = TrainTree({Ex({{"f", "a"}, {"g", "b"}}, "x"), Ex({{"f", "b"}, {"g", "a"}}, "x")},
                             schema);
  EXPECT_EQ(t.num_leaves(), 1u);
  PathExplanation p = t.Predict({{"f", "a"}, {"g", "a"}});
  EXPECT_EQ(p.label, "x");
  EXPECT_TRUE(p.tests.empty());
}

TEST(TrainTest, SplitsOnInformativeFeature) {
  auto schema = Binary({"g", "f"});
  std::vector<LabeledExample> data = {
      Ex({{"f", "a"}, {"g", "a"}}, "a"), Ex({{"f", "a"}, {"g", "b"}}, "a"),
      Ex({{"f", "b"}, {"g", "a"}}, "b"), Ex({{"f", "b"}, {"g", "b"}}, "b")};
  DecisionTree t = TrainTree(data, schema);
  ASSERT_EQ(t.nodes()[0].feature, 1);
  EXPECT_EQ(t.num_leaves(), 2u);
  EXPECT_EQ(Accuracy(t, data), 1.0);
}

std::vector<LabeledExample> Xor() {
  return {Ex({{"p", "a"}, {"q", "a"}}, "no"), Ex({{"p", "a"}, {"q", "b"}}, "yes"),
          Ex({{"p", "b"}, {"q", "a"}}, "yes"), Ex({{"p", "b"}, {"q", "b"}}, "no")};
}

TEST(TrainTest, XorNeedsZeroGainRoot) {
  TreeParams params{0.0, 1};
  DecisionTree t = TrainTree(Xor(), Binary({"p", "q"}), params);
  EXPECT_EQ(t.depth(), 2);
  EXPECT_EQ(t.num_leaves(), 4u);
  EXPECT_EQ(t.nodes()[0].feature, 0);  // tie broken by schema order
  PathExplanation e = t.Predict({{"p", "b"}, {"q", "a"}});
  EXPECT_EQ(e.label, "yes");
  ASSERT_EQ(e.tests.size(), 2u);
  EXPECT_EQ(e.tests[0], std::make_pair(std::string("p"), std::string("b")));
  EXPECT_EQ(e.tests[1], std::make_pair(std::string("q"), std::string("a")));
  // The default gain threshold stops at the root.
  EXPECT_EQ(TrainTree(Xor(), Binary({"p", "q"})).num_leaves(), 1u);
}

TEST(TrainTest, StableStructuresWithoutLeanOrNarrowBase) {
  domains::SsParams params;
  auto scenes = domains::GenSs(1500, 3, params);
  auto provider = domains::SsProvider(params);
  std::vector<LabeledExample> data;
  for (const auto &s : scenes) data.push_back({provider.Extract(s).features, s.label});
  DecisionTree t = TrainTree(data, provider.schema());
  PathExplanation e = t.Predict(
      {{"num_blocks", "2"}, {"lean", "false"}, {"base", "wide"}, {"displaced", "false"}});
  EXPECT_EQ(e.label, "stable");
  EXPECT_GE(e.purity, 0.9);
  for (const auto &[f, v] : e.tests) {
    EXPECT_EQ(v, (FeatureVector{{"num_blocks", "2"}, {"lean", "false"}, {"base", "wide"},
                                {"displaced", "false"}}
                      .at(f)));
  }
}

TEST(TrainTest, ConsistentOnCompleteData) {
  // Every combination present once: with zero thresholds the tree fits.
  auto schema = Binary({"p", "q", "r"});
  std::vector<LabeledExample> data;
  Rng rng(9);
  for (const char *p : {"a", "b"})
    for (const char *q : {"a", "b"})
      for (const char *r : {"a", "b"}) {
        data.push_back(Ex({{"p", p}, {"q", q}, {"r", r}}, rng.Bernoulli(0.5) ? "x" : "y"));
      }
  DecisionTree t = TrainTree(data, schema, {0.0, 1});
  EXPECT_EQ(Accuracy(t, data), 1.0);
}

TEST(TrainTest, Deterministic) {
  auto scenes = domains::GenSs(400, 5);
  auto provider = domains::SsProvider();
  std::vector<LabeledExample> data;
  for (const auto &s : scenes) data.push_back({provider.Extract(s).features, s.label});
  EXPECT_EQ(TrainTree(data, provider.schema()).ToText(),
            TrainTree(data, provider.schema()).ToText());
}

std::vector<LabeledExample> NoisyBranch() {
  // f decides the label; a single noisy example isolates itself on h.
  std::vector<LabeledExample> data;
  for (int i = 0; i < 10; ++i) data.push_back(Ex({{"f", "a"}, {"h", i < 5 ? "a" : "b"}}, "x"));
  for (int i = 0; i < 9; ++i) data.push_back(Ex({{"f", "b"}, {"h", "b"}}, "y"));
  data.push_back(Ex({{"f", "b"}, {"h", "a"}}, "x"));
  return data;
}

TEST(PruneTest, CollapsesNoiseSplit) {
  DecisionTree t = TrainTree(NoisyBranch(), Binary({"f", "h"}), {0.0, 1});
  ASSERT_EQ(t.num_leaves(), 3u);
  std::vector<LabeledExample> holdout = {Ex({{"f", "a"}, {"h", "a"}}, "x"),
                                         Ex({{"f", "b"}, {"h", "a"}}, "y"),
                                         Ex({{"f", "b"}, {"h", "b"}}, "y")};
  DecisionTree p = Prune(t, holdout);
  EXPECT_EQ(p.num_leaves(), 2u);
  EXPECT_GE(Accuracy(p, holdout), Accuracy(t, holdout));
}

TEST(PruneTest, FixpointsAndEmptyHoldout) {
  DecisionTree t = TrainTree(NoisyBranch(), Binary({"f", "h"}), {0.0, 1});
  EXPECT_EQ(Prune(t, {}).ToText(), t.ToText());
  // A holdout that needs every split leaves the tree alone.
  std::vector<LabeledExample> holdout = {Ex({{"f", "a"}, {"h", "a"}}, "x"),
                                         Ex({{"f", "b"}, {"h", "a"}}, "x"),
                                         Ex({{"f", "b"}, {"h", "b"}}, "y")};
  EXPECT_EQ(Prune(t, holdout).ToText(), t.ToText());
  DecisionTree leaf = TrainTree({Ex({{"f", "a"}, {"h", "a"}}, "x")}, Binary({"f", "h"}));
  EXPECT_EQ(Prune(leaf, holdout).ToText(), leaf.ToText());
}

TEST(PruneTest, NeverLowersHoldoutAccuracy) {
  auto provider = domains::SsProvider();
  for (uint64_t seed = 1; seed <= 20; ++seed) {
    domains::SsParams params;
    params.boundary_band = 0.4;
    auto scenes = domains::GenSs(300, seed, params);
    std::vector<LabeledExample> train, holdout;
    for (size_t i = 0; i < scenes.size(); ++i) {
      LabeledExample e{provider.Extract(scenes[i]).features, scenes[i].label};
      (i % 3 == 0 ? holdout : train).push_back(e);
    }
    DecisionTree t = TrainTree(train, provider.schema(), {0.0, 1});
    DecisionTree p = Prune(t, holdout);
    EXPECT_GE(Accuracy(p, holdout), Accuracy(t, holdout)) << seed;
    EXPECT_LE(p.num_leaves(), t.num_leaves());
  }
}

TEST(SerializeTest, TextRoundTrip) {
  DecisionTree t = TrainTree(Xor(), Binary({"p", "q"}), {0.0, 1});
  std::string text = t.ToText();
  EXPECT_EQ(DecisionTree::FromText(text).ToText(), text);
  EXPECT_NE(text.find("split p"), std::string::npos);
  EXPECT_THROW(DecisionTree::FromText("not a tree"), Error);
}

TEST(SerializeTest, CsvRoundTrip) {
  auto schema = Binary({"p", "q"});
  std::string csv = ExamplesToCsv(schema, Xor());
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "p,q,label");
  auto back = ExamplesFromCsv(schema, csv);
  ASSERT_EQ(back.size(), 4u);
  EXPECT_EQ(back[1].label, "yes");
  EXPECT_EQ(back[1].features.at("q"), "b");
  EXPECT_THROW(ExamplesFromCsv(schema, "p,label\na,x\n"), Error);
}

}  // namespace
}  // namespace aspire::induction
