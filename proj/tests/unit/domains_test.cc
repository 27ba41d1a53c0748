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

#include <cmath>

#include "common/error.h"
#include "common/text.h"
#include "domains/ra.h"
#include "domains/ss.h"
#include "domains/ts.h"
#include "kr/reasoner.h"
#include "logic/parser.h"

namespace aspire::domains {
namespace {

std::string Data(const std::string &rel) { return std::string(ASPIRE_DATA_DIR) + "/" + rel; }

SceneRecord SsScene(int n, double base, double lean, double disp) {
  SceneRecord s;
  s.domain = "ss";
  s.attributes = {{"n_blocks", std::to_string(n)},
                  {"base_width", FormatFixed(base, 3)},
                  {"lean_angle", FormatFixed(lean, 3)},
                  {"displacement", FormatFixed(disp, 3)},
                  {"blocks", "small:red:0"}};
  return s;
}

TEST(ProviderTest, ExampleOneFeatures) {
  Extraction e = SsProvider().Extract(SsScene(5, 0.6, 0.0, 0.0));
  FeatureVector want = {{"num_blocks", "5"}, {"base", "narrow"}, {"lean", "false"}, {"displaced", "false"}};
  EXPECT_EQ(e.features, want);
  for (const auto &[k, c] : e.confidence) EXPECT_EQ(c, 1.0) << k;
}

TEST(ProviderTest, EmptySchemaGivesEmptyVectors) {
  FeatureProvider p("none", FeatureSchema(), [](const SceneRecord &) { return FeatureVector{}; });
  SceneRecord s;
  s.domain = "none";
  EXPECT_TRUE(p.Extract(s).features.empty());
  s.domain = "ss";
  EXPECT_THROW(p.Extract(s), Error);
}

TEST(NoisyTest, ZeroEpsilonKeepsValues) {
  auto p = SsProvider();
  auto s = SsScene(3, 1.5, 8.0, 0.1);
  Extraction e = p.NoisyExtract(s, 0.0, 7);
  EXPECT_EQ(e.features, p.Extract(s).features);
  for (const auto &[k, c] : e.confidence) {
    EXPECT_GE(c, 0.8);
    EXPECT_LE(c, 1.0);
  }
}

TEST(NoisyTest, FullEpsilonFlipsBinaryFeature) {
  auto p = SsProvider();
  auto s = SsScene(3, 1.5, 8.0, 0.1);
  for (uint64_t seed = 0; seed < 20; ++seed) {
    Extraction e = p.NoisyExtract(s, 1.0, seed);
    EXPECT_EQ(e.features.at("lean"), "false");
    EXPECT_EQ(e.features.at("base"), "narrow");
    EXPECT_LE(e.confidence.at("lean"), 0.7);
  }
}

TEST(NoisyTest, FlipRateMatchesEpsilon) {
  FeatureProvider p("bit", FeatureSchema({{"b", {"0", "1"}}}),
                    [](const SceneRecord &) { return FeatureVector{{"b", "0"}}; });
  SceneRecord s;
  s.domain = "bit";
  int flips = 0;
  for (uint64_t seed = 0; seed < 10000; ++seed) flips += p.NoisyExtract(s, 0.1, seed).features.at("b") == "1";
  EXPECT_NEAR(flips / 10000.0, 0.1, 0.01);
}

TEST(NoisyTest, SeededDeterminism) {
  auto p = SsProvider();
  auto s = SsScene(4, 0.5, 2.0, 0.3);
  EXPECT_EQ(p.NoisyExtract(s, 0.3, 9).features, p.NoisyExtract(s, 0.3, 9).features);
  EXPECT_EQ(p.NoisyExtract(s, 0.3, 9).confidence, p.NoisyExtract(s, 0.3, 9).confidence);
}

TEST(RouteTest, Gate) {
  EXPECT_EQ(RouteByConfidence({{"a", 1.0}, {"b", 1.0}}, 0.9), Route::kSymbolic);
  EXPECT_EQ(RouteByConfidence({{"a", 1.0}, {"b", 0.5}}, 0.9), Route::kTreeOnly);
  EXPECT_EQ(RouteByConfidence({{"a", 0.01}}, 0.0), Route::kSymbolic);
}

TEST(SceneTest, TextRoundTrip) {
  auto scenes = GenSs(5, 3);
  scenes[0].qa = {{"is this structure stable?", "yes"}};
  EXPECT_EQ(ScenesFromText(ScenesToText(scenes)), scenes);
}

TEST(SsTest, GoldLabels) {
  EXPECT_EQ(SsGoldLabel(SsScene(3, 1.5, 0.0, 0.6)), "unstable");
  EXPECT_EQ(SsGoldLabel(SsScene(2, 1.5, 0.0, 0.0)), "stable");
  EXPECT_EQ(SsGoldLabel(SsScene(1, 0.5, 20.0, 0.0)), "stable");
  EXPECT_THROW(GenSs(0, 1), Error);
  auto one = GenSs(1, 1);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_TRUE(SsSchema().Valid(SsProvider().Extract(one[0]).features));
}

double KbAccuracy(const std::vector<SceneRecord> &scenes, const FeatureProvider &p) {
  kr::Reasoner r(kr::SystemDescription::FromText(ReadFile(Data("ss/kb.sd"))));
  int ok = 0;
  for (const auto &s : scenes) ok += r.Classify(p.Extract(s).features).label == s.label;
  return static_cast<double>(ok) / scenes.size();
}

TEST(SsTest, CanonicalKbExactWithoutBand) {
  SsParams params;
  params.boundary_band = 0.0;
  EXPECT_EQ(KbAccuracy(GenSs(2500, 1, params), SsProvider(params)), 1.0);
}

TEST(SsTest, DefaultBandStaysAboveNinety) {
  double acc = KbAccuracy(GenSs(2500, 1), SsProvider());
  EXPECT_GE(acc, 0.9);
  EXPECT_LT(acc, 1.0);
}

TEST(SsTest, Determinism) { EXPECT_EQ(ScenesToText(GenSs(50, 8)), ScenesToText(GenSs(50, 8))); }

TsOntology Ontology() { return LoadTsOntology(Data("ts/ontology.csv")); }

TEST(TsTest, OntologyShape) {
  TsOntology o = Ontology();
  EXPECT_EQ(o.classes.size(), 62u);
  EXPECT_EQ(o.schema.at(0).values.size(), 39u);
  EXPECT_EQ(o.schema.at(1).values.size(), 10u);
  EXPECT_EQ(o.schema.at(2).values.size(), 8u);
  FeatureVector stop = o.ByLabel("stop").features;
  EXPECT_EQ(stop.at("primary_symbol"), "stoptext");
  EXPECT_EQ(stop.at("main_color"), "red");
  EXPECT_EQ(stop.at("shape"), "octagon");
  FeatureVector np = o.ByLabel("no_parking").features;
  EXPECT_EQ(np.at("main_color"), "blue");
  EXPECT_EQ(np.at("primary_symbol"), "blank");
  EXPECT_EQ(np.at("shape"), "circle");
  EXPECT_EQ(np.at("cross"), "true");
}

TEST(TsTest, BumpyRoadFeatures) {
  TsOntology o = Ontology();
  SceneRecord s = GenTs(o, 62, 1, 0.0, true)[o.ByLabel("bumpy_road").id - 1];
  EXPECT_EQ(s.label, "bumpy_road");
  FeatureVector want = {{"shape", "triangle"},      {"main_color", "white"},       {"border_color", "red"},
                        {"background", "none"},     {"primary_symbol", "bumpy_road"},
                        {"secondary_symbol", "none"}, {"cross", "false"}};
  EXPECT_EQ(TsProvider(o).Extract(s).features, want);
  EXPECT_EQ(o.ByLabel("bumpy_road").message, "uneven surfaces ahead");
}

TEST(TsTest, SequentialCoversEveryClass) {
  TsOntology o = Ontology();
  auto scenes = GenTs(o, 62, 5, 0.0, true);
  std::set<std::string> labels;
  for (const auto &s : scenes) labels.insert(s.label);
  EXPECT_EQ(labels.size(), 62u);
}

TEST(TsTest, KbClassifiesEveryClass) {
  TsOntology o = Ontology();
  kr::Reasoner r(kr::SystemDescription::FromText(ReadFile(Data("ts/kb.sd"))));
  for (const auto &c : o.classes) EXPECT_EQ(r.Classify(c.features).label, c.label);
}

TEST(TsTest, RejectsDuplicates) {
  const char *head = "id,label,primary_symbol,secondary_symbol,shape,main_color,border_color,background,cross,message,response\n";
  std::string row = "1,a,x,none,circle,red,white,none,false,m,r\n";
  EXPECT_THROW(ParseTsOntology(std::string(head) + row + "2,a,y,none,circle,red,white,none,false,m,r\n"), Error);
  EXPECT_THROW(ParseTsOntology(std::string(head) + row + "2,b,x,none,circle,red,white,none,false,m,r\n"), Error);
}

RaConfig Quiet() {
  RaConfig c = RaConfig::Canonical();
  c.p_home = 1.0;
  c.p_fail = 0.0;
  c.p_miss = 0.0;
  return c;
}

logic::Literal Act(const std::string &text) { return logic::ParseLiteral(text); }

TEST(RaTest, CanonicalMap) {
  RaConfig c = RaConfig::Canonical();
  EXPECT_NO_THROW(c.Check());
  EXPECT_TRUE(c.Adjacent("office_john", "library"));
  EXPECT_TRUE(c.Adjacent("library", "office_john"));
  EXPECT_EQ(c.Distances("office_john").at("office_sally"), 3);
}

TEST(RaTest, MoveAndDeliver) {
  RaWorld w = GenRaWorld(Quiet(), 1, "office_john");
  Rng rng(1);
  EXPECT_TRUE(Step(w, Act("move(rob1, library)"), rng).success);
  EXPECT_EQ(w.robot_loc, "library");
  RaObservation far = Step(w, Act("move(rob1, office_sally)"), rng);
  EXPECT_FALSE(far.success);
  EXPECT_EQ(w.robot_loc, "library");
  EXPECT_FALSE(Step(w, Act("deliver(rob1, m1, sally)"), rng).success);
  EXPECT_TRUE(w.delivered.empty());
  Step(w, Act("move(rob1, kitchen)"), rng);
  RaObservation in = Step(w, Act("move(rob1, office_sally)"), rng);
  EXPECT_EQ(in.people_seen, std::vector<std::string>{"sally"});
  EXPECT_TRUE(Step(w, Act("deliver(rob1, m1, sally)"), rng).success);
  EXPECT_EQ(w.delivered.count({"m1", "sally"}), 1u);
  EXPECT_TRUE(w.Consistent());
  EXPECT_THROW(Step(w, Act("move(rob1, attic)"), rng), Error);
  EXPECT_THROW(Step(w, Act("wave(rob1)"), rng), Error);
}

TEST(RaTest, ClutterReport) {
  RaConfig c = RaConfig::Canonical();
  Clutter x = ClutterReport(c, "office_sally", {"chair", "desk", "computer", "cup", "large_box", "sofa"});
  EXPECT_TRUE(x.cluttered);
  EXPECT_EQ(x.unexpected, (std::vector<std::string>{"cup", "large_box", "sofa"}));
  EXPECT_FALSE(ClutterReport(c, "office_sally", {"desk"}).cluttered);
  c.expected["office_sally"].clear();
  EXPECT_FALSE(ClutterReport(c, "office_sally", {}).cluttered);
}

TEST(RaTest, WorldDeterminismAndInvariant) {
  RaConfig c = RaConfig::Canonical();
  for (uint64_t s = 0; s < 20; ++s) {
    RaWorld a = GenRaWorld(c, s), b = GenRaWorld(c, s);
    EXPECT_EQ(a.person_loc, b.person_loc);
    EXPECT_EQ(a.robot_loc, b.robot_loc);
    EXPECT_TRUE(a.Consistent());
  }
}

TEST(RaTest, KbTextParses) {
  RaConfig c = RaConfig::Canonical();
  EXPECT_NO_THROW(kr::SystemDescription::FromText(RaKbText(c)));
  auto with = RaKbText(c, c.workplace);
  EXPECT_NE(with.find("workplace(sally, office_sally)"), std::string::npos);
  EXPECT_NO_THROW(kr::SystemDescription::FromText(with));
}

}  // namespace
}  // namespace aspire::domains
