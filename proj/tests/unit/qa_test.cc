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

#include "axlearn/learner.h"
#include "common/error.h"
#include "common/text.h"
#include "domains/ra.h"
#include "domains/ss.h"
#include "domains/ts.h"
#include "qa/answer.h"

namespace aspire::qa {
namespace {

std::string Data(const std::string &rel) { return std::string(ASPIRE_DATA_DIR) + "/" + rel; }

kr::SystemDescription Kb(const std::string &rel) {
  return kr::SystemDescription::FromText(ReadFile(Data(rel)));
}

Catalog TsCatalog(const domains::TsOntology &o) {
  Catalog c = Catalog::Load(Data("ts/qa.txt"));
  std::map<std::string, std::string> message, response;
  for (const auto &s : o.classes) {
    message[s.label] = s.message;
    response[s.label] = s.response;
  }
  c.AddClassTable("message", message);
  c.AddClassTable("response", response);
  return c;
}

SceneRecord Fixture(const std::string &name) {
  return ScenesFromText(ReadFile(Data("fixtures/" + name))).at(0);
}

TEST(QuestionParseTest, ControlledVocabulary) {
  Catalog ss = Catalog::Load(Data("ss/qa.txt"));
  ParsedQuery q = ParseQuestion("Is this   structure STABLE?", ss);
  EXPECT_EQ(q.kind, QueryKind::kClassification);
  EXPECT_EQ(logic::ToString(q.target), "stable(S)");
  EXPECT_EQ(AskedLabel(Kb("ss/kb.sd"), ParseQuestion("is this structure unstable?", ss)), "unstable");
  Catalog ts = Catalog::Load(Data("ts/qa.txt"));
  ParsedQuery m = ParseQuestion("what is the sign's message?", ts);
  EXPECT_EQ(m.kind, QueryKind::kAttribute);
  EXPECT_EQ(logic::ToString(m.target), "sign_type(S, X)");
  EXPECT_EQ(m.topic, "message");
  try {
    ParseQuestion("how tall is the tower?", ss);
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnparseableQuestion);
  }
}

TEST(QuestionParseTest, LabelAndWordSlots) {
  Catalog ts = Catalog::Load(Data("ts/qa.txt"));
  ParsedQuery q = ParseQuestion("is this a no parking sign?", ts);
  EXPECT_EQ(q.label, "no_parking");
  EXPECT_EQ(logic::ToString(q.target), "sign_type(S, no_parking)");
  EXPECT_EQ(AskedLabel(Kb("ts/kb.sd"), q), "no_parking");
  Catalog ra = Catalog::Load(Data("ra/qa.txt"));
  ParsedQuery p = ParseQuestion("is sally's location cluttered?", ra);
  EXPECT_EQ(p.slots.at("person"), "sally");
}

TEST(QuestionParseTest, InstantiateRoundTrip) {
  for (const char *file : {"ss/qa.txt", "ts/qa.txt", "ra/qa.txt"}) {
    Catalog c = Catalog::Load(Data(file));
    for (const QuestionTemplate &t : c.questions()) {
      ParsedQuery q = ParseQuestion(Instantiate(t, "stop", {{"person", "bob"}}), c);
      EXPECT_EQ(q.kind, t.kind) << t.pattern;
      EXPECT_EQ(q.target.predicate, logic::ParseLiteral(ReplaceAll(t.target, "{label}", "x")).predicate);
    }
  }
}

TEST(CatalogTest, RejectsMalformedLines) {
  EXPECT_THROW(Catalog::FromText("ATYPE yes | yes\nclassification | a? | p(S)\n"), Error);
  EXPECT_THROW(Catalog::FromText("question | a? | p(S)\nATYPE yes | yes | \n"), Error);
  EXPECT_THROW(Catalog::FromText("classification | a? | p(S\nATYPE yes | yes | \n"), Error);
}

TEST(FillTest, MissingSlotNamed) {
  Catalog c = Catalog::FromText("attribute | where? | loc(P, L) | where\nATYPE w | at {a:place} | \n");
  AnswerContext ctx;
  ctx.query = ParseQuestion("where?", c);
  try {
    Fill(c, c.Answer("w"), ctx);
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::kTemplateFill);
    EXPECT_NE(std::string(e.what()).find("{a:place}"), std::string::npos);
  }
}

TEST(CoverTest, SlotCoverage) {
  Answer gold{"x", "the structure has five blocks and a narrow base", {"five blocks", "a narrow base"}};
  EXPECT_TRUE(Covers("It has five blocks and a narrow base.", gold));
  EXPECT_FALSE(Covers("it has five blocks", gold));
  Answer no{"no", "no", {"no"}};
  EXPECT_TRUE(Covers("no", no));
  EXPECT_FALSE(Covers("unknown", no));
}

TEST(PipelineTest, ExampleOneSymbolic) {
  SceneRecord scene = Fixture("example1.scenes");
  Extraction e = domains::SsProvider().Extract(scene);
  Pipeline p(Catalog::Load(Data("ss/qa.txt")), kr::Reasoner(Kb("ss/kb.sd")));
  PipelineResult a = p.Ask("is this structure unstable?", e);
  EXPECT_EQ(a.answer.text, "no");
  PipelineResult b = p.Ask("what is making this structure stable?", e);
  EXPECT_EQ(b.answer.text,
            "the structure has five blocks and a narrow base, it is standing straight, and there is no "
            "significant lean");
  EXPECT_FALSE(b.support.empty());
  for (const RoutingEntry &r : p.log()) EXPECT_EQ(r.handler, Handler::kSymbolic);
  ASSERT_EQ(scene.qa.size(), 2u);
  EXPECT_EQ(a.answer.type, scene.qa[0].answer_type);
  EXPECT_EQ(b.answer.type, scene.qa[1].answer_type);
}

TEST(PipelineTest, UnknownWithoutFallback) {
  auto d = Kb("ss/kb.sd");
  d.SetRules({});
  Pipeline p(Catalog::Load(Data("ss/qa.txt")), kr::Reasoner(d));
  Extraction e = domains::SsProvider().Extract(Fixture("example1.scenes"));
  PipelineResult r = p.Ask("is this structure stable?", e);
  EXPECT_EQ(r.answer.text, "unknown");
  EXPECT_EQ(r.handler, Handler::kUnanswered);
  EXPECT_EQ(p.Ask("how many blocks are in this structure?", e).answer.text, "the structure has five blocks");
}

TEST(AnswerModelTest, ConstantAndQueryDetermined) {
  Catalog c = Catalog::Load(Data("ss/qa.txt"));
  FeatureVector f = {{"num_blocks", "2"}, {"base", "wide"}, {"lean", "false"}, {"displaced", "false"}};
  auto schema = domains::SsSchema();
  std::vector<AnswerExample> one = {{"classification:stable(S)", "true", f, "stable", "yes"},
                                    {"attribute:count", "none", f, "stable", "yes"}};
  AnswerModel constant = AnswerModel::Train(one, c, schema, {"stable", "unstable"});
  EXPECT_EQ(constant.Predict("attribute:fix", "none", f, "unstable"), "yes");
  std::vector<AnswerExample> by_kind;
  for (int i = 0; i < 6; ++i) {
    by_kind.push_back({"attribute:count", "none", f, i % 2 ? "stable" : "unstable", "count"});
    by_kind.push_back({"attribute:fix", "none", f, i % 2 ? "stable" : "unstable", "fix_blocks"});
  }
  AnswerModel m = AnswerModel::Train(by_kind, c, schema, {"stable", "unstable"});
  EXPECT_EQ(m.Accuracy(by_kind), 1.0);
  EXPECT_EQ(m.tree().num_leaves(), c.QueryKeys().size());
  EXPECT_THROW(AnswerModel::Train({{"attribute:count", "none", f, "stable", "nope"}}, c, schema, {}), Error);
  EXPECT_EQ(AnswerModel::FromText(m.ToText()).tree(), m.tree());
}

TEST(PipelineTest, ExampleTwoFallback) {
  auto o = domains::LoadTsOntology(Data("ts/ontology.csv"));
  auto provider = domains::TsProvider(o);
  Catalog catalog = TsCatalog(o);
  kr::SystemDescription partial = Kb("ts/kb_partial.sd");
  auto train = domains::GenTs(o, 1000, 7);
  std::vector<induction::LabeledExample> labelled;
  for (const auto &s : train) labelled.push_back({provider.Extract(s).features, s.label});
  auto uncovered = axlearn::FindUncovered(partial, {}, labelled);
  induction::DecisionTree tree = induction::TrainTree(uncovered, o.schema);
  std::vector<std::string> labels;
  for (const auto &s : o.classes) labels.push_back(s.label);
  std::vector<AnswerExample> rows;
  for (const QaItem &i : MakeQaItems(catalog, partial, train, provider, labels, 1, 3)) {
    rows.push_back(ExampleFor(i, catalog, partial, labelled[i.scene].features, train[i.scene].label));
  }
  AnswerModel model = AnswerModel::Train(rows, catalog, o.schema, labels);

  SceneRecord scene = Fixture("example2.scenes");
  Pipeline p(catalog, kr::Reasoner(partial), tree, model);
  PipelineResult r = p.Ask("what is the sign's message?", provider.Extract(scene));
  EXPECT_EQ(r.answer.text, "uneven surfaces ahead");
  EXPECT_EQ(r.handler, Handler::kFallback);
  // One test separates the uncovered signs; it must hold for the scene.
  ASSERT_EQ(r.path.tests.size(), 1u);
  EXPECT_EQ(scene.Attr(r.path.tests[0].first), r.path.tests[0].second);
  EXPECT_EQ(r.path.label, "bumpy_road");
  PipelineResult x = p.Ask("please explain this answer", provider.Extract(scene));
  EXPECT_EQ(x.answer.text,
            "it is triangle-shaped; main color is white and other color is red; it has no background "
            "image; it has a bumpy road symbol and no secondary symbol; and it has no cross");
}

TEST(PipelineTest, ClutterExplanation) {
  SceneRecord scene = Fixture("example_ra.scenes");
  Pipeline p(Catalog::Load(Data("ra/qa.txt")), kr::Reasoner(Kb("ra/qa.sd")));
  Extraction e = domains::RaQaProvider().Extract(scene);
  EXPECT_EQ(p.Ask("is sally's location cluttered?", e, scene.attributes).answer.text, "yes");
  EXPECT_EQ(p.Ask("please explain this answer", e, scene.attributes).answer.text,
            "Sally is in Sally's office. Objects detected are Sally's chair, desk, and computer, and a "
            "cup, a large box, and a sofa. The room is cluttered because the cup, large box, and sofa "
            "are not usually in that room");
}

TEST(PipelineTest, LowConfidenceRoutesToTree) {
  auto scenes = domains::GenRaQaScenes(domains::RaConfig::Canonical(), 60, 2);
  auto provider = domains::RaQaProvider();
  std::vector<induction::LabeledExample> rows;
  for (const auto &s : scenes) rows.push_back({provider.Extract(s).features, s.label});
  Catalog c = Catalog::Load(Data("ra/qa.txt"));
  auto d = Kb("ra/qa.sd");
  std::vector<AnswerExample> ex;
  for (const QaItem &i : MakeQaItems(c, d, scenes, provider, {}, 2, 1)) {
    ex.push_back(ExampleFor(i, c, d, rows[i.scene].features, scenes[i.scene].label));
  }
  Pipeline p(c, kr::Reasoner(d), induction::TrainTree(rows, provider.schema()),
             AnswerModel::Train(ex, c, provider.schema(), {"cluttered", "tidy"}), 0.75);
  Extraction e = provider.Extract(scenes[0]);
  e.confidence["delivered"] = 0.5;
  PipelineResult r = p.Ask("is the room cluttered?", e, scenes[0].attributes);
  EXPECT_EQ(r.route, Route::kTreeOnly);
  EXPECT_EQ(r.handler, Handler::kFallback);
  EXPECT_EQ(r.answer.text, scenes[0].label == "cluttered" ? "yes" : "no");
}

TEST(MakeQaTest, DeterministicAndCsv) {
  auto scenes = domains::GenSs(20, 4);
  Catalog c = Catalog::Load(Data("ss/qa.txt"));
  auto d = Kb("ss/kb.sd");
  auto a = MakeQaItems(c, d, scenes, domains::SsProvider(), {}, 3, 9);
  auto b = MakeQaItems(c, d, scenes, domains::SsProvider(), {}, 3, 9);
  ASSERT_EQ(a.size(), 60u);
  EXPECT_EQ(QaItemsCsv(a, scenes), QaItemsCsv(b, scenes));
  EXPECT_TRUE(StartsWith(QaItemsCsv(a, scenes), "question,scene,answer_type,answer\n"));
}

}  // namespace
}  // namespace aspire::qa
