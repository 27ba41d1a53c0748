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

#include <string>

#include "aspire/aspire.h"

namespace {

class Out {
 public:
  ~Out() { aspire_free_string(p_); }
  char **operator&() { return &p_; }
  std::string str() const { return p_ == nullptr ? "" : p_; }

 private:
  char *p_ = nullptr;
};

TEST(CApiTest, SolveListsAnswerSets) {
  Out out;
  ASSERT_EQ(aspire_solve("#pred p.\n#pred q.\np :- not q.\nq :- not p.", 0, 0, &out), ASPIRE_OK);
  EXPECT_EQ(out.str(), "{p}\n{q}\n");
  Out one;
  ASSERT_EQ(aspire_solve("#pred p.\n#pred q.\np :- not q.\nq :- not p.", 1, 0, &one), ASPIRE_OK);
  EXPECT_EQ(one.str(), "{p}\n");
}

TEST(CApiTest, ConsistencyRestoringRules) {
  const char *prog = "#pred p.\n:- not p.\np :+ .";
  Out plain, cr;
  ASSERT_EQ(aspire_solve(prog, 0, 0, &plain), ASPIRE_OK);
  EXPECT_EQ(plain.str(), "");
  ASSERT_EQ(aspire_solve(prog, 0, 1, &cr), ASPIRE_OK);
  EXPECT_EQ(cr.str(), "{p}\n");
}

TEST(CApiTest, ErrorsCarryCodeAndMessage) {
  Out out;
  EXPECT_EQ(aspire_solve("p :- .", 0, 0, &out), ASPIRE_E_PARSE);
  EXPECT_STRNE(aspire_last_error(), "");
  EXPECT_EQ(aspire_solve(nullptr, 0, 0, &out), ASPIRE_E_INVALID_ARGUMENT);
  aspire_kb *kb = nullptr;
  EXPECT_EQ(aspire_kb_load("/nonexistent/kb.sd", &kb), ASPIRE_E_IO);
  EXPECT_EQ(kb, nullptr);
  EXPECT_STREQ(aspire_status_name(ASPIRE_E_NO_PLAN), "no_plan");
  Out ok;
  EXPECT_EQ(aspire_solve("#pred a.\na.", 0, 0, &ok), ASPIRE_OK);
  EXPECT_STREQ(aspire_last_error(), "");
}

TEST(CApiTest, ClassifyWithSupport) {
  aspire_kb *kb = nullptr;
  ASSERT_EQ(aspire_kb_load(ASPIRE_DATA_DIR "/ss/kb.sd", &kb), ASPIRE_OK);
  Out label, support;
  ASSERT_EQ(aspire_kb_classify(kb, "num_blocks=2 lean=true base=wide displaced=false", &label,
                               &support),
            ASPIRE_OK);
  EXPECT_EQ(label.str(), "unstable");
  EXPECT_NE(support.str().find("struc_type(s, lean)"), std::string::npos);
  EXPECT_EQ(aspire_kb_classify(kb, "num_blocks", nullptr, nullptr), ASPIRE_E_PARSE);
  aspire_kb_free(kb);
}

TEST(CApiTest, LearnFromGeneratedData) {
  aspire_kb *kb = nullptr;
  ASSERT_EQ(aspire_kb_load(ASPIRE_DATA_DIR "/ts/kb_partial.sd", &kb), ASPIRE_OK);
  Out csv, report, text;
  ASSERT_EQ(aspire_dataset("ts", 2000, 3, &csv), ASPIRE_OK);
  ASSERT_EQ(aspire_kb_learn(kb, "ts", csv.str().c_str(), 0.005, 3, &report), ASPIRE_OK);
  EXPECT_NE(report.str().find("accuracy_after,1.0000"), std::string::npos) << report.str();
  ASSERT_EQ(aspire_kb_text(kb, &text), ASPIRE_OK);
  EXPECT_NE(text.str().find("sign_type(TS, stop) :- primary_symbol(TS, stoptext)."),
            std::string::npos);
  aspire_kb_free(kb);
}

TEST(CApiTest, QuestionAnsweringSession) {
  aspire_qa *qa = nullptr;
  ASSERT_EQ(aspire_qa_open("ss", nullptr, &qa), ASPIRE_OK);
  Out why0;
  EXPECT_EQ(aspire_qa_explain(qa, &why0), ASPIRE_E_NOT_FOUND);
  ASSERT_EQ(aspire_qa_set_scene(qa, "ss | 1 | stable | base_width=0.6000;blocks=large/red/0.000,"
                                    "small/blue/0.020;displacement=0.0200;lean_angle=0.4000;"
                                    "n_blocks=2 | "),
            ASPIRE_OK);
  Out answer, route, why;
  ASSERT_EQ(aspire_qa_ask(qa, "is this structure unstable?", &answer, &route), ASPIRE_OK);
  EXPECT_EQ(answer.str(), "no");
  EXPECT_EQ(route.str(), "symbolic");
  ASSERT_EQ(aspire_qa_explain(qa, &why), ASPIRE_OK);
  EXPECT_NE(why.str().find("num_blocks(s, 2)"), std::string::npos);
  Out bad;
  EXPECT_EQ(aspire_qa_ask(qa, "what is the meaning of life?", &bad, nullptr),
            ASPIRE_E_UNPARSEABLE_QUESTION);
  aspire_qa_free(qa);
}

TEST(CApiTest, PlanAndDeliver) {
  Out plan;
  ASSERT_EQ(aspire_plan(nullptr, "office_john", "sally", 1, 12, &plan), ASPIRE_OK);
  EXPECT_NE(plan.str().find("deliver(rob1, m1, sally)"), std::string::npos);
  Out missing;
  EXPECT_EQ(aspire_plan(nullptr, "office_john", "nobody", 1, 12, &missing), ASPIRE_E_NOT_FOUND);
  Out log, summary;
  ASSERT_EQ(aspire_deliver(nullptr, "office_john", "sally", 1, 5, &log, &summary), ASPIRE_OK);
  EXPECT_NE(summary.str().find("success=1"), std::string::npos);
  EXPECT_FALSE(log.str().empty());
}

TEST(CApiTest, ExperimentWritesResults) {
  std::string dir = testing::TempDir() + "aspire_capi_ra_qa";
  Out summary;
  int complete = 0;
  ASSERT_EQ(aspire_experiment("ra-qa", "examples = 120\n", dir.c_str(), &summary, &complete),
            ASPIRE_OK);
  EXPECT_EQ(complete, 1);
  EXPECT_NE(summary.str().find("# ra-qa"), std::string::npos);
  Out bad;
  EXPECT_EQ(aspire_experiment("ra-qa", "bogus = 1\n", dir.c_str(), &bad, &complete),
            ASPIRE_E_INVALID_ARGUMENT);
}

}  // namespace
