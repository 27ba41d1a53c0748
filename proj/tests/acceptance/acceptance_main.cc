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

// Runs the end-to-end acceptance checks and prints one line per criterion.
// Usage: aspire_acceptance [criterion ...]

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <bit>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "axlearn/learner.h"
#include "common/error.h"
#include "common/paths.h"
#include "common/random.h"
#include "common/text.h"
#include "domains/ra.h"
#include "domains/ss.h"
#include "domains/ts.h"
#include "harness/experiments.h"
#include "induction/tree.h"
#include "kr/reasoner.h"
#include "logic/ground.h"
#include "logic/parser.h"
#include "logic/solver.h"
#include "planner/planner.h"
#include "qa/answer.h"
#include "random_programs.h"

namespace aspire {
namespace {

using Clock = std::chrono::steady_clock;

double Since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string Fmt(double v, int digits = 3) { return FormatFixed(v, digits); }

std::string Sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

kr::SystemDescription Kb(const std::string &rel) {
  return kr::SystemDescription::FromText(ReadFile(DataPath(rel)));
}

std::set<std::set<std::string>> Texts(const logic::GroundProgram &g,
                                      const std::vector<logic::AnswerSet> &ms) {
  std::set<std::set<std::string>> out;
  for (const logic::AnswerSet &m : ms) {
    auto t = logic::AtomTexts(g, m);
    out.insert({t.begin(), t.end()});
  }
  return out;
}

Verdict SolverOracle() {
  auto t0 = Clock::now();
  int equal = 0;
  const int n = 1000;
  for (uint64_t seed = 0; seed < n; ++seed) {
    logic::GroundProgram g = logic::Ground(logic::Parse(testing::RandomProgramText(seed, {})));
    equal += logic::StableModels(g) == logic::OracleStableModels(g);
  }
  double secs = Since(t0);
  return {equal == n && secs < 60.0,
          std::to_string(equal) + "/" + std::to_string(n) + " equal, " + Fmt(secs, 1) +
              " s (limit 60 s)"};
}

// Exhaustive oracle: the smallest number of CR rules whose addition as
// ordinary rules yields an answer set, and the answer sets so obtained.
Verdict CrMinimality() {
  int agree = 0, restored = 0, hopeless = 0;
  const int n = 200;
  for (uint64_t seed = 0; seed < n; ++seed) {
    std::string text = testing::RandomCrProgramText(seed);
    int k = 0;
    for (size_t p = text.find(":+"); p != std::string::npos; p = text.find(":+", p + 2)) ++k;
    int best = -1;
    std::set<std::set<std::string>> expected;
    for (int size = 0; size <= k && best < 0; ++size) {
      for (uint32_t mask = 0; mask < (1u << k); ++mask) {
        if (std::popcount(mask) != size) continue;
        logic::GroundProgram g = logic::Ground(logic::Parse(testing::WithCrRules(text, mask)));
        auto models = Texts(g, logic::OracleStableModels(g));
        if (models.empty()) continue;
        best = size;
        expected.insert(models.begin(), models.end());
      }
    }
    logic::GroundProgram g = logic::Ground(logic::Parse(text));
    std::vector<logic::AnswerSet> got = logic::CrSolve(g);
    bool ok = best < 0 ? got.empty() : !got.empty();
    for (const logic::AnswerSet &m : got) ok = ok && static_cast<int>(m.cr_applied.size()) == best;
    ok = ok && Texts(g, got) == expected;
    agree += ok;
    restored += best > 0;
    hopeless += best < 0;
  }
  return {agree == n, std::to_string(agree) + "/" + std::to_string(n) +
                          " match the subset oracle (" + std::to_string(restored) +
                          " needed CR rules, " + std::to_string(hopeless) + " had no answer set)"};
}

double SsAccuracy(double band) {
  domains::SsParams params;
  params.boundary_band = band;
  kr::Reasoner r(Kb("ss/kb.sd"));
  auto provider = domains::SsProvider(params);
  int right = 0;
  auto scenes = domains::GenSs(2500, 2500, params);
  for (const SceneRecord &s : scenes) right += r.Classify(provider.Extract(s).features).label == s.label;
  return static_cast<double>(right) / scenes.size();
}

Verdict SsComplete() {
  double exact = SsAccuracy(0.0);
  double fuzzy = SsAccuracy(domains::SsParams{}.boundary_band);
  return {exact == 1.0 && fuzzy >= 0.9,
          "band 0: " + Fmt(exact, 4) + " (need 1), default band: " + Fmt(fuzzy, 4) +
              " (need >= 0.9)"};
}

Verdict SsRecovery() {
  auto t0 = Clock::now();
  harness::ExperimentResult r =
      harness::RunExperiment(harness::ExperimentConfig::For("axiom-ablation"));
  double secs = Since(t0);
  const auto &m = r.metrics;
  bool pass = r.manifest.complete && m.at("extension_match_rate") >= 0.9 &&
              m.at("accuracy_wins") >= 27 && m.at("accuracy_p") < 0.05 && secs < 300;
  return {pass, "extension match " + Fmt(m.at("extension_match_rate")) + " (need 0.9), wins " +
                    Fmt(m.at("accuracy_wins"), 0) + "/30 (need 27), p " +
                    Sci(m.at("accuracy_p")) + ", " + Fmt(secs, 1) + " s (limit 300 s)"};
}

Verdict TsAblation() {
  harness::ExperimentResult r = harness::RunExperiment(
      harness::ExperimentConfig::For("axiom-ablation", {{"domain", "ts"}}));
  const auto &m = r.metrics;
  bool pass = r.manifest.complete && m.at("accuracy_p") < 0.05 && m.at("accuracy_losses") == 0 &&
              m.at("coverage_p") < 0.05 && m.at("coverage_losses") == 0 &&
              m.at("min_spearman") >= 0.0;
  return {pass, "accuracy " + Fmt(m.at("accuracy_wins"), 0) + " wins/" +
                    Fmt(m.at("accuracy_losses"), 0) + " losses p " +
                    Sci(m.at("accuracy_p")) + ", coverage " +
                    Fmt(m.at("coverage_wins"), 0) + "/" + Fmt(m.at("coverage_losses"), 0) +
                    " p " + Sci(m.at("coverage_p")) + ", min Spearman " +
                    Fmt(m.at("min_spearman"))};
}

Verdict PlannerOracle() {
  int minimal = 0, reached = 0;
  const int n = 100;
  size_t most_places = 0;
  for (uint64_t seed = 0; seed < n; ++seed) {
    domains::RaConfig c = domains::RandomRaConfig(seed);
    c.p_home = 1.0;
    c.p_fail = 0.0;
    c.p_miss = 0.0;
    most_places = std::max(most_places, c.places.size());
    domains::RaWorld w = domains::GenRaWorld(c, seed + 1000);
    Rng rng(seed);
    const std::string recipient = c.people[rng.Below(c.people.size())];
    planner::DeliveryTask task{"m1", recipient, w.robot_loc};
    kr::History h;
    h.facts.push_back(logic::ParseLiteral("loc(rob1, " + w.robot_loc + ")"));
    for (const auto &[p, l] : w.person_loc) {
      h.facts.push_back(logic::ParseLiteral("loc(" + p + ", " + l + ")"));
    }
    auto d = kr::SystemDescription::FromText(domains::RaKbText(c));
    planner::Plan plan = planner::MakePlan(d, h, planner::DeliveryGoal(c, task), 16);
    minimal += static_cast<int>(plan.size()) == planner::OraclePlanLength(w, task);
    bool ok = true;
    for (const auto &a : plan.actions) ok = ok && domains::Step(w, a, rng).success;
    reached += ok && w.robot_loc == task.home && w.delivered.count({"m1", recipient}) == 1;
  }
  return {minimal == n && reached == n && most_places <= 7,
          "shortest " + std::to_string(minimal) + "/" + std::to_string(n) + ", goal reached " +
              std::to_string(reached) + "/" + std::to_string(n) + ", up to " +
              std::to_string(most_places) + " places"};
}

Verdict PairedPlanning() {
  harness::ExperimentResult r =
      harness::RunExperiment(harness::ExperimentConfig::For("ra-paired"));
  const auto &m = r.metrics;
  bool pass = r.manifest.complete && m.at("plans_ratio") >= 2.0 &&
              m.at("planning_time_ratio") > 1.0 && m.at("actions_ratio") > 1.0;
  return {pass, "plans " + Fmt(m.at("plans_ratio"), 2) + " (need 2), planning time " +
                    Fmt(m.at("planning_time_ratio"), 2) + " (need > 1), actions " +
                    Fmt(m.at("actions_ratio"), 2) + " (need > 1), execution time " +
                    Fmt(m.at("execution_time_ratio"), 2) + ", per plan " +
                    Fmt(m.at("planning_time_per_plan_ratio"), 2)};
}

Verdict RaQa() {
  harness::ExperimentResult r = harness::RunExperiment(harness::ExperimentConfig::For("ra-qa"));
  const auto &m = r.metrics;
  bool pass = r.manifest.complete && m.at("answer_type_accuracy") >= 0.8 && m.at("coverage") >= 0.8;
  return {pass, "answer-type accuracy " + Fmt(m.at("answer_type_accuracy")) +
                    " (need 0.8), slot coverage " + Fmt(m.at("coverage")) + " (need 0.8)"};
}

SceneRecord Fixture(const std::string &name) {
  return ScenesFromText(ReadFile(DataPath("fixtures/" + name))).at(0);
}

Verdict GoldenTraces() {
  std::vector<std::string> wrong;
  // Example 1: symbolic throughout.
  {
    SceneRecord scene = Fixture("example1.scenes");
    Extraction e = domains::SsProvider().Extract(scene);
    qa::Pipeline p(qa::Catalog::Load(DataPath("ss/qa.txt")), kr::Reasoner(Kb("ss/kb.sd")));
    if (p.Ask("is this structure unstable?", e).answer.text != "no") wrong.push_back("ex1 answer");
    std::string why = p.Ask("what is making this structure stable?", e).answer.text;
    if (why.find("five blocks and a narrow base") == std::string::npos) {
      wrong.push_back("ex1 explanation");
    }
    for (const qa::RoutingEntry &r : p.log()) {
      if (r.handler != qa::Handler::kSymbolic) wrong.push_back("ex1 routing");
    }
  }
  // Example 2: the partial KB cannot classify the sign.
  {
    harness::DomainAssets a = harness::LoadDomain(harness::ExperimentConfig::For("ts-vqa"));
    auto train = a.generate(1000, 7);
    std::vector<induction::LabeledExample> labelled;
    for (const auto &s : train) labelled.push_back({a.provider.Extract(s).features, s.label});
    auto uncovered = axlearn::FindUncovered(a.kb, {}, labelled);
    induction::DecisionTree tree = induction::TrainTree(uncovered, a.provider.schema());
    std::vector<qa::AnswerExample> rows;
    for (const qa::QaItem &i : qa::MakeQaItems(a.catalog, a.kb, train, a.provider, a.labels, 1, 3)) {
      rows.push_back(qa::ExampleFor(i, a.catalog, a.kb, labelled[i.scene].features,
                                    train[i.scene].label));
    }
    qa::AnswerModel model = qa::AnswerModel::Train(rows, a.catalog, a.provider.schema(), a.labels);
    SceneRecord scene = Fixture("example2.scenes");
    qa::Pipeline p(a.catalog, kr::Reasoner(a.kb), tree, model);
    qa::PipelineResult r = p.Ask("what is the sign's message?", a.provider.Extract(scene));
    if (r.answer.text != "uneven surfaces ahead") wrong.push_back("ex2 answer");
    if (r.path.label != "bumpy_road" || r.path.tests.empty()) wrong.push_back("ex2 tree path");
    if (p.log().size() != 1 || p.log()[0].handler != qa::Handler::kFallback) {
      wrong.push_back("ex2 routing");
    }
  }
  return {wrong.empty(), wrong.empty() ? "example 1 symbolic, example 2 tree + fallback"
                                       : "mismatch: " + Join(wrong, ", ")};
}

Verdict UnitExactness() {
  std::vector<std::string> wrong;
  Rng rng(10);
  for (int i = 0; i < 200; ++i) {
    int k = 1 + static_cast<int>(rng.Below(6));
    std::vector<double> p(k, 1.0 / k);
    if (std::abs(induction::Gini(p) - (1.0 - 1.0 / k)) > 1e-12) wrong.push_back("gini uniform");
    double q = rng.Uniform();
    if (std::abs(induction::Gini({q, 1 - q}) - 2 * q * (1 - q)) > 1e-12) {
      wrong.push_back("gini binary");
    }
  }
  auto provider = domains::SsProvider();
  for (uint64_t seed = 1; seed <= 20; ++seed) {
    domains::SsParams params;
    params.boundary_band = 0.4;
    auto scenes = domains::GenSs(300, seed, params);
    std::vector<induction::LabeledExample> train, holdout;
    for (size_t i = 0; i < scenes.size(); ++i) {
      induction::LabeledExample e{provider.Extract(scenes[i]).features, scenes[i].label};
      (i % 3 == 0 ? holdout : train).push_back(e);
    }
    induction::DecisionTree t = induction::TrainTree(train, provider.schema(), {0.0, 1});
    if (induction::Accuracy(induction::Prune(t, holdout), holdout) <
        induction::Accuracy(t, holdout)) {
      wrong.push_back("prune seed " + std::to_string(seed));
    }
  }
  auto schema = domains::SsSchema();
  auto merged = axlearn::Generalize(
      {{"unstable", {{"num_blocks", "3"}, {"base", "wide"}, {"lean", "true"}}, 10, 1.0},
       {"unstable", {{"num_blocks", "3"}, {"base", "narrow"}, {"lean", "true"}}, 10, 1.0}},
      schema);
  if (merged.size() != 1 ||
      logic::ToString(axlearn::ToRule(merged[0], Kb("ss/kb.sd"), schema)) !=
          "-stable(S) :- num_blocks(S, 3), struc_type(S, lean).") {
    wrong.push_back("generalize");
  }
  for (const char *id : {"ss-classify", "axiom-ablation", "ra-paired"}) {
    std::map<std::string, std::string> small = {{"trials", "3"}, {"threads", "1"}};
    if (std::string(id) == "ss-classify") small["sizes"] = "50,100";
    if (std::string(id) == "axiom-ablation") small["sizes"] = "500";
    auto a = harness::RunExperiment(harness::ExperimentConfig::For(id, small));
    small["threads"] = "3";
    auto b = harness::RunExperiment(harness::ExperimentConfig::For(id, small));
    // Timing tables are excluded from the guarantee.
    for (const std::string &v : a.manifest.volatile_outputs) {
      a.tables.erase(v);
      b.tables.erase(v);
    }
    if (a.tables != b.tables || a.tables.empty()) wrong.push_back(std::string("csv ") + id);
  }
  return {wrong.empty(), wrong.empty() ? "gini to 1e-12, pruning monotone on 20 seeds, merge "
                                         "exact, CSVs byte-identical for 3 experiments"
                                       : "mismatch: " + Join(wrong, ", ")};
}

struct Criterion {
  int id;
  const char *name;
  std::function<Verdict()> run;
};

}  // namespace
}  // namespace aspire

int main(int argc, char **argv) {
  using namespace aspire;
  const std::vector<Criterion> all = {
      {1, "solver matches the stable-model oracle", SolverOracle},
      {2, "CR rules applied minimally", CrMinimality},
      {3, "SS complete-KB classification", SsComplete},
      {4, "SS axiom recovery", SsRecovery},
      {5, "TS axiom ablation", TsAblation},
      {6, "planner minimality and soundness", PlannerOracle},
      {7, "paired planning trials", PairedPlanning},
      {8, "RA question answering", RaQa},
      {9, "golden execution traces", GoldenTraces},
      {10, "unit-level exactness", UnitExactness},
  };
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));
  int failed = 0;
  for (const Criterion &c : all) {
    if (!only.empty() && !only.count(c.id)) continue;
    auto t0 = Clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception &e) {
      v = {false, std::string("error: ") + e.what()};
    }
    failed += !v.pass;
    std::printf("%-4s criterion %2d  %-40s %s [%.1f s]\n", v.pass ? "PASS" : "FAIL", c.id, c.name,
                v.detail.c_str(), Since(t0));
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
