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

#include "harness/experiments.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <thread>

#include "axlearn/learner.h"
#include "common/error.h"
#include "common/paths.h"
#include "common/random.h"
#include "common/text.h"
#include "domains/ra.h"
#include "domains/ss.h"
#include "domains/ts.h"
#include "harness/stats.h"
#include "induction/tree.h"
#include "kr/reasoner.h"
#include "planner/planner.h"
#include "qa/answer.h"

namespace aspire::harness {
namespace {

using induction::DecisionTree;
using induction::LabeledExample;

// Output of one experiment before the manifest is attached.
struct Tables {
  std::map<std::string, std::string> stable;
  std::map<std::string, std::string> timing;
  std::string summary;
  std::map<std::string, double> metrics;
};

// Runs fn(trial) for every trial on a small worker pool. A throwing trial
// leaves its slot empty and adds an error.
template <typename R, typename Fn>
std::vector<std::optional<R>> RunTrials(int trials, int threads, Fn fn,
                                        std::vector<std::string> &errors) {
  std::vector<std::optional<R>> out(static_cast<size_t>(trials));
  std::vector<std::string> failed(static_cast<size_t>(trials));
  int workers = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
  workers = std::clamp(workers, 1, trials);
  std::atomic<int> next{0};
  auto work = [&]() {
    for (int t = next++; t < trials; t = next++) {
      try {
        out[static_cast<size_t>(t)] = fn(t);
      } catch (const std::exception &e) {
        failed[static_cast<size_t>(t)] = e.what();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto &th : pool) th.join();
  for (int t = 0; t < trials; ++t) {
    if (!failed[static_cast<size_t>(t)].empty()) {
      errors.push_back("trial " + std::to_string(t) + ": " + failed[static_cast<size_t>(t)]);
    }
  }
  return out;
}

std::string Num(double x) { return FormatFixed(x, 6); }

std::string Row(const std::vector<std::string> &fields) { return FormatCsvRow(fields) + "\n"; }

int PoolSize(int train_rows, double train_fraction) {
  return static_cast<int>(std::ceil(train_rows / train_fraction - 1e-9));
}

std::vector<Extraction> ExtractAll(const FeatureProvider &p, const std::vector<SceneRecord> &s,
                                   double noise, uint64_t seed) {
  std::vector<Extraction> out;
  out.reserve(s.size());
  for (size_t i = 0; i < s.size(); ++i) {
    out.push_back(noise > 0.0 ? p.NoisyExtract(s[i], noise, DeriveSeed(seed, i)) : p.Extract(s[i]));
  }
  return out;
}

std::vector<LabeledExample> Rows(const std::vector<Extraction> &ex,
                                 const std::vector<SceneRecord> &scenes, size_t n) {
  std::vector<LabeledExample> out;
  for (size_t i = 0; i < n && i < ex.size(); ++i) out.push_back({ex[i].features, scenes[i].label});
  return out;
}

induction::TreeParams TreeParamsOf(const ExperimentConfig &c) {
  return {c.Double("min_gain"), c.Int("min_leaf_support")};
}

axlearn::LearnerParams LearnerParamsOf(const ExperimentConfig &c, uint64_t seed) {
  axlearn::LearnerParams p;
  p.leaf_support_fraction = c.Double("leaf_support_fraction");
  p.validation_fraction = c.Double("validation_fraction");
  p.seed = seed;
  return p;
}

DecisionTree TrainClassifier(const std::vector<LabeledExample> &rows, const FeatureSchema &schema,
                             const ExperimentConfig &c) {
  if (!c.Bool("prune") || rows.size() < 3) return induction::TrainTree(rows, schema, TreeParamsOf(c));
  size_t grow = rows.size() * 2 / 3;
  std::vector<LabeledExample> a(rows.begin(), rows.begin() + static_cast<std::ptrdiff_t>(grow));
  std::vector<LabeledExample> b(rows.begin() + static_cast<std::ptrdiff_t>(grow), rows.end());
  return induction::Prune(induction::TrainTree(a, schema, TreeParamsOf(c)), b);
}

// The architecture's label: the KB when the features are trusted and it
// concludes something, the tree otherwise.
std::string CombinedLabel(axlearn::ClassifierCache &kb, const DecisionTree &tree,
                          const Extraction &e, double tau) {
  if (RouteByConfidence(e.confidence, tau) == Route::kSymbolic) {
    const std::string &l = kb.Label(e.features);
    if (!l.empty()) return l;
  }
  return tree.Predict(e.features).label;
}

struct QaScore {
  double coverage = 0.0;
  double type_accuracy = 0.0;
  double fallback = 0.0;  // share answered by the fallback
};

QaScore ScoreQa(qa::Pipeline &p, const std::vector<qa::QaItem> &items,
                const std::vector<Extraction> &ex, const std::vector<SceneRecord> &scenes,
                std::vector<std::string> *csv = nullptr, const std::string &prefix = "") {
  QaScore s;
  if (items.empty()) return s;
  for (const qa::QaItem &item : items) {
    std::string type, handler = "error";
    bool covered = false;
    try {
      qa::PipelineResult r = p.Ask(item.question, ex[item.scene], scenes[item.scene].attributes);
      covered = qa::Covers(r.answer.text, item.gold);
      type = r.answer.type;
      handler = qa::HandlerName(r.handler);
      s.fallback += r.handler == qa::Handler::kFallback;
    } catch (const Error &) {
    }
    s.coverage += covered;
    s.type_accuracy += type == item.gold.type;
    if (csv != nullptr) {
      csv->push_back(prefix + Row({std::to_string(scenes[item.scene].id), item.question,
                                   item.gold.type, type, handler, covered ? "1" : "0"}));
    }
  }
  double n = static_cast<double>(items.size());
  s.coverage /= n;
  s.type_accuracy /= n;
  s.fallback /= n;
  return s;
}

std::vector<qa::AnswerExample> AnswerRows(const std::vector<qa::QaItem> &items,
                                          const DomainAssets &a,
                                          const std::vector<Extraction> &ex,
                                          const std::vector<SceneRecord> &scenes, size_t limit) {
  std::vector<qa::AnswerExample> out;
  for (const qa::QaItem &i : items) {
    if (i.scene >= limit) continue;
    out.push_back(qa::ExampleFor(i, a.catalog, a.kb, ex[i.scene].features, scenes[i.scene].label));
  }
  return out;
}

std::vector<size_t> PickAxioms(const kr::SystemDescription &d, int count, uint64_t seed) {
  std::vector<size_t> axioms = ClassificationAxioms(d);
  if (static_cast<size_t>(count) > axioms.size()) {
    Fail(ErrorCode::kInvalidArgument, "remove: the KB has only " + std::to_string(axioms.size()) +
                                          " classification axioms");
  }
  Rng rng(seed);
  std::vector<size_t> out;
  for (size_t k : rng.Sample(axioms.size(), static_cast<size_t>(count))) out.push_back(axioms[k]);
  std::sort(out.begin(), out.end());
  return out;
}

std::string JoinIndices(const std::vector<size_t> &v) {
  std::vector<std::string> parts;
  for (size_t i : v) parts.push_back(std::to_string(i));
  return Join(parts, ";");
}

// Shared setup of one data trial: the pool, its split and extractions.
struct TrialData {
  std::vector<SceneRecord> train, test;
  std::vector<Extraction> train_ex, test_ex;
};

TrialData MakeTrialData(const DomainAssets &a, const ExperimentConfig &c, int train_rows,
                        uint64_t seed) {
  double tf = c.Double("train_fraction");
  int pool = PoolSize(train_rows, tf);
  std::vector<SceneRecord> scenes = a.generate(pool, DeriveSeed(seed, 0));
  TrainTestSplit split(scenes.size(), tf, DeriveSeed(seed, 1));
  TrialData t;
  t.train = split.Train(scenes);
  t.test = split.Test(scenes);
  if (t.train.size() < static_cast<size_t>(train_rows)) {
    Fail(ErrorCode::kInternal, "split left too few training rows");
  }
  double noise = c.Double("noise");
  t.train_ex = ExtractAll(a.provider, t.train, noise, DeriveSeed(seed, 2));
  t.test_ex = ExtractAll(a.provider, t.test, noise, DeriveSeed(seed, 3));
  return t;
}

double Accuracy(const std::vector<std::string> &predicted, const std::vector<SceneRecord> &gold) {
  if (gold.empty()) return 0.0;
  size_t ok = 0;
  for (size_t i = 0; i < gold.size(); ++i) ok += predicted[i] == gold[i].label;
  return static_cast<double>(ok) / static_cast<double>(gold.size());
}

// ---- accuracy and VQA curves ----

struct CurvePoint {
  int size = 0;
  std::string system;
  double accuracy = 0.0;       // classification, or slot coverage for vqa
  double type_accuracy = 0.0;  // vqa only
};

std::vector<CurvePoint> CurveTrial(const DomainAssets &a, const ExperimentConfig &c, bool vqa,
                                   uint64_t seed) {
  std::vector<int> sizes = c.Ints("sizes");
  TrialData t = MakeTrialData(a, c, sizes.back(), seed);
  kr::SystemDescription kb = a.kb;
  if (c.Int("remove") > 0) kb = WithoutRules(kb, PickAxioms(kb, c.Int("remove"), DeriveSeed(seed, 4)));
  double tau = c.Double("tau");
  bool learn = c.Bool("learn");
  std::vector<qa::QaItem> train_items, test_items;
  if (vqa) {
    int per = c.Int("per_scene");
    train_items = qa::MakeQaItems(a.catalog, a.kb, t.train, a.provider, a.labels, per, DeriveSeed(seed, 5));
    test_items = qa::MakeQaItems(a.catalog, a.kb, t.test, a.provider, a.labels, per, DeriveSeed(seed, 6));
  }
  std::vector<CurvePoint> out;
  for (int n : sizes) {
    std::vector<LabeledExample> rows = Rows(t.train_ex, t.train, static_cast<size_t>(n));
    DecisionTree tree = TrainClassifier(rows, a.provider.schema(), c);
    std::optional<kr::SystemDescription> learned;
    if (learn) learned = axlearn::Learn(kb, {}, rows, a.provider.schema(), LearnerParamsOf(c, seed)).first;
    if (!vqa) {
      kr::Reasoner r(kb);
      axlearn::ClassifierCache cache(r);
      std::vector<std::string> kb_only, tree_only, combined;
      for (const Extraction &e : t.test_ex) {
        kb_only.push_back(cache.Label(e.features));
        tree_only.push_back(tree.Predict(e.features).label);
        combined.push_back(CombinedLabel(cache, tree, e, tau));
      }
      out.push_back({n, "kb", Accuracy(kb_only, t.test), 0.0});
      out.push_back({n, "tree", Accuracy(tree_only, t.test), 0.0});
      out.push_back({n, "combined", Accuracy(combined, t.test), 0.0});
      if (learned) {
        kr::Reasoner lr(*learned);
        axlearn::ClassifierCache lc(lr);
        std::vector<std::string> with;
        for (const Extraction &e : t.test_ex) with.push_back(CombinedLabel(lc, tree, e, tau));
        out.push_back({n, "learned", Accuracy(with, t.test), 0.0});
      }
      continue;
    }
    qa::AnswerModel model = qa::AnswerModel::Train(
        AnswerRows(train_items, a, t.train_ex, t.train, static_cast<size_t>(n)), a.catalog,
        a.provider.schema(), a.classes);
    qa::Pipeline kb_only(a.catalog, kr::Reasoner(kb), std::nullopt, std::nullopt, tau);
    qa::Pipeline combined(a.catalog, kr::Reasoner(kb), tree, model, tau);
    QaScore s0 = ScoreQa(kb_only, test_items, t.test_ex, t.test);
    QaScore s1 = ScoreQa(combined, test_items, t.test_ex, t.test);
    out.push_back({n, "kb", s0.coverage, s0.type_accuracy});
    out.push_back({n, "combined", s1.coverage, s1.type_accuracy});
    if (learned) {
      qa::Pipeline with(a.catalog, kr::Reasoner(*learned), tree, model, tau);
      QaScore s2 = ScoreQa(with, test_items, t.test_ex, t.test);
      out.push_back({n, "learned", s2.coverage, s2.type_accuracy});
    }
  }
  return out;
}

Tables CurveExperiment(const ExperimentConfig &c, bool vqa, std::vector<std::string> &errors) {
  DomainAssets a = LoadDomain(c);
  uint64_t seed = c.Uint("seed");
  int trials = c.Int("trials");
  auto results = RunTrials<std::vector<CurvePoint>>(
      trials, c.Int("threads"), [&](int t) { return CurveTrial(a, c, vqa, DeriveSeed(seed, t)); },
      errors);
  const char *metric = vqa ? "coverage" : "accuracy";
  std::string csv = vqa ? Row({"trial", "size", "system", "coverage", "type_accuracy"})
                        : Row({"trial", "size", "system", "accuracy"});
  // (system, size) -> values across trials
  std::map<std::pair<std::string, int>, std::vector<double>> by_point, by_point_type;
  std::map<std::string, std::map<int, std::vector<std::pair<double, double>>>> per_trial;
  for (int t = 0; t < trials; ++t) {
    if (!results[static_cast<size_t>(t)]) continue;
    for (const CurvePoint &p : *results[static_cast<size_t>(t)]) {
      std::vector<std::string> f = {std::to_string(t), std::to_string(p.size), p.system,
                                    Num(p.accuracy)};
      if (vqa) f.push_back(Num(p.type_accuracy));
      csv += Row(f);
      by_point[{p.system, p.size}].push_back(p.accuracy);
      by_point_type[{p.system, p.size}].push_back(p.type_accuracy);
      per_trial[p.system][t].push_back({static_cast<double>(p.size), p.accuracy});
    }
  }
  Tables out;
  out.stable["curve.csv"] = csv;
  std::string mean = vqa ? Row({"size", "system", "mean_coverage", "mean_type_accuracy"})
                         : Row({"size", "system", "mean_accuracy"});
  std::ostringstream md;
  md << "| size | system | mean " << metric << (vqa ? " | mean answer-type accuracy |\n" : " |\n");
  md << (vqa ? "|---|---|---|---|\n" : "|---|---|---|\n");
  for (const auto &[key, values] : by_point) {
    std::vector<std::string> f = {std::to_string(key.second), key.first, Num(Mean(values))};
    if (vqa) f.push_back(Num(Mean(by_point_type[key])));
    mean += Row(f);
    md << "| " << key.second << " | " << key.first << " | " << FormatFixed(Mean(values), 4);
    if (vqa) md << " | " << FormatFixed(Mean(by_point_type[key]), 4);
    md << " |\n";
    out.metrics["mean_" + std::string(metric) + "_" + key.first + "_" + std::to_string(key.second)] =
        Mean(values);
  }
  out.stable["curve_mean.csv"] = mean;
  md << "\nSpearman rank correlation of " << metric << " with training-set size, minimum over trials:\n\n";
  for (const auto &[system, trials_map] : per_trial) {
    double lo = 1.0;
    for (const auto &[t, pts] : trials_map) {
      std::vector<double> x, y;
      for (const auto &[s, v] : pts) {
        x.push_back(s);
        y.push_back(v);
      }
      lo = std::min(lo, Spearman(x, y));
    }
    out.metrics["min_spearman_" + system] = lo;
    md << "- " << system << ": " << FormatFixed(lo, 3) << "\n";
  }
  out.summary = md.str();
  return out;
}

// ---- axiom ablation ----

struct AblationTrial {
  uint64_t seed = 0;
  std::vector<size_t> removed;
  size_t installed = 0;
  double ablated_accuracy = 0.0, learned_accuracy = 0.0;
  double ablated_coverage = 0.0, learned_coverage = 0.0;
  bool extension_match = false;
  double spearman = 0.0;
  std::vector<std::pair<int, double>> curve;
  std::vector<std::string> rules;
};

AblationTrial AblationRun(const DomainAssets &a, const ExperimentConfig &c, uint64_t seed) {
  std::vector<int> sizes = c.Ints("sizes");
  TrialData t = MakeTrialData(a, c, sizes.back(), seed);
  AblationTrial r;
  r.seed = seed;
  r.removed = PickAxioms(a.kb, c.Int("remove"), DeriveSeed(seed, 4));
  kr::SystemDescription ablated = WithoutRules(a.kb, r.removed);
  std::vector<LabeledExample> test = Rows(t.test_ex, t.test, t.test.size());
  r.ablated_accuracy = axlearn::KbAccuracy(ablated, {}, test);
  kr::SystemDescription learned = ablated;
  std::vector<double> x, y;
  for (int n : sizes) {
    auto [d, report] = axlearn::Learn(ablated, {}, Rows(t.train_ex, t.train, static_cast<size_t>(n)),
                                      a.provider.schema(), LearnerParamsOf(c, seed));
    double acc = axlearn::KbAccuracy(d, {}, test);
    r.curve.push_back({n, acc});
    x.push_back(n);
    y.push_back(acc);
    learned = std::move(d);
    r.installed = report.installed;
    r.rules = report.installed_rules;
  }
  r.learned_accuracy = y.back();
  r.spearman = Spearman(x, y);
  r.extension_match = SameLabels(learned, a.kb, a.cells);
  double tau = c.Double("tau");
  auto items = qa::MakeQaItems(a.catalog, a.kb, t.test, a.provider, a.labels, c.Int("per_scene"),
                               DeriveSeed(seed, 6));
  qa::Pipeline before(a.catalog, kr::Reasoner(ablated), std::nullopt, std::nullopt, tau);
  qa::Pipeline after(a.catalog, kr::Reasoner(learned), std::nullopt, std::nullopt, tau);
  r.ablated_coverage = ScoreQa(before, items, t.test_ex, t.test).coverage;
  r.learned_coverage = ScoreQa(after, items, t.test_ex, t.test).coverage;
  return r;
}

Tables AblationExperiment(const ExperimentConfig &c, std::vector<std::string> &errors) {
  DomainAssets a = LoadDomain(c);
  uint64_t seed = c.Uint("seed");
  int trials = c.Int("trials");
  auto results = RunTrials<AblationTrial>(
      trials, c.Int("threads"), [&](int t) { return AblationRun(a, c, DeriveSeed(seed, t)); },
      errors);
  std::string csv = Row({"trial", "seed", "removed", "installed", "ablated_accuracy",
                         "learned_accuracy", "extension_match", "ablated_coverage",
                         "learned_coverage", "spearman"});
  std::string curve = Row({"trial", "size", "learned_accuracy"});
  std::string rules;
  std::vector<double> acc0, acc1, cov0, cov1;
  double matches = 0.0, lo = 1.0;
  for (int t = 0; t < trials; ++t) {
    const auto &r = results[static_cast<size_t>(t)];
    if (!r) continue;
    csv += Row({std::to_string(t), std::to_string(r->seed), JoinIndices(r->removed),
                std::to_string(r->installed), Num(r->ablated_accuracy), Num(r->learned_accuracy),
                r->extension_match ? "1" : "0", Num(r->ablated_coverage), Num(r->learned_coverage),
                Num(r->spearman)});
    for (const auto &[n, v] : r->curve) curve += Row({std::to_string(t), std::to_string(n), Num(v)});
    rules += "% trial " + std::to_string(t) + "\n";
    for (const std::string &rule : r->rules) rules += rule + "\n";
    acc0.push_back(r->ablated_accuracy);
    acc1.push_back(r->learned_accuracy);
    cov0.push_back(r->ablated_coverage);
    cov1.push_back(r->learned_coverage);
    matches += r->extension_match;
    lo = std::min(lo, r->spearman);
  }
  Tables out;
  out.stable["trials.csv"] = csv;
  out.stable["curve.csv"] = curve;
  out.stable["learned_axioms.sd"] = rules;
  SignTest sa = PairedSignTest(acc1, acc0), sc = PairedSignTest(cov1, cov0);
  double done = static_cast<double>(acc0.size());
  auto &m = out.metrics;
  m["trials_completed"] = done;
  m["mean_ablated_accuracy"] = Mean(acc0);
  m["mean_learned_accuracy"] = Mean(acc1);
  m["mean_ablated_coverage"] = Mean(cov0);
  m["mean_learned_coverage"] = Mean(cov1);
  m["accuracy_wins"] = sa.wins;
  m["accuracy_losses"] = sa.losses;
  m["accuracy_p"] = sa.p_value;
  m["coverage_wins"] = sc.wins;
  m["coverage_losses"] = sc.losses;
  m["coverage_p"] = sc.p_value;
  m["extension_match_rate"] = done > 0 ? matches / done : 0.0;
  m["min_spearman"] = lo;
  std::ostringstream md;
  md << "| | ablated KB | learned KB |\n|---|---|---|\n";
  md << "| accuracy | " << FormatFixed(Mean(acc0), 4) << " | " << FormatFixed(Mean(acc1), 4) << " |\n";
  md << "| slot coverage | " << FormatFixed(Mean(cov0), 4) << " | " << FormatFixed(Mean(cov1), 4)
     << " |\n\n";
  md << "- axioms removed per trial: " << c.Int("remove") << "\n";
  md << "- learned > ablated accuracy: " << sa.wins << "/" << done << " (losses " << sa.losses
     << ", sign test p = " << sa.p_value << ")\n";
  md << "- learned > ablated coverage: " << sc.wins << "/" << done << " (losses " << sc.losses
     << ", sign test p = " << sc.p_value << ")\n";
  md << "- learned KB labels every cell as the complete KB: " << matches << "/" << done << "\n";
  md << "- minimum Spearman of learned accuracy with training-set size: " << FormatFixed(lo, 3)
     << "\n";
  out.summary = md.str();
  return out;
}

// ---- paired planning trials ----

struct PairedTrial {
  uint64_t seed = 0;
  int places = 0;
  std::string recipient;
  bool at_work = false;
  planner::ExecutionLog before, after;
};

domains::RaConfig TrialMap(const ExperimentConfig &c, uint64_t seed) {
  domains::RaConfig m = c.Str("map") == "random"
                            ? domains::RandomRaConfig(seed, c.Int("min_places"), c.Int("max_places"))
                            : domains::RaConfig::Canonical();
  if (!c.IsWorld("p_home")) m.p_home = c.Double("p_home");
  if (!c.IsWorld("p_fail")) m.p_fail = c.Double("p_fail");
  if (!c.IsWorld("p_miss")) m.p_miss = c.Double("p_miss");
  return m;
}

PairedTrial PairedRun(const ExperimentConfig &c, uint64_t seed) {
  PairedTrial r;
  r.seed = seed;
  domains::RaConfig m = TrialMap(c, DeriveSeed(seed, 1));
  domains::RaWorld world = domains::GenRaWorld(m, DeriveSeed(seed, 2));
  Rng rng(DeriveSeed(seed, 3));
  r.places = static_cast<int>(m.places.size());
  r.recipient = m.people[rng.Below(m.people.size())];
  r.at_work = world.person_loc.at(r.recipient) == m.workplace.at(r.recipient);
  planner::DeliveryTask task{m.messages.at(0), r.recipient, world.robot_loc};
  planner::ExecPolicy policy{c.Int("max_replans"), c.Int("max_horizon")};
  auto unknown = kr::SystemDescription::FromText(domains::RaKbText(m, {}));
  auto learned = kr::SystemDescription::FromText(domains::RaKbText(m, m.workplace));
  domains::RaWorld w0 = world, w1 = world;
  r.before = planner::ExecuteDelivery(unknown, w0, task, policy, DeriveSeed(seed, 4));
  r.after = planner::ExecuteDelivery(learned, w1, task, policy, DeriveSeed(seed, 4));
  return r;
}

double Ratio(double a, double b) { return b > 0.0 ? a / b : 0.0; }

Tables PairedExperiment(const ExperimentConfig &c, std::vector<std::string> &errors) {
  uint64_t seed = c.Uint("seed");
  int trials = c.Int("trials");
  auto results = RunTrials<PairedTrial>(
      trials, c.Int("threads"), [&](int t) { return PairedRun(c, DeriveSeed(seed, t)); }, errors);
  std::string csv = Row({"trial", "seed", "places", "recipient", "recipient_at_work",
                         "before_plans", "after_plans", "before_actions", "after_actions",
                         "before_replans", "after_replans", "before_success", "after_success"});
  std::string timing = Row({"trial", "before_planning_s", "after_planning_s", "before_execution_s",
                            "after_execution_s"});
  std::vector<double> plans, actions, exec, plan_time, per_plan;
  std::vector<double> after_plans, before_plans, before_actions, after_actions;
  int ok0 = 0, ok1 = 0;
  for (int t = 0; t < trials; ++t) {
    const auto &r = results[static_cast<size_t>(t)];
    if (!r) continue;
    const auto &b = r->before, &a = r->after;
    csv += Row({std::to_string(t), std::to_string(r->seed), std::to_string(r->places), r->recipient,
                r->at_work ? "1" : "0", std::to_string(b.plans), std::to_string(a.plans),
                std::to_string(b.actions), std::to_string(a.actions),
                std::to_string(b.replans.size()), std::to_string(a.replans.size()),
                b.success ? "1" : "0", a.success ? "1" : "0"});
    timing += Row({std::to_string(t), Num(b.planning_seconds), Num(a.planning_seconds),
                   Num(b.execution_seconds), Num(a.execution_seconds)});
    plans.push_back(Ratio(b.plans, a.plans));
    actions.push_back(Ratio(b.actions, a.actions));
    exec.push_back(Ratio(b.execution_seconds, a.execution_seconds));
    plan_time.push_back(Ratio(b.planning_seconds, a.planning_seconds));
    per_plan.push_back(Ratio(b.planning_seconds / std::max(b.plans, 1),
                             a.planning_seconds / std::max(a.plans, 1)));
    before_plans.push_back(b.plans);
    after_plans.push_back(a.plans);
    before_actions.push_back(b.actions);
    after_actions.push_back(a.actions);
    ok0 += b.success;
    ok1 += a.success;
  }
  Tables out;
  out.stable["trials.csv"] = csv;
  out.timing["timing.csv"] = timing;
  std::string ratios = Row({"plans", "actions", "execution_time", "planning_time_per_trial",
                            "planning_time_per_plan"});
  ratios += Row({Num(Mean(plans)), Num(Mean(actions)), Num(Mean(exec)), Num(Mean(plan_time)),
                 Num(Mean(per_plan))});
  out.timing["ratios.csv"] = ratios;
  auto &m = out.metrics;
  m["plans_ratio"] = Mean(plans);
  m["actions_ratio"] = Mean(actions);
  m["execution_time_ratio"] = Mean(exec);
  m["planning_time_ratio"] = Mean(plan_time);
  m["planning_time_per_plan_ratio"] = Mean(per_plan);
  m["mean_before_plans"] = Mean(before_plans);
  m["mean_after_plans"] = Mean(after_plans);
  m["mean_before_actions"] = Mean(before_actions);
  m["mean_after_actions"] = Mean(after_actions);
  m["before_successes"] = ok0;
  m["after_successes"] = ok1;
  m["trials_completed"] = static_cast<double>(plans.size());
  std::ostringstream md;
  md << "Per-trial ratios (before learning / after learning), averaged over " << plans.size()
     << " trials:\n\n";
  md << "| Plans | Actions | Execution time | Planning time (trial) | Planning time (plan) |\n";
  md << "|---|---|---|---|---|\n";
  md << "| " << FormatFixed(Mean(plans), 2) << " | " << FormatFixed(Mean(actions), 2) << " | "
     << FormatFixed(Mean(exec), 2) << " | " << FormatFixed(Mean(plan_time), 2) << " | "
     << FormatFixed(Mean(per_plan), 2) << " |\n\n";
  md << "- mean plans per trial: " << FormatFixed(Mean(before_plans), 2) << " before, "
     << FormatFixed(Mean(after_plans), 2) << " after\n";
  md << "- mean actions per trial: " << FormatFixed(Mean(before_actions), 2) << " before, "
     << FormatFixed(Mean(after_actions), 2) << " after\n";
  md << "- deliveries completed: " << ok0 << " before, " << ok1 << " after\n";
  md << "- execution time is wall-clock time outside the planner; the action ratio is its "
        "simulator-independent counterpart\n";
  out.summary = md.str();
  return out;
}

// ---- robot assistant QA ----

struct RaQaTrial {
  double type_accuracy = 0.0;       // answer model, on the label the tree gives
  double type_accuracy_gold = 0.0;  // answer model, on the true label
  QaScore pipeline;
  double tree_accuracy = 0.0;
  std::vector<std::string> items;
};

RaQaTrial RaQaRun(const DomainAssets &a, const ExperimentConfig &c, uint64_t seed) {
  RaQaTrial r;
  double tf = c.Double("train_fraction");
  std::vector<SceneRecord> scenes = a.generate(c.Int("examples"), DeriveSeed(seed, 0));
  TrainTestSplit split(scenes.size(), tf, DeriveSeed(seed, 1));
  std::vector<SceneRecord> train = split.Train(scenes), test = split.Test(scenes);
  double noise = c.Double("noise");
  auto train_ex = ExtractAll(a.provider, train, noise, DeriveSeed(seed, 2));
  auto test_ex = ExtractAll(a.provider, test, noise, DeriveSeed(seed, 3));
  DecisionTree tree = TrainClassifier(Rows(train_ex, train, train.size()), a.provider.schema(), c);
  int per = c.Int("per_scene");
  auto train_items = qa::MakeQaItems(a.catalog, a.kb, train, a.provider, a.labels, per, DeriveSeed(seed, 5));
  auto test_items = qa::MakeQaItems(a.catalog, a.kb, test, a.provider, a.labels, per, DeriveSeed(seed, 6));
  qa::AnswerModel model = qa::AnswerModel::Train(AnswerRows(train_items, a, train_ex, train, train.size()),
                                                 a.catalog, a.provider.schema(), a.classes);
  std::vector<qa::AnswerExample> shown, gold;
  for (const qa::QaItem &i : test_items) {
    std::string label = tree.Predict(test_ex[i.scene].features).label;
    shown.push_back(qa::ExampleFor(i, a.catalog, a.kb, test_ex[i.scene].features, label));
    gold.push_back(qa::ExampleFor(i, a.catalog, a.kb, test_ex[i.scene].features, test[i.scene].label));
  }
  r.type_accuracy = model.Accuracy(shown);
  r.type_accuracy_gold = model.Accuracy(gold);
  r.tree_accuracy = induction::Accuracy(tree, Rows(test_ex, test, test.size()));
  qa::Pipeline p(a.catalog, kr::Reasoner(a.kb), tree, model, c.Double("tau"));
  r.pipeline = ScoreQa(p, test_items, test_ex, test, &r.items);
  return r;
}

Tables RaQaExperiment(const ExperimentConfig &c, std::vector<std::string> &errors) {
  DomainAssets a = LoadDomain(c);
  uint64_t seed = c.Uint("seed");
  int trials = c.Int("trials");
  auto results = RunTrials<RaQaTrial>(
      trials, c.Int("threads"), [&](int t) { return RaQaRun(a, c, DeriveSeed(seed, t)); }, errors);
  std::string csv = Row({"trial", "type_accuracy", "type_accuracy_true_label", "tree_accuracy",
                         "coverage", "pipeline_type_accuracy", "fallback_share"});
  std::string items = Row({"trial", "scene", "question", "gold_type", "answer_type", "handler", "covered"});
  std::vector<double> type, type_gold, cov, ptype, fallback, tree;
  for (int t = 0; t < trials; ++t) {
    const auto &r = results[static_cast<size_t>(t)];
    if (!r) continue;
    csv += Row({std::to_string(t), Num(r->type_accuracy), Num(r->type_accuracy_gold),
                Num(r->tree_accuracy), Num(r->pipeline.coverage), Num(r->pipeline.type_accuracy),
                Num(r->pipeline.fallback)});
    for (const std::string &line : r->items) items += std::to_string(t) + "," + line;
    type.push_back(r->type_accuracy);
    type_gold.push_back(r->type_accuracy_gold);
    cov.push_back(r->pipeline.coverage);
    ptype.push_back(r->pipeline.type_accuracy);
    fallback.push_back(r->pipeline.fallback);
    tree.push_back(r->tree_accuracy);
  }
  Tables out;
  out.stable["trials.csv"] = csv;
  out.stable["answers.csv"] = items;
  auto &m = out.metrics;
  m["answer_type_accuracy"] = Mean(type);
  m["answer_type_accuracy_true_label"] = Mean(type_gold);
  m["coverage"] = Mean(cov);
  m["pipeline_type_accuracy"] = Mean(ptype);
  m["fallback_share"] = Mean(fallback);
  m["tree_accuracy"] = Mean(tree);
  std::ostringstream md;
  md << "| metric | mean |\n|---|---|\n";
  md << "| answer-type accuracy (fallback model, held-out third) | " << FormatFixed(Mean(type), 4) << " |\n";
  md << "| same, given the true class | " << FormatFixed(Mean(type_gold), 4) << " |\n";
  md << "| end-to-end slot coverage | " << FormatFixed(Mean(cov), 4) << " |\n";
  md << "| end-to-end answer-type accuracy | " << FormatFixed(Mean(ptype), 4) << " |\n";
  md << "| share answered by the fallback | " << FormatFixed(Mean(fallback), 4) << " |\n";
  md << "| tree classification accuracy | " << FormatFixed(Mean(tree), 4) << " |\n";
  out.summary = md.str();
  return out;
}

std::string RelativeToData(const std::string &path) {
  std::string dir = DataDir() + "/";
  return StartsWith(path, dir) ? "data/" + path.substr(dir.size()) : path;
}

}  // namespace

qa::Catalog TsCatalog(const domains::TsOntology &ontology) {
  qa::Catalog c = qa::Catalog::Load(DataPath("ts/qa.txt"));
  std::map<std::string, std::string> message, response;
  for (const auto &s : ontology.classes) {
    message[s.label] = s.message;
    response[s.label] = s.response;
  }
  c.AddClassTable("message", message);
  c.AddClassTable("response", response);
  return c;
}

DomainAssets LoadDomain(const ExperimentConfig &config) {
  auto kb_at = [](const std::string &rel) {
    return kr::SystemDescription::FromText(ReadFile(DataPath(rel)));
  };
  const std::string &id = config.experiment();
  std::string domain = id == "ra-qa" ? "ra" : config.Str("domain");
  if (domain == "ss") {
    domains::SsParams params;
    params.boundary_band = config.Double("boundary_band");
    DomainAssets a{"ss",
                   kb_at(config.Str("kb")),
                   kb_at("ss/kb.sd"),
                   domains::SsProvider(params),
                   qa::Catalog::Load(DataPath("ss/qa.txt")),
                   {},
                   {"stable", "unstable"},
                   {},
                   [params](int n, uint64_t seed) { return domains::GenSs(n, seed, params); }};
    // Cells the generator produces, at band 0 where the complete KB is
    // exact.
    domains::SsParams exact = params;
    exact.boundary_band = 0.0;
    std::set<FeatureVector> seen;
    for (const SceneRecord &s : domains::GenSs(20000, 20240601, exact)) {
      seen.insert(a.provider.Extract(s).features);
    }
    a.cells.assign(seen.begin(), seen.end());
    return a;
  }
  if (domain == "ts") {
    auto ontology = std::make_shared<domains::TsOntology>(
        domains::LoadTsOntology(DataPath("ts/ontology.csv")));
    DomainAssets a{"ts",
                   kb_at(config.Str("kb")),
                   kb_at("ts/kb.sd"),
                   domains::TsProvider(*ontology),
                   TsCatalog(*ontology),
                   {},
                   {},
                   {},
                   [ontology](int n, uint64_t seed) { return domains::GenTs(*ontology, n, seed); }};
    for (const auto &s : ontology->classes) {
      a.labels.push_back(s.label);
      a.cells.push_back(s.features);
    }
    a.classes = a.labels;
    return a;
  }
  if (domain == "ra") {
    auto map = std::make_shared<domains::RaConfig>(domains::RaConfig::Canonical());
    return DomainAssets{
        "ra",
        kb_at(config.Str("kb")),
        kb_at("ra/qa.sd"),
        domains::RaQaProvider(),
        qa::Catalog::Load(DataPath("ra/qa.txt")),
        {},
        {"cluttered", "tidy"},
        {},
        [map](int n, uint64_t seed) { return domains::GenRaQaScenes(*map, n, seed); }};
  }
  Fail(ErrorCode::kInvalidArgument, "unknown domain " + domain);
}

std::vector<size_t> ClassificationAxioms(const kr::SystemDescription &d) {
  std::vector<size_t> out;
  for (size_t i = 0; i < d.rules().size(); ++i) {
    if (axlearn::RegionOf(d.rules()[i], d)) out.push_back(i);
  }
  return out;
}

kr::SystemDescription WithoutRules(const kr::SystemDescription &d, std::vector<size_t> indices) {
  kr::SystemDescription out = d;
  std::sort(indices.rbegin(), indices.rend());
  indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
  for (size_t i : indices) out.RemoveRule(i);
  return out;
}

bool SameLabels(const kr::SystemDescription &a, const kr::SystemDescription &b,
                const std::vector<FeatureVector> &cells) {
  kr::Reasoner ra(a), rb(b);
  for (const FeatureVector &v : cells) {
    if (ra.Classify(v).label != rb.Classify(v).label) return false;
  }
  return true;
}

ExperimentResult RunExperiment(const ExperimentConfig &config) {
  config.Validate();
  ExperimentResult result;
  RunManifest &m = result.manifest;
  m.experiment = config.experiment();
  m.version = ASPIRE_VERSION;
  m.config = config.ToText();
  // Thread count and destination do not change results.
  ExperimentConfig identity = config;
  identity.Set("threads", "0");
  identity.Set("output_dir", "");
  m.run_id = HexDigest(identity.ToText() + m.version);
  uint64_t seed = config.Uint("seed");
  for (int t = 0; t < config.Int("trials"); ++t) m.trial_seeds.push_back({t, DeriveSeed(seed, t)});
  Tables tables;
  std::vector<std::string> errors;
  {
    ReadRecorder reads;
    const std::string &id = config.experiment();
    if (id == "ss-classify" || id == "ts-classify") {
      tables = CurveExperiment(config, false, errors);
    } else if (id == "ss-vqa" || id == "ts-vqa") {
      tables = CurveExperiment(config, true, errors);
    } else if (id == "axiom-ablation") {
      tables = AblationExperiment(config, errors);
    } else if (id == "ra-paired") {
      tables = PairedExperiment(config, errors);
    } else {
      tables = RaQaExperiment(config, errors);
    }
    for (const auto &[path, digest] : reads.Digests()) m.inputs[RelativeToData(path)] = digest;
  }
  m.errors = errors;
  m.complete = errors.empty();
  std::string header = ManifestReference(m) + "\n";
  for (const auto &[file, text] : tables.stable) {
    std::string body = (file.ends_with(".csv") ? header : "% " + header.substr(2)) + text;
    m.outputs[file] = HexDigest(body);
    result.tables[file] = body;
  }
  for (const auto &[file, text] : tables.timing) {
    m.volatile_outputs.push_back(file);
    result.tables[file] = header + text;
  }
  std::ostringstream md;
  md << "# " << m.experiment << "\n\n";
  md << "Run " << m.run_id << ", version " << m.version << ", "
     << (m.complete ? "complete" : "INCOMPLETE") << ". Inputs and checksums are in manifest.txt.\n\n";
  md << tables.summary;
  if (!errors.empty()) {
    md << "\nFailed trials:\n\n";
    for (const std::string &e : errors) md << "- " << e << "\n";
  }
  result.summary = md.str();
  result.metrics = std::move(tables.metrics);
  return result;
}

void WriteResult(const ExperimentResult &result, const std::string &dir) {
  std::filesystem::create_directories(dir);
  for (const auto &[file, text] : result.tables) WriteFile(dir + "/" + file, text);
  WriteFile(dir + "/summary.md", result.summary);
  WriteFile(dir + "/manifest.txt", result.manifest.ToText());
}

}  // namespace aspire::harness
