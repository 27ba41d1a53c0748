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

#include "aspire/aspire.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include "axlearn/learner.h"
#include "common/error.h"
#include "common/paths.h"
#include "common/text.h"
#include "domains/ra.h"
#include "harness/experiments.h"
#include "induction/tree.h"
#include "kr/reasoner.h"
#include "logic/ground.h"
#include "logic/parser.h"
#include "logic/solver.h"
#include "planner/planner.h"
#include "qa/answer.h"

using namespace aspire;

struct aspire_kb {
  kr::SystemDescription d;
};

struct aspire_qa {
  harness::DomainAssets assets;
  std::optional<induction::DecisionTree> tree;
  std::optional<qa::AnswerModel> model;
  std::unique_ptr<qa::Pipeline> pipeline;
  std::optional<SceneRecord> scene;
  std::optional<qa::PipelineResult> last;

  void Rebuild() {
    pipeline = std::make_unique<qa::Pipeline>(assets.catalog, kr::Reasoner(assets.kb), tree, model);
  }
};

namespace {

thread_local std::string g_last_error;

aspire_status StatusOf(ErrorCode code) {
  switch (code) {
    case ErrorCode::kParse: return ASPIRE_E_PARSE;
    case ErrorCode::kSemantic: return ASPIRE_E_SEMANTIC;
    case ErrorCode::kGroundLimit: return ASPIRE_E_GROUND_LIMIT;
    case ErrorCode::kOracleCap: return ASPIRE_E_ORACLE_CAP;
    case ErrorCode::kIo: return ASPIRE_E_IO;
    case ErrorCode::kNotFound: return ASPIRE_E_NOT_FOUND;
    case ErrorCode::kNoPlan: return ASPIRE_E_NO_PLAN;
    case ErrorCode::kInvalidArgument: return ASPIRE_E_INVALID_ARGUMENT;
    case ErrorCode::kTemplateFill: return ASPIRE_E_TEMPLATE_FILL;
    case ErrorCode::kUnparseableQuestion: return ASPIRE_E_UNPARSEABLE_QUESTION;
    case ErrorCode::kInternal: return ASPIRE_E_INTERNAL;
  }
  return ASPIRE_E_INTERNAL;
}

template <typename Fn>
aspire_status Guard(Fn fn) {
  g_last_error.clear();
  try {
    fn();
    return ASPIRE_OK;
  } catch (const Error &e) {
    g_last_error = e.what();
    return StatusOf(e.code());
  } catch (const std::exception &e) {
    g_last_error = e.what();
    return ASPIRE_E_INTERNAL;
  }
}

void Need(const void *p, const char *name) {
  if (p == nullptr) Fail(ErrorCode::kInvalidArgument, std::string(name) + " is NULL");
}

void Put(char **out, const std::string &s) {
  if (out == nullptr) return;
  char *c = static_cast<char *>(std::malloc(s.size() + 1));
  if (c == nullptr) Fail(ErrorCode::kInternal, "out of memory");
  std::memcpy(c, s.c_str(), s.size() + 1);
  *out = c;
}

FeatureVector ParseFeatures(const std::string &text) {
  FeatureVector f;
  for (const std::string &part : SplitWhitespace(text)) {
    size_t eq = part.find('=');
    if (eq == std::string::npos || eq == 0) {
      Fail(ErrorCode::kParse, "expected name=value, got '" + part + "'");
    }
    f[part.substr(0, eq)] = part.substr(eq + 1);
  }
  return f;
}

std::string ExperimentFor(const std::string &domain) {
  if (domain == "ss") return "ss-vqa";
  if (domain == "ts") return "ts-vqa";
  if (domain == "ra") return "ra-qa";
  Fail(ErrorCode::kInvalidArgument, "unknown domain '" + domain + "'");
}

harness::DomainAssets Assets(const std::string &domain, const char *kb_path) {
  std::map<std::string, std::string> over;
  harness::ExperimentConfig c = harness::ExperimentConfig::For(ExperimentFor(domain));
  harness::DomainAssets a = harness::LoadDomain(c);
  if (kb_path != nullptr) a.kb = kr::SystemDescription::FromText(ReadFile(kb_path));
  return a;
}

domains::RaConfig MapAt(const char *dir) {
  return dir == nullptr ? domains::RaConfig::Canonical() : domains::RaConfig::Load(dir);
}

kr::SystemDescription RaKb(const domains::RaConfig &m, int learned) {
  return kr::SystemDescription::FromText(
      domains::RaKbText(m, learned ? m.workplace : std::map<std::string, std::string>{}));
}

}  // namespace

extern "C" {

const char *aspire_version(void) { return ASPIRE_VERSION; }

const char *aspire_status_name(aspire_status status) {
  switch (status) {
    case ASPIRE_OK: return "ok";
    case ASPIRE_E_PARSE: return "parse";
    case ASPIRE_E_SEMANTIC: return "semantic";
    case ASPIRE_E_GROUND_LIMIT: return "ground_limit";
    case ASPIRE_E_ORACLE_CAP: return "oracle_cap";
    case ASPIRE_E_IO: return "io";
    case ASPIRE_E_NOT_FOUND: return "not_found";
    case ASPIRE_E_NO_PLAN: return "no_plan";
    case ASPIRE_E_INVALID_ARGUMENT: return "invalid_argument";
    case ASPIRE_E_TEMPLATE_FILL: return "template_fill";
    case ASPIRE_E_UNPARSEABLE_QUESTION: return "unparseable_question";
    case ASPIRE_E_INTERNAL: return "internal";
  }
  return "unknown";
}

const char *aspire_last_error(void) { return g_last_error.c_str(); }

void aspire_free_string(char *s) { std::free(s); }

aspire_status aspire_solve(const char *program, size_t max_models, int use_cr, char **out) {
  return Guard([&] {
    Need(program, "program");
    Need(out, "out");
    logic::GroundProgram g = logic::Ground(logic::Parse(program));
    std::vector<logic::AnswerSet> models =
        use_cr ? logic::CrSolve(g) : logic::StableModels(g, max_models == 0 ? logic::kNoLimit : max_models);
    if (max_models != 0 && models.size() > max_models) models.resize(max_models);
    std::string text;
    for (const logic::AnswerSet &m : models) {
      text += "{" + Join(logic::AtomTexts(g, m, true), ", ") + "}\n";
    }
    Put(out, text);
  });
}

aspire_status aspire_kb_load(const char *path, aspire_kb **out) {
  return Guard([&] {
    Need(path, "path");
    Need(out, "out");
    *out = new aspire_kb{kr::SystemDescription::FromText(ReadFile(path))};
  });
}

aspire_status aspire_kb_parse(const char *text, aspire_kb **out) {
  return Guard([&] {
    Need(text, "text");
    Need(out, "out");
    *out = new aspire_kb{kr::SystemDescription::FromText(text)};
  });
}

void aspire_kb_free(aspire_kb *kb) { delete kb; }

aspire_status aspire_kb_text(const aspire_kb *kb, char **out) {
  return Guard([&] {
    Need(kb, "kb");
    Need(out, "out");
    Put(out, kb->d.ToText());
  });
}

aspire_status aspire_kb_classify(const aspire_kb *kb, const char *features, char **label,
                                 char **support) {
  return Guard([&] {
    Need(kb, "kb");
    Need(features, "features");
    kr::ClassOutcome o = kr::Reasoner(kb->d).Classify(ParseFeatures(features));
    std::string lines;
    for (const std::string &s : o.support) lines += s + "\n";
    Put(label, o.label);
    Put(support, lines);
  });
}

aspire_status aspire_kb_learn(aspire_kb *kb, const char *domain, const char *csv,
                              double leaf_support_fraction, uint64_t seed, char **report) {
  return Guard([&] {
    Need(kb, "kb");
    Need(domain, "domain");
    Need(csv, "csv");
    harness::DomainAssets a = Assets(domain, nullptr);
    auto rows = induction::ExamplesFromCsv(a.provider.schema(), csv);
    axlearn::LearnerParams p;
    p.leaf_support_fraction = leaf_support_fraction;
    p.seed = seed;
    auto [d, r] = axlearn::Learn(kb->d, {}, rows, a.provider.schema(), p);
    kb->d = std::move(d);
    std::ostringstream out;
    out << r.CountsCsv();
    out << r.AxiomsText();
    Put(report, out.str());
  });
}

aspire_status aspire_dataset(const char *domain, int n, uint64_t seed, char **csv) {
  return Guard([&] {
    Need(domain, "domain");
    Need(csv, "csv");
    if (n < 1) Fail(ErrorCode::kInvalidArgument, "n must be positive");
    harness::DomainAssets a = Assets(domain, nullptr);
    std::vector<induction::LabeledExample> rows;
    for (const SceneRecord &s : a.generate(n, seed)) {
      rows.push_back({a.provider.Extract(s).features, s.label});
    }
    Put(csv, induction::ExamplesToCsv(a.provider.schema(), rows));
  });
}

aspire_status aspire_qa_open(const char *domain, const char *kb_path, aspire_qa **out) {
  return Guard([&] {
    Need(domain, "domain");
    Need(out, "out");
    auto *q = new aspire_qa{Assets(domain, kb_path), std::nullopt, std::nullopt, nullptr,
                            std::nullopt, std::nullopt};
    q->Rebuild();
    *out = q;
  });
}

void aspire_qa_free(aspire_qa *qa) { delete qa; }

aspire_status aspire_qa_train(aspire_qa *qa, int n, uint64_t seed) {
  return Guard([&] {
    Need(qa, "qa");
    if (n < 1) Fail(ErrorCode::kInvalidArgument, "n must be positive");
    const harness::DomainAssets &a = qa->assets;
    std::vector<SceneRecord> scenes = a.generate(n, seed);
    std::vector<induction::LabeledExample> rows;
    for (const SceneRecord &s : scenes) rows.push_back({a.provider.Extract(s).features, s.label});
    std::vector<qa::AnswerExample> examples;
    for (const qa::QaItem &i :
         qa::MakeQaItems(a.catalog, a.kb, scenes, a.provider, a.labels, 2, DeriveSeed(seed, 1))) {
      examples.push_back(qa::ExampleFor(i, a.catalog, a.kb, rows[i.scene].features, rows[i.scene].label));
    }
    qa->tree = induction::TrainTree(rows, a.provider.schema());
    qa->model = qa::AnswerModel::Train(examples, a.catalog, a.provider.schema(), a.classes);
    qa->Rebuild();
  });
}

aspire_status aspire_qa_set_scene(aspire_qa *qa, const char *scene_line) {
  return Guard([&] {
    Need(qa, "qa");
    Need(scene_line, "scene_line");
    SceneRecord s = SceneFromText(scene_line);
    qa->assets.provider.Extract(s);
    qa->scene = std::move(s);
    qa->last.reset();
  });
}

aspire_status aspire_qa_ask(aspire_qa *qa, const char *question, char **answer, char **route) {
  return Guard([&] {
    Need(qa, "qa");
    Need(question, "question");
    if (!qa->scene) Fail(ErrorCode::kInvalidArgument, "no scene set");
    qa::PipelineResult r =
        qa->pipeline->Ask(question, qa->assets.provider.Extract(*qa->scene), qa->scene->attributes);
    Put(answer, r.answer.text);
    Put(route, qa::HandlerName(r.handler));
    qa->last = std::move(r);
  });
}

aspire_status aspire_qa_explain(const aspire_qa *qa, char **out) {
  return Guard([&] {
    Need(qa, "qa");
    Need(out, "out");
    if (!qa->last) Fail(ErrorCode::kNotFound, "nothing answered yet");
    const qa::PipelineResult &r = *qa->last;
    std::ostringstream s;
    s << "route: " << RouteName(r.route) << ", handler: " << qa::HandlerName(r.handler) << "\n";
    if (r.handler == qa::Handler::kFallback) {
      s << "tree path to " << r.path.label << " (support " << r.path.support << ", purity "
        << FormatFixed(r.path.purity, 2) << "):\n";
      for (const auto &[f, v] : r.path.tests) s << "  " << f << " = " << v << "\n";
    } else {
      s << "class: " << (r.label.empty() ? "unknown" : r.label) << "\n";
      for (const std::string &l : r.support) s << "  " << l << "\n";
    }
    Put(out, s.str());
  });
}

aspire_status aspire_plan(const char *map_dir, const char *start, const char *recipient,
                          int learned_defaults, int max_horizon, char **out) {
  return Guard([&] {
    Need(start, "start");
    Need(recipient, "recipient");
    Need(out, "out");
    domains::RaConfig m = MapAt(map_dir);
    if (!m.HasPlace(start)) Fail(ErrorCode::kNotFound, std::string("unknown place ") + start);
    if (!m.HasPerson(recipient)) Fail(ErrorCode::kNotFound, std::string("unknown person ") + recipient);
    kr::History h;
    h.facts.push_back(logic::ParseLiteral("loc(" + m.robot + ", " + start + ")"));
    planner::DeliveryTask task{m.messages.at(0), recipient, start};
    std::string extra = learned_defaults ? "" : planner::AssumeLocation(recipient);
    planner::Plan p = planner::MakePlan(RaKb(m, learned_defaults), h, planner::DeliveryGoal(m, task),
                                        max_horizon, extra);
    Put(out, p.ToText());
  });
}

aspire_status aspire_deliver(const char *map_dir, const char *start, const char *recipient,
                             int learned_defaults, uint64_t seed, char **log, char **summary) {
  return Guard([&] {
    Need(start, "start");
    Need(recipient, "recipient");
    domains::RaConfig m = MapAt(map_dir);
    if (!m.HasPerson(recipient)) Fail(ErrorCode::kNotFound, std::string("unknown person ") + recipient);
    domains::RaWorld w = domains::GenRaWorld(m, seed, start);
    std::string at = w.person_loc.at(recipient);
    planner::DeliveryTask task{m.messages.at(0), recipient, start};
    planner::ExecutionLog l =
        planner::ExecuteDelivery(RaKb(m, learned_defaults), w, task, {}, DeriveSeed(seed, 1));
    std::ostringstream s;
    s << "recipient_location=" << at << "\n";
    s << "success=" << (l.success ? 1 : 0) << "\n";
    s << "plans=" << l.plans << "\n";
    s << "actions=" << l.actions << "\n";
    s << "replans=" << l.replans.size() << "\n";
    for (const std::string &r : l.replans) s << "replan_reason=" << r << "\n";
    s << "planning_seconds=" << FormatFixed(l.planning_seconds, 4) << "\n";
    if (!l.failure.empty()) s << "failure=" << l.failure << "\n";
    Put(log, l.ToCsv());
    Put(summary, s.str());
  });
}

aspire_status aspire_experiment(const char *experiment, const char *config,
                                const char *output_dir, char **summary, int *complete) {
  return Guard([&] {
    Need(experiment, "experiment");
    harness::ExperimentConfig c = config == nullptr
                                      ? harness::ExperimentConfig::For(experiment)
                                      : harness::ExperimentConfig::FromText(config, experiment);
    harness::ExperimentResult r = harness::RunExperiment(c);
    harness::WriteResult(r, output_dir != nullptr ? output_dir : c.Str("output_dir"));
    Put(summary, r.summary);
    if (complete != nullptr) *complete = r.manifest.complete ? 1 : 0;
  });
}

}  // extern "C"
