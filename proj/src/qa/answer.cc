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

#include "qa/answer.h"

#include <algorithm>
#include <regex>
#include <set>

#include "common/error.h"
#include "common/random.h"
#include "common/text.h"

namespace aspire::qa {
namespace {

using logic::Term;

bool IsWildcard(const Term &t) { return t.kind == Term::Kind::kConstant && t.name == "*"; }

bool Holds(const std::pair<std::string, std::string> &cond, const AnswerContext &ctx) {
  const auto &[key, want] = cond;
  std::string have;
  if (key == "kind") {
    have = QueryKindName(ctx.query.kind);
  } else if (key == "topic") {
    have = ctx.query.topic;
  } else if (key == "class") {
    if (want == "*") return !ctx.label.empty();
    have = ctx.label.empty() ? AnswerModel::kUnknownClass : ctx.label;
  } else if (key == "known") {
    have = ctx.label.empty() ? "false" : "true";
  } else if (key == "match") {
    have = MatchValue(ctx.label, ctx.asked);
  } else {
    auto it = ctx.features.find(key);
    if (it == ctx.features.end()) return false;
    have = it->second;
  }
  for (const std::string &alt : Split(want, '/')) {
    if (Trim(alt) == have) return true;
  }
  return false;
}

}  // namespace

std::string AskedLabel(const kr::SystemDescription &d, const ParsedQuery &q) {
  if (!q.label.empty()) return q.label;
  for (const auto &c : d.source().classes) {
    const logic::Literal &l = c.literal;
    if (l.predicate != q.target.predicate || l.negated != q.target.negated ||
        l.args.size() != q.target.args.size()) {
      continue;
    }
    std::string captured;
    bool ok = true;
    for (size_t i = 0; i < l.args.size() && ok; ++i) {
      const Term &t = q.target.args[i];
      if (IsWildcard(l.args[i])) {
        if (t.IsGround()) captured = logic::ToString(t);
        else ok = false;
      } else if (t.kind != Term::Kind::kVariable) {
        ok = logic::ToString(t) == logic::ToString(l.args[i]);
      }
    }
    if (!ok) continue;
    return c.label == "*" ? captured : c.label;
  }
  return "";
}

std::string MatchValue(const std::string &label, const std::string &asked) {
  if (label.empty() || asked.empty()) return "none";
  return label == asked ? "true" : "false";
}

const AnswerTemplate &SelectAnswerType(const Catalog &catalog, const AnswerContext &ctx) {
  for (const AnswerTemplate &a : catalog.answers()) {
    if (std::all_of(a.conditions.begin(), a.conditions.end(),
                    [&](const auto &c) { return Holds(c, ctx); })) {
      return a;
    }
  }
  Fail(ErrorCode::kNotFound, "no answer type applies to \"" + ctx.query.raw + "\"");
}

Answer Fill(const Catalog &catalog, const AnswerTemplate &t, const AnswerContext &ctx) {
  static const std::regex kSlot(R"(\{([fcqa]):([a-z_]+)\})");
  Answer out;
  out.type = t.id;
  size_t pos = 0;
  const std::string &s = t.skeleton;
  for (auto it = std::sregex_iterator(s.begin(), s.end(), kSlot); it != std::sregex_iterator(); ++it) {
    out.text += s.substr(pos, it->position() - pos);
    std::string kind = (*it)[1], name = (*it)[2];
    auto missing = [&]() {
      Fail(ErrorCode::kTemplateFill, "answer " + t.id + ": no value for slot " + it->str());
    };
    std::string value;
    if (kind == "f") {
      auto f = ctx.features.find(name);
      if (f == ctx.features.end()) missing();
      value = catalog.Phrase(name, f->second);
    } else if (kind == "c") {
      if (ctx.label.empty()) missing();
      value = catalog.ClassText(name, ctx.label);
    } else if (kind == "q") {
      auto q = ctx.query.slots.find(name);
      if (q == ctx.query.slots.end()) missing();
      value = q->second;
    } else {
      auto a = ctx.attributes.find(name);
      if (a == ctx.attributes.end()) missing();
      value = a->second;
    }
    out.text += value;
    out.required.push_back(value);
    pos = it->position() + it->length();
  }
  out.text += s.substr(pos);
  if (out.required.empty()) out.required.push_back(out.text);
  return out;
}

bool Covers(const std::string &answer, const Answer &gold) {
  std::string a = Lower(Trim(answer));
  if (gold.required.size() == 1 && gold.required[0] == gold.text) return a == Lower(Trim(gold.text));
  for (const std::string &r : gold.required) {
    if (a.find(Lower(r)) == std::string::npos) return false;
  }
  return true;
}

Answer AnswerSymbolic(const Catalog &catalog, const AnswerContext &ctx) {
  return Fill(catalog, SelectAnswerType(catalog, ctx), ctx);
}

AnswerModel AnswerModel::Train(const std::vector<AnswerExample> &examples, const Catalog &catalog,
                               const FeatureSchema &schema,
                               const std::vector<std::string> &labels) {
  if (examples.empty()) Fail(ErrorCode::kInvalidArgument, "no answer examples");
  std::set<std::string> classes(labels.begin(), labels.end());
  classes.insert(kUnknownClass);
  std::vector<FeatureDef> defs = {{kQuery, catalog.QueryKeys()},
                                  {kClass, {classes.begin(), classes.end()}},
                                  {kMatch, {"true", "false", "none"}}};
  for (const FeatureDef &f : schema.features()) defs.push_back(f);
  AnswerModel m;
  FeatureSchema full(std::move(defs));
  // Seed the schema so Inputs can check class names before training.
  m.tree_ = induction::DecisionTree(full, {}, {});
  std::vector<induction::LabeledExample> rows;
  for (const AnswerExample &e : examples) {
    if (!catalog.HasAnswer(e.answer_type)) {
      Fail(ErrorCode::kInvalidArgument, "answer type " + e.answer_type + " is not in the catalog");
    }
    rows.push_back({m.Inputs(e.query_key, e.match, e.features, e.label), e.answer_type});
  }
  induction::TreeParams params;
  params.min_gain = 1e-9;
  params.min_leaf_support = 0;
  m.tree_ = induction::TrainTree(rows, full, params);
  return m;
}

FeatureVector AnswerModel::Inputs(const std::string &query_key, const std::string &match,
                                  const FeatureVector &features, const std::string &label) const {
  FeatureVector in = features;
  in[kQuery] = query_key;
  in[kMatch] = match;
  const FeatureSchema &s = tree_.schema();
  int ci = s.IndexOf(kClass);
  bool seen = !label.empty() && ci >= 0 && s.ValueIndex(static_cast<size_t>(ci), label) >= 0;
  in[kClass] = seen ? label : kUnknownClass;
  return in;
}

std::string AnswerModel::Predict(const std::string &query_key, const std::string &match,
                                 const FeatureVector &features, const std::string &label) const {
  return tree_.Predict(Inputs(query_key, match, features, label)).label;
}

double AnswerModel::Accuracy(const std::vector<AnswerExample> &examples) const {
  if (examples.empty()) return 0.0;
  size_t ok = 0;
  for (const AnswerExample &e : examples) {
    ok += Predict(e.query_key, e.match, e.features, e.label) == e.answer_type;
  }
  return static_cast<double>(ok) / examples.size();
}

AnswerModel AnswerModel::FromText(std::string_view text) {
  AnswerModel m;
  m.tree_ = induction::DecisionTree::FromText(text);
  if (m.tree_.schema().IndexOf(kQuery) < 0) {
    Fail(ErrorCode::kParse, "answer model tree lacks the query input");
  }
  return m;
}

Answer AnswerFallback(const AnswerModel &model, const Catalog &catalog, const AnswerContext &ctx) {
  std::string type = model.Predict(ctx.query.key, MatchValue(ctx.label, ctx.asked), ctx.features,
                                   ctx.label);
  return Fill(catalog, catalog.Answer(type), ctx);
}

const char *HandlerName(Handler h) {
  switch (h) {
    case Handler::kSymbolic: return "symbolic";
    case Handler::kFallback: return "fallback";
    case Handler::kUnanswered: return "unanswered";
  }
  return "?";
}

Pipeline::Pipeline(Catalog catalog, kr::Reasoner reasoner,
                   std::optional<induction::DecisionTree> classifier,
                   std::optional<AnswerModel> model, double tau)
    : catalog_(std::move(catalog)),
      reasoner_(std::move(reasoner)),
      classifier_(std::move(classifier)),
      model_(std::move(model)),
      tau_(tau) {}

PipelineResult Pipeline::Ask(std::string_view question, const Extraction &extraction,
                             const Attributes &attributes) {
  PipelineResult r;
  r.query = ParseQuestion(question, catalog_);
  AnswerContext ctx{r.query, extraction.features, "", AskedLabel(reasoner_.description(), r.query),
                    attributes};
  r.route = RouteByConfidence(extraction.confidence, tau_);
  bool done = false;
  if (r.route == Route::kSymbolic) {
    auto it = memo_.find(extraction.features);
    if (it == memo_.end()) {
      it = memo_.emplace(extraction.features, reasoner_.Classify(extraction.features)).first;
    }
    const kr::ClassOutcome &outcome = it->second;
    if (outcome.known()) {
      ctx.label = outcome.label;
      r.answer = AnswerSymbolic(catalog_, ctx);
      r.support = outcome.support;
      r.handler = Handler::kSymbolic;
      done = true;
    }
  }
  if (!done && classifier_ && model_) {
    r.path = classifier_->Predict(extraction.features);
    ctx.label = r.path.label;
    r.answer = AnswerFallback(*model_, catalog_, ctx);
    r.handler = Handler::kFallback;
  } else if (!done) {
    r.answer = Fill(catalog_, SelectAnswerType(catalog_, ctx), ctx);
    r.handler = Handler::kUnanswered;
  }
  r.label = ctx.label;
  log_.push_back({r.query.raw, r.route, r.handler, r.answer.type});
  return r;
}

std::vector<QaItem> MakeQaItems(const Catalog &catalog, const kr::SystemDescription &d,
                                const std::vector<SceneRecord> &scenes,
                                const FeatureProvider &provider,
                                const std::vector<std::string> &labels, int per_scene,
                                uint64_t seed) {
  Rng rng(seed);
  std::vector<QaItem> out;
  static const std::regex kQSlot(R"(\{q:([a-z_]+)\})");
  for (size_t si = 0; si < scenes.size(); ++si) {
    const SceneRecord &scene = scenes[si];
    std::vector<const QuestionTemplate *> usable;
    for (const QuestionTemplate &t : catalog.questions()) {
      bool ok = true;
      for (auto it = std::sregex_iterator(t.pattern.begin(), t.pattern.end(), kQSlot);
           it != std::sregex_iterator(); ++it) {
        ok = ok && scene.attributes.count((*it)[1]) > 0;
      }
      if (ok) usable.push_back(&t);
    }
    if (usable.empty()) continue;
    FeatureVector truth = provider.Extract(scene).features;
    for (int k = 0; k < per_scene; ++k) {
      const QuestionTemplate &t = *usable[rng.Below(usable.size())];
      std::string label = scene.label;
      if (!labels.empty() && !rng.Bernoulli(0.5)) label = labels[rng.Below(labels.size())];
      std::map<std::string, std::string> slots;
      for (auto it = std::sregex_iterator(t.pattern.begin(), t.pattern.end(), kQSlot);
           it != std::sregex_iterator(); ++it) {
        slots[(*it)[1]] = scene.attributes.at((*it)[1]);
      }
      QaItem item;
      item.scene = si;
      item.question = Instantiate(t, label, slots);
      ParsedQuery q = ParseQuestion(item.question, catalog);
      AnswerContext ctx{q, truth, scene.label, AskedLabel(d, q), scene.attributes};
      item.gold = Fill(catalog, SelectAnswerType(catalog, ctx), ctx);
      out.push_back(std::move(item));
    }
  }
  return out;
}

AnswerExample ExampleFor(const QaItem &item, const Catalog &catalog,
                         const kr::SystemDescription &d, const FeatureVector &features,
                         const std::string &label) {
  ParsedQuery q = ParseQuestion(item.question, catalog);
  return {q.key, MatchValue(label, AskedLabel(d, q)), features, label, item.gold.type};
}

std::string QaItemsCsv(const std::vector<QaItem> &items, const std::vector<SceneRecord> &scenes) {
  std::string out = FormatCsvRow({"question", "scene", "answer_type", "answer"}) + "\n";
  for (const QaItem &i : items) {
    out += FormatCsvRow(
        {i.question, std::to_string(scenes.at(i.scene).id), i.gold.type, i.gold.text}) +
           "\n";
  }
  return out;
}

}  // namespace aspire::qa
