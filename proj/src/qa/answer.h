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

#ifndef ASPIRE_QA_ANSWER_H_
#define ASPIRE_QA_ANSWER_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "features/scene.h"
#include "induction/tree.h"
#include "kr/reasoner.h"
#include "qa/catalog.h"

namespace aspire::qa {

using Attributes = std::map<std::string, std::string>;

// Everything an answer template may draw on.
struct AnswerContext {
  ParsedQuery query;
  FeatureVector features;
  std::string label;  // empty means unknown
  std::string asked;  // class named by the question, if any
  Attributes attributes;
};

// The class whose literal the query target names, or "".
std::string AskedLabel(const kr::SystemDescription &d, const ParsedQuery &q);

// "true" or "false" when both the label and the asked class are known,
// else "none".
std::string MatchValue(const std::string &label, const std::string &asked);

// First answer type whose conditions hold. Throws kNotFound.
const AnswerTemplate &SelectAnswerType(const Catalog &catalog, const AnswerContext &ctx);

struct Answer {
  std::string type;
  std::string text;
  // The filled slot values; the whole text for a slotless template.
  std::vector<std::string> required;
};

// Throws kTemplateFill naming the first slot without a value.
Answer Fill(const Catalog &catalog, const AnswerTemplate &t, const AnswerContext &ctx);

// Slot coverage: every required phrase appears in the answer. A slotless
// gold answer must be matched exactly.
bool Covers(const std::string &answer, const Answer &gold);

// Answer from a reasoning outcome, with the concluded label selecting the
// template.
Answer AnswerSymbolic(const Catalog &catalog, const AnswerContext &ctx);

struct AnswerExample {
  std::string query_key;
  std::string match;
  FeatureVector features;
  std::string label;
  std::string answer_type;
};

// Answer-type classifier over the query, the class and the features.
class AnswerModel {
 public:
  static constexpr const char *kQuery = "__query";
  static constexpr const char *kMatch = "__match";
  static constexpr const char *kClass = "__class";
  static constexpr const char *kUnknownClass = "unknown";

  // labels lists every class the model may be shown. Throws
  // kInvalidArgument on an empty set or an answer type not in the catalog.
  static AnswerModel Train(const std::vector<AnswerExample> &examples, const Catalog &catalog,
                           const FeatureSchema &schema, const std::vector<std::string> &labels);

  std::string Predict(const std::string &query_key, const std::string &match,
                      const FeatureVector &features, const std::string &label) const;
  double Accuracy(const std::vector<AnswerExample> &examples) const;

  const induction::DecisionTree &tree() const { return tree_; }
  std::string ToText() const { return tree_.ToText(); }
  static AnswerModel FromText(std::string_view text);

 private:
  FeatureVector Inputs(const std::string &query_key, const std::string &match,
                       const FeatureVector &features, const std::string &label) const;

  induction::DecisionTree tree_;
};

Answer AnswerFallback(const AnswerModel &model, const Catalog &catalog, const AnswerContext &ctx);

enum class Handler { kSymbolic, kFallback, kUnanswered };
const char *HandlerName(Handler h);

struct RoutingEntry {
  std::string question;
  Route route = Route::kSymbolic;
  Handler handler = Handler::kSymbolic;
  std::string answer_type;
};

struct PipelineResult {
  ParsedQuery query;
  Answer answer;
  std::string label;
  Route route = Route::kSymbolic;
  Handler handler = Handler::kSymbolic;
  std::vector<std::string> support;      // symbolic answers
  induction::PathExplanation path;       // fallback answers
};

// Question in, answer out: parse, gate on confidence, reason, and fall
// back to the tree and the answer model when reasoning gives no label.
// Without a classifier or model an unlabelled case is answered from the
// catalog with the class unknown.
class Pipeline {
 public:
  Pipeline(Catalog catalog, kr::Reasoner reasoner,
           std::optional<induction::DecisionTree> classifier = std::nullopt,
           std::optional<AnswerModel> model = std::nullopt, double tau = 0.0);

  PipelineResult Ask(std::string_view question, const Extraction &extraction,
                     const Attributes &attributes = {});

  const Catalog &catalog() const { return catalog_; }
  const std::vector<RoutingEntry> &log() const { return log_; }

 private:
  Catalog catalog_;
  kr::Reasoner reasoner_;
  std::optional<induction::DecisionTree> classifier_;
  std::optional<AnswerModel> model_;
  double tau_;
  std::vector<RoutingEntry> log_;
  std::map<FeatureVector, kr::ClassOutcome> memo_;
};

// A question about one scene with its gold answer.
struct QaItem {
  size_t scene = 0;
  std::string question;
  Answer gold;
};

// Draws per_scene catalog questions for each scene and answers them from
// the true features and label. {label} slots name the true class half the
// time and a random one from labels otherwise; {q:x} slots read scene
// attribute x, and templates whose attributes are missing are skipped.
std::vector<QaItem> MakeQaItems(const Catalog &catalog, const kr::SystemDescription &d,
                                const std::vector<SceneRecord> &scenes,
                                const FeatureProvider &provider,
                                const std::vector<std::string> &labels, int per_scene,
                                uint64_t seed);

// Training row for the answer model: the item's question and gold type,
// with the features and class the model will actually be shown.
AnswerExample ExampleFor(const QaItem &item, const Catalog &catalog,
                         const kr::SystemDescription &d, const FeatureVector &features,
                         const std::string &label);

// question,scene,answer_type,answer
std::string QaItemsCsv(const std::vector<QaItem> &items, const std::vector<SceneRecord> &scenes);

}  // namespace aspire::qa

#endif  // ASPIRE_QA_ANSWER_H_
