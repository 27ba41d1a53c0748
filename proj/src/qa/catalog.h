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

#ifndef ASPIRE_QA_CATALOG_H_
#define ASPIRE_QA_CATALOG_H_

#include <map>
#include <memory>
#include <regex>
#include <string>
#include <string_view>
#include <vector>

#include "features/schema.h"
#include "logic/ast.h"

namespace aspire::qa {

enum class QueryKind { kClassification, kExplanation, kAttribute };
const char *QueryKindName(QueryKind k);

// One question form. Pattern slots: {label} matches a class label written
// with spaces or underscores, {q:name} matches one word. The target may
// mention {label}.
struct QuestionTemplate {
  QueryKind kind = QueryKind::kClassification;
  std::string pattern;
  std::string target;
  std::string topic;

  // kind:topic, with the target text standing in for a missing topic.
  std::string Key() const;
};

// One answer form. Skeleton slots:
//   {f:feature}  phrase for the feature's value
//   {c:table}    per-class text ("label" is built in)
//   {q:name}     word captured from the question
//   {a:attr}     scene attribute
// Conditions are key=value pairs over kind, topic, class, known, match and
// feature names; the first answer type whose conditions all hold is used.
struct AnswerTemplate {
  std::string id;
  std::string skeleton;
  std::vector<std::pair<std::string, std::string>> conditions;
};

struct ParsedQuery {
  QueryKind kind = QueryKind::kClassification;
  logic::Literal target;
  std::string topic;
  std::string key;
  std::string raw;
  std::string label;                         // from a {label} slot
  std::map<std::string, std::string> slots;  // from {q:*} slots
};

class Catalog;
ParsedQuery ParseQuestion(std::string_view text, const Catalog &catalog);

// Catalog text, one entry per line ('#' comments):
//   classification | is this structure stable? | stable(S)
//   attribute | what is the sign's message? | sign_type(S, X) | message
//   ATYPE yes | yes | kind=classification, match=true
//   PHRASE num_blocks 5 | five blocks
//   PHRASE primary_symbol * | a {v} symbol
class Catalog {
 public:
  static Catalog FromText(std::string_view text);
  static Catalog Load(const std::string &path);

  const std::vector<QuestionTemplate> &questions() const { return questions_; }
  const std::vector<AnswerTemplate> &answers() const { return answers_; }
  const AnswerTemplate &Answer(const std::string &id) const;
  bool HasAnswer(const std::string &id) const;
  // Sorted, distinct query keys.
  std::vector<std::string> QueryKeys() const;

  // Adds a per-class text table for {c:name} slots.
  void AddClassTable(const std::string &name, std::map<std::string, std::string> table);

  // Surface text for one feature value.
  std::string Phrase(const std::string &feature, const std::string &value) const;
  // Text for a class in a table. Throws kTemplateFill when absent.
  std::string ClassText(const std::string &table, const std::string &label) const;

 private:
  friend ParsedQuery ParseQuestion(std::string_view text, const Catalog &catalog);
  struct Matcher {
    std::shared_ptr<const std::regex> re;
    std::vector<std::string> slots;
  };

  std::vector<QuestionTemplate> questions_;
  std::vector<Matcher> matchers_;
  std::vector<AnswerTemplate> answers_;
  std::map<std::string, std::string> phrases_;
  std::map<std::string, std::map<std::string, std::string>> tables_;
};

// First template, in catalog order, whose pattern matches the normalized
// text. Throws kUnparseableQuestion otherwise.
ParsedQuery ParseQuestion(std::string_view text, const Catalog &catalog);

// The question text of a template with its slots filled.
std::string Instantiate(const QuestionTemplate &t, const std::string &label,
                        const std::map<std::string, std::string> &slots);

}  // namespace aspire::qa

#endif  // ASPIRE_QA_CATALOG_H_
