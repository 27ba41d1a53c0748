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

#include "qa/catalog.h"

#include <regex>
#include <set>

#include "common/error.h"
#include "common/text.h"
#include "logic/parser.h"

namespace aspire::qa {
namespace {

std::string Normalize(std::string_view text) { return Join(SplitWhitespace(Lower(text)), " "); }

QueryKind KindFromName(const std::string &name, int line) {
  if (name == "classification") return QueryKind::kClassification;
  if (name == "explanation") return QueryKind::kExplanation;
  if (name == "attribute") return QueryKind::kAttribute;
  Fail(ErrorCode::kParse, "catalog line " + std::to_string(line) + ": unknown entry " + name);
}

// Pattern to regex. Captures come back in slot order.
std::regex Compile(const std::string &pattern, std::vector<std::string> *slots) {
  static const std::regex kSlot(R"(\{(label|q:[a-z_]+)\})");
  std::string norm = Normalize(pattern);
  std::string re;
  size_t pos = 0;
  for (auto it = std::sregex_iterator(norm.begin(), norm.end(), kSlot); it != std::sregex_iterator();
       ++it) {
    for (char c : norm.substr(pos, it->position() - pos)) {
      if (std::string_view("\\^$.|?*+()[]{}").find(c) != std::string_view::npos) re += '\\';
      re += c;
    }
    std::string name = (*it)[1];
    slots->push_back(name);
    re += name == "label" ? "([a-z0-9_ ]+?)" : "([a-z0-9_]+)";
    pos = it->position() + it->length();
  }
  for (char c : norm.substr(pos)) {
    if (std::string_view("\\^$.|?*+()[]{}").find(c) != std::string_view::npos) re += '\\';
    re += c;
  }
  return std::regex(re);
}

}  // namespace

const char *QueryKindName(QueryKind k) {
  switch (k) {
    case QueryKind::kClassification: return "classification";
    case QueryKind::kExplanation: return "explanation";
    case QueryKind::kAttribute: return "attribute";
  }
  return "?";
}

std::string QuestionTemplate::Key() const {
  return std::string(QueryKindName(kind)) + ":" + (topic.empty() ? target : topic);
}

Catalog Catalog::FromText(std::string_view text) {
  Catalog c;
  int line_no = 0;
  for (const std::string &raw : Split(text, '\n')) {
    ++line_no;
    std::string line = Trim(raw);
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> parts;
    for (const std::string &p : Split(line, '|')) parts.push_back(Trim(p));
    auto bad = [&](const std::string &why) {
      Fail(ErrorCode::kParse, "catalog line " + std::to_string(line_no) + ": " + why);
    };
    std::vector<std::string> head = SplitWhitespace(parts[0]);
    if (head.empty()) bad("empty entry");
    if (head[0] == "ATYPE") {
      if (head.size() != 2 || parts.size() != 3) bad("expected ATYPE id | skeleton | conditions");
      AnswerTemplate a{head[1], parts[1], {}};
      for (const std::string &cond : Split(parts[2], ',')) {
        if (Trim(cond).empty()) continue;
        auto kv = Split(cond, '=');
        if (kv.size() != 2) bad("malformed condition " + cond);
        a.conditions.push_back({Trim(kv[0]), Trim(kv[1])});
      }
      if (c.HasAnswer(a.id)) bad("duplicate answer type " + a.id);
      c.answers_.push_back(std::move(a));
    } else if (head[0] == "PHRASE") {
      if (head.size() != 3 || parts.size() != 2) bad("expected PHRASE feature value | text");
      c.phrases_[head[1] + " " + head[2]] = parts[1];
    } else {
      if (head.size() != 1 || parts.size() < 3 || parts.size() > 4) {
        bad("expected kind | pattern | target [| topic]");
      }
      QuestionTemplate q{KindFromName(head[0], line_no), parts[1], parts[2],
                         parts.size() == 4 ? parts[3] : ""};
      Matcher m;
      m.re = std::make_shared<const std::regex>(Compile(q.pattern, &m.slots));
      c.matchers_.push_back(std::move(m));
      try {
        logic::ParseLiteral(ReplaceAll(q.target, "{label}", "x"));
      } catch (const Error &e) {
        bad("bad target " + q.target);
      }
      c.questions_.push_back(std::move(q));
    }
  }
  if (c.questions_.empty() || c.answers_.empty()) {
    Fail(ErrorCode::kParse, "catalog needs at least one question and one answer type");
  }
  return c;
}

Catalog Catalog::Load(const std::string &path) { return FromText(ReadFile(path)); }

const AnswerTemplate &Catalog::Answer(const std::string &id) const {
  for (const auto &a : answers_) {
    if (a.id == id) return a;
  }
  Fail(ErrorCode::kNotFound, "unknown answer type " + id);
}

bool Catalog::HasAnswer(const std::string &id) const {
  for (const auto &a : answers_) {
    if (a.id == id) return true;
  }
  return false;
}

std::vector<std::string> Catalog::QueryKeys() const {
  std::set<std::string> keys;
  for (const auto &q : questions_) keys.insert(q.Key());
  return {keys.begin(), keys.end()};
}

void Catalog::AddClassTable(const std::string &name, std::map<std::string, std::string> table) {
  tables_[name] = std::move(table);
}

std::string Catalog::Phrase(const std::string &feature, const std::string &value) const {
  auto it = phrases_.find(feature + " " + value);
  if (it != phrases_.end()) return it->second;
  std::string spoken = ReplaceAll(value, "_", " ");
  it = phrases_.find(feature + " *");
  if (it != phrases_.end()) return ReplaceAll(it->second, "{v}", spoken);
  return spoken;
}

std::string Catalog::ClassText(const std::string &table, const std::string &label) const {
  if (table == "label") return ReplaceAll(label, "_", " ");
  auto t = tables_.find(table);
  if (t == tables_.end()) Fail(ErrorCode::kTemplateFill, "no class table for slot {c:" + table + "}");
  auto it = t->second.find(label);
  if (it == t->second.end()) {
    Fail(ErrorCode::kTemplateFill, "slot {c:" + table + "} has no entry for " + label);
  }
  return it->second;
}

ParsedQuery ParseQuestion(std::string_view text, const Catalog &catalog) {
  std::string norm = Normalize(text);
  if (norm.empty()) Fail(ErrorCode::kUnparseableQuestion, "empty question");
  for (size_t i = 0; i < catalog.questions_.size(); ++i) {
    const QuestionTemplate &t = catalog.questions_[i];
    const std::vector<std::string> &names = catalog.matchers_[i].slots;
    std::smatch m;
    if (!std::regex_match(norm, m, *catalog.matchers_[i].re)) continue;
    ParsedQuery q;
    q.kind = t.kind;
    q.topic = t.topic;
    q.key = t.Key();
    q.raw = std::string(text);
    for (size_t i = 0; i < names.size(); ++i) {
      if (names[i] == "label") {
        q.label = ReplaceAll(m[i + 1].str(), " ", "_");
      } else {
        q.slots[names[i].substr(2)] = m[i + 1].str();
      }
    }
    q.target = logic::ParseLiteral(ReplaceAll(t.target, "{label}", q.label.empty() ? "x" : q.label));
    return q;
  }
  Fail(ErrorCode::kUnparseableQuestion, "no question template matches \"" + std::string(text) + "\"");
}

std::string Instantiate(const QuestionTemplate &t, const std::string &label,
                        const std::map<std::string, std::string> &slots) {
  std::string out = ReplaceAll(t.pattern, "{label}", ReplaceAll(label, "_", " "));
  for (const auto &[k, v] : slots) out = ReplaceAll(out, "{q:" + k + "}", v);
  return out;
}

}  // namespace aspire::qa
