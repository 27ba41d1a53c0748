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

#include "kr/description.h"

#include <algorithm>
#include <set>
#include <sstream>

#include "common/error.h"

namespace aspire::kr {

using logic::BodyElement;
using logic::Literal;
using logic::PredicateDecl;
using logic::Rule;
using logic::SortDecl;
using logic::SortItem;

bool IsReservedPredicate(const std::string &name) {
  return name == "holds" || name == "occurs" || name == "obs" || name == "hpd";
}

namespace {

bool IsReservedSort(const std::string &name) {
  return name == "step" || name == "boolean" || name == "fluent" ||
         name == "basic_fluent" || name == "defined_fluent" || name == "action";
}

std::string SortList(const PredicateDecl &d) {
  if (d.arg_sorts.empty()) return d.name;
  std::string out = d.name + "(";
  for (size_t i = 0; i < d.arg_sorts.size(); ++i) {
    if (i > 0) out += ", ";
    out += d.arg_sorts[i];
  }
  return out + ")";
}

SortDecl UnionOf(const std::string &name, const std::vector<PredicateDecl> &decls) {
  SortDecl s;
  s.name = name;
  s.kind = SortDecl::Kind::kUnion;
  for (const PredicateDecl &d : decls) {
    SortItem item;
    item.name = d.name;
    item.is_constructor = !d.arg_sorts.empty();
    item.arg_sorts = d.arg_sorts;
    if (!item.is_constructor) {
      // 0-ary fluents and actions become members of a helper sort.
      item.is_constructor = false;
    }
    s.items.push_back(item);
  }
  return s;
}

}  // namespace

SystemDescription SystemDescription::FromText(std::string_view text) {
  SystemDescription d;
  d.unit_ = logic::ParseSource(text);
  d.Validate();
  return d;
}

SymbolKind SystemDescription::KindOf(const std::string &predicate) const {
  for (const auto &a : unit_.attributes) {
    if (a.decl.name != predicate) continue;
    switch (a.kind) {
      case logic::AttributeDirective::Kind::kStatic: return SymbolKind::kStatic;
      case logic::AttributeDirective::Kind::kBasicFluent: return SymbolKind::kBasicFluent;
      case logic::AttributeDirective::Kind::kDefinedFluent: return SymbolKind::kDefinedFluent;
    }
  }
  for (const auto &a : unit_.actions) {
    if (a.decl.name == predicate) return SymbolKind::kAction;
  }
  return SymbolKind::kPlain;
}

bool SystemDescription::IsFluent(const std::string &p) const {
  SymbolKind k = KindOf(p);
  return k == SymbolKind::kBasicFluent || k == SymbolKind::kDefinedFluent;
}

bool SystemDescription::IsAction(const std::string &p) const {
  return KindOf(p) == SymbolKind::kAction;
}

bool SystemDescription::HasTemporalPart() const {
  for (const auto &a : unit_.attributes) {
    if (a.kind != logic::AttributeDirective::Kind::kStatic) return true;
  }
  return !unit_.actions.empty();
}

AxiomKind SystemDescription::Classify(const Rule &r) const {
  bool action = false, raw = false;
  auto visit = [&](const Literal &l) {
    raw = raw || IsReservedPredicate(l.predicate);
    action = action || IsAction(l.predicate);
  };
  if (r.head) visit(*r.head);
  for (const BodyElement &b : r.body) {
    if (b.kind == BodyElement::Kind::kPositive || b.kind == BodyElement::Kind::kNegative) {
      visit(b.literal);
    }
  }
  if (raw) return AxiomKind::kRaw;
  if (action) return r.head ? AxiomKind::kCausalLaw : AxiomKind::kExecutability;
  return AxiomKind::kStateConstraint;
}

std::vector<Axiom> SystemDescription::Axioms() const {
  std::vector<Axiom> out;
  for (const Rule &r : unit_.program.rules) out.push_back({Classify(r), r});
  return out;
}

void SystemDescription::AddRule(const Rule &r) {
  Rule copy = r;
  copy.id = static_cast<int>(unit_.program.rules.size());
  unit_.program.rules.push_back(copy);
  unit_.rule_lines.push_back(0);
}

void SystemDescription::RemoveRule(size_t index) {
  auto &rules = unit_.program.rules;
  if (index >= rules.size()) Fail(ErrorCode::kInvalidArgument, "no rule at index");
  rules.erase(rules.begin() + index);
  if (index < unit_.rule_lines.size()) {
    unit_.rule_lines.erase(unit_.rule_lines.begin() + index);
  }
  for (size_t i = 0; i < rules.size(); ++i) rules[i].id = static_cast<int>(i);
}

void SystemDescription::SetRules(std::vector<Rule> rules) {
  unit_.program.rules = std::move(rules);
  unit_.rule_lines.assign(unit_.program.rules.size(), 0);
  for (size_t i = 0; i < unit_.program.rules.size(); ++i) {
    unit_.program.rules[i].id = static_cast<int>(i);
  }
}

logic::Program SystemDescription::ViewProgram() const {
  logic::Program p;
  p.sorts = unit_.program.sorts;
  std::vector<PredicateDecl> basic, defined, actions;
  for (const auto &a : unit_.attributes) {
    if (a.kind == logic::AttributeDirective::Kind::kBasicFluent) basic.push_back(a.decl);
    if (a.kind == logic::AttributeDirective::Kind::kDefinedFluent) defined.push_back(a.decl);
  }
  for (const auto &a : unit_.actions) actions.push_back(a.decl);

  SortDecl step;
  step.name = "step";
  step.kind = SortDecl::Kind::kRange;
  p.sorts.push_back(step);
  SortDecl boolean;
  boolean.name = "boolean";
  boolean.members = {logic::Term::Constant("true"), logic::Term::Constant("false")};
  p.sorts.push_back(boolean);
  std::vector<SortItem> fluent_items;
  if (!basic.empty()) {
    p.sorts.push_back(UnionOf("basic_fluent", basic));
    fluent_items.push_back({"basic_fluent", false, {}});
  }
  if (!defined.empty()) {
    p.sorts.push_back(UnionOf("defined_fluent", defined));
    fluent_items.push_back({"defined_fluent", false, {}});
  }
  if (!fluent_items.empty()) {
    SortDecl f;
    f.name = "fluent";
    f.kind = SortDecl::Kind::kUnion;
    f.items = fluent_items;
    p.sorts.push_back(f);
    p.predicates.push_back({"holds", {"fluent", "step"}});
    p.predicates.push_back({"obs", {"fluent", "boolean", "step"}});
  }
  if (!actions.empty()) {
    p.sorts.push_back(UnionOf("action", actions));
    p.predicates.push_back({"occurs", {"action", "step"}});
    p.predicates.push_back({"hpd", {"action", "step"}});
  }
  for (const PredicateDecl &d : unit_.program.predicates) p.predicates.push_back(d);
  for (const auto &a : unit_.attributes) p.predicates.push_back(a.decl);
  for (const auto &a : unit_.actions) p.predicates.push_back(a.decl);
  p.shown = unit_.program.shown;
  p.rules = unit_.program.rules;
  return p;
}

void SystemDescription::Validate() const {
  for (const SortDecl &s : unit_.program.sorts) {
    if (IsReservedSort(s.name)) {
      Fail(ErrorCode::kSemantic, "sort name " + s.name + " is reserved");
    }
  }
  std::set<std::string> names;
  auto declare = [&](const PredicateDecl &d) {
    if (IsReservedPredicate(d.name)) {
      Fail(ErrorCode::kSemantic, "predicate name " + d.name + " is reserved");
    }
    if (!names.insert(d.name).second) {
      Fail(ErrorCode::kSemantic, "symbol " + d.name + " declared twice");
    }
  };
  for (const auto &d : unit_.program.predicates) declare(d);
  for (const auto &a : unit_.attributes) declare(a.decl);
  for (const auto &a : unit_.actions) declare(a.decl);
  for (const auto &a : unit_.actions) {
    if (a.decl.arg_sorts.empty()) {
      Fail(ErrorCode::kSemantic, "action " + a.decl.name + " needs arguments");
    }
  }
  for (const auto &a : unit_.attributes) {
    if (a.kind != logic::AttributeDirective::Kind::kStatic && a.decl.arg_sorts.empty()) {
      Fail(ErrorCode::kSemantic, "fluent " + a.decl.name + " needs arguments");
    }
  }

  logic::Program view = ViewProgram();
  std::vector<int> lines = unit_.rule_lines;
  // Defaults are checked as the rule they denote.
  for (const auto &d : unit_.defaults) {
    if (!IsFluent(d.fluent.predicate)) {
      Fail(ErrorCode::kSemantic, "line " + std::to_string(d.line) +
                                     ": default on non-fluent " + d.fluent.predicate);
    }
    Rule r;
    r.head = d.fluent;
    r.body = d.condition;
    r.body.push_back(BodyElement::Negative(d.exception));
    r.id = static_cast<int>(view.rules.size());
    view.rules.push_back(r);
    lines.push_back(d.line);
  }
  for (const Rule &r : unit_.program.rules) {
    auto check_var = [&](const logic::Term &t) {
      std::vector<std::string> vars;
      t.CollectVariables(&vars);
      if (Classify(r) != AxiomKind::kRaw &&
          std::find(vars.begin(), vars.end(), kStepVar) != vars.end()) {
        Fail(ErrorCode::kSemantic, std::string("variable ") + kStepVar +
                                       " is reserved for steps in " + logic::ToString(r));
      }
    };
    if (r.head) for (const auto &t : r.head->args) check_var(t);
    for (const BodyElement &b : r.body) {
      for (const auto &t : b.literal.args) check_var(t);
      check_var(b.lhs);
      check_var(b.rhs);
    }
    AxiomKind k = Classify(r);
    if (k == AxiomKind::kCausalLaw) {
      int actions = 0;
      for (const BodyElement &b : r.body) {
        actions += b.kind == BodyElement::Kind::kPositive && IsAction(b.literal.predicate);
        if (b.kind == BodyElement::Kind::kNegative && IsAction(b.literal.predicate)) {
          Fail(ErrorCode::kSemantic, "negated action in " + logic::ToString(r));
        }
      }
      if (actions != 1 || !IsFluent(r.head->predicate)) {
        Fail(ErrorCode::kSemantic,
             "causal law needs a fluent head and exactly one action: " + logic::ToString(r));
      }
    }
  }
  logic::Validate(view, lines);

  auto check_pattern = [&](const Literal &l, int line) {
    for (const PredicateDecl &d : view.predicates) {
      if (d.name == l.predicate && d.arg_sorts.size() == l.args.size()) return;
    }
    Fail(ErrorCode::kSemantic, "line " + std::to_string(line) +
                                   ": undeclared predicate " + l.predicate);
  };
  for (const auto &f : unit_.features) {
    for (const Literal &l : f.literals) check_pattern(l, f.line);
  }
  for (const auto &c : unit_.classes) check_pattern(c.literal, c.line);
}

std::string ToText(const logic::AttributeDirective &a) {
  switch (a.kind) {
    case logic::AttributeDirective::Kind::kStatic:
      return "#static " + SortList(a.decl) + ".";
    case logic::AttributeDirective::Kind::kBasicFluent:
      return "#fluent basic " + SortList(a.decl) + ".";
    case logic::AttributeDirective::Kind::kDefinedFluent:
      return "#fluent defined " + SortList(a.decl) + ".";
  }
  return "";
}

std::string ToText(const logic::ActionDirective &a) {
  return "#action " + SortList(a.decl) + ".";
}

std::string ToText(const logic::DefaultDirective &d) {
  std::string out = "#default " + logic::ToString(d.fluent);
  for (size_t i = 0; i < d.condition.size(); ++i) {
    out += i == 0 ? " if " : ", ";
    out += logic::ToString(d.condition[i]);
  }
  return out + " unless " + logic::ToString(d.exception) + ".";
}

std::string ToText(const logic::FeatureDirective &f) {
  std::string out = "#feature " + f.feature + " = " + f.value + " : ";
  for (size_t i = 0; i < f.literals.size(); ++i) {
    if (i > 0) out += ", ";
    out += logic::ToString(f.literals[i]);
  }
  return out + ".";
}

std::string ToText(const logic::ClassDirective &c) {
  return "#class " + c.label + " : " + logic::ToString(c.literal) + ".";
}

std::string SystemDescription::ToText() const {
  std::ostringstream out;
  for (const SortDecl &s : unit_.program.sorts) out << logic::ToString(s) << "\n";
  for (const PredicateDecl &d : unit_.program.predicates) out << logic::ToString(d) << "\n";
  for (const auto &a : unit_.attributes) out << kr::ToText(a) << "\n";
  for (const auto &a : unit_.actions) out << kr::ToText(a) << "\n";
  for (const std::string &s : unit_.program.shown) out << "#show " << s << ".\n";
  for (const auto &f : unit_.features) out << kr::ToText(f) << "\n";
  for (const auto &c : unit_.classes) out << kr::ToText(c) << "\n";
  for (const auto &d : unit_.defaults) out << kr::ToText(d) << "\n";
  for (const Rule &r : unit_.program.rules) out << logic::ToString(r) << "\n";
  return out.str();
}

std::string History::ToText() const {
  std::ostringstream out;
  for (const Literal &f : facts) out << logic::ToString(f) << ".\n";
  for (const Observation &o : observations) {
    out << "obs(" << logic::ToString(o.fluent) << ", " << (o.value ? "true" : "false")
        << ", " << o.step << ").\n";
  }
  for (const Happened &h : happened) {
    out << "hpd(" << logic::ToString(h.action) << ", " << h.step << ").\n";
  }
  return out.str();
}

}  // namespace aspire::kr
