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

#include "kr/translate.h"

#include <sstream>

#include "common/error.h"
#include "logic/parser.h"

namespace aspire::kr {

using logic::BodyElement;
using logic::Literal;
using logic::Rule;
using logic::Term;

Literal AtStep(const SystemDescription &d, const Literal &l, const Term &step) {
  if (d.IsFluent(l.predicate)) {
    Literal out;
    out.negated = l.negated;
    out.predicate = "holds";
    out.args = {Term::Compound(l.predicate, l.args), step};
    return out;
  }
  if (d.IsAction(l.predicate)) {
    Literal out;
    out.negated = l.negated;
    out.predicate = "occurs";
    out.args = {Term::Compound(l.predicate, l.args), step};
    return out;
  }
  return l;
}

namespace {

std::string PredicateLine(const std::string &name, const std::vector<std::string> &sorts) {
  logic::PredicateDecl d{name, sorts};
  return logic::ToString(d);
}

bool MentionsFluent(const SystemDescription &d, const Rule &r) {
  if (r.head && d.IsFluent(r.head->predicate)) return true;
  for (const BodyElement &b : r.body) {
    if ((b.kind == BodyElement::Kind::kPositive || b.kind == BodyElement::Kind::kNegative) &&
        d.IsFluent(b.literal.predicate)) {
      return true;
    }
  }
  return false;
}

// Rewrites body literals at the given step term; appends the step binder.
std::vector<BodyElement> BodyAt(const SystemDescription &d, const std::vector<BodyElement> &body,
                                const Term &step) {
  std::vector<BodyElement> out;
  for (const BodyElement &b : body) {
    BodyElement c = b;
    if (b.kind == BodyElement::Kind::kPositive || b.kind == BodyElement::Kind::kNegative) {
      c.literal = AtStep(d, b.literal, step);
    }
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace

std::string TranslateText(const SystemDescription &d, const History &h, int horizon,
                          const TranslateOptions &options) {
  if (horizon < 0) Fail(ErrorCode::kInvalidArgument, "negative horizon");
  for (const Happened &e : h.happened) {
    // An action at step i needs step i+1 inside the horizon.
    if (e.step < 0 || e.step >= horizon) {
      Fail(ErrorCode::kInvalidArgument, "happened action at step " + std::to_string(e.step) +
                                            " is outside horizon " + std::to_string(horizon));
    }
  }
  for (const Observation &o : h.observations) {
    if (o.step < 0 || o.step > horizon) {
      Fail(ErrorCode::kInvalidArgument, "observation at step " + std::to_string(o.step) +
                                            " is outside horizon " + std::to_string(horizon));
    }
    if (!d.IsFluent(o.fluent.predicate) || o.fluent.negated) {
      Fail(ErrorCode::kSemantic, "observation of non-fluent " + logic::ToString(o.fluent));
    }
  }

  const logic::SourceUnit &u = d.source();
  logic::Program view = d.ViewProgram();
  bool has_fluents = view.FindSort("fluent") != nullptr;
  bool has_actions = view.FindSort("action") != nullptr;
  bool has_basic = view.FindSort("basic_fluent") != nullptr;
  bool has_defined = view.FindSort("defined_fluent") != nullptr;

  std::ostringstream out;
  out << "% declarations\n";
  for (const logic::SortDecl &s : view.sorts) {
    if (s.name == "step") {
      out << "#sort step = 0.." << horizon << ".\n";
    } else {
      out << logic::ToString(s) << "\n";
    }
  }
  for (const logic::PredicateDecl &p : u.program.predicates) out << logic::ToString(p) << "\n";
  for (const auto &a : u.attributes) {
    if (a.kind == logic::AttributeDirective::Kind::kStatic) {
      out << logic::ToString(a.decl) << "\n";
    }
  }
  if (has_fluents) {
    out << PredicateLine("holds", {"fluent", "step"}) << "\n";
    out << PredicateLine("obs", {"fluent", "boolean", "step"}) << "\n";
  }
  if (has_actions) {
    out << PredicateLine("occurs", {"action", "step"}) << "\n";
    out << PredicateLine("hpd", {"action", "step"}) << "\n";
  }
  for (const std::string &s : u.program.shown) {
    // Fluent and action display hints map onto holds/occurs.
    if (d.IsFluent(s)) continue;
    if (d.IsAction(s)) continue;
    out << "#show " << s << ".\n";
  }
  bool show_holds = false, show_occurs = false;
  for (const std::string &s : u.program.shown) {
    show_holds = show_holds || d.IsFluent(s);
    show_occurs = show_occurs || d.IsAction(s);
  }
  if (show_holds && has_fluents) out << "#show holds.\n";
  if (show_occurs && has_actions) out << "#show occurs.\n";

  out << "% rules\n";
  if (!options.prelude_rules.empty()) out << options.prelude_rules;

  Term step_var = Term::Variable(kStepVar);
  Term next_var = Term::Variable(kStepVar, 1);
  for (const Axiom &ax : d.Axioms()) {
    const Rule &r = ax.rule;
    Rule t;
    t.is_cr = r.is_cr;
    switch (ax.kind) {
      case AxiomKind::kRaw:
        t = r;
        break;
      case AxiomKind::kCausalLaw: {
        // Action first so that its occurrence binds the step.
        std::vector<BodyElement> rest;
        for (const BodyElement &b : r.body) {
          if (b.kind == BodyElement::Kind::kPositive && d.IsAction(b.literal.predicate)) {
            t.body.push_back(BodyElement::Positive(AtStep(d, b.literal, step_var)));
          } else {
            rest.push_back(b);
          }
        }
        for (BodyElement &b : BodyAt(d, rest, step_var)) t.body.push_back(std::move(b));
        t.head = AtStep(d, *r.head, next_var);
        break;
      }
      case AxiomKind::kExecutability:
      case AxiomKind::kStateConstraint:
        if (!MentionsFluent(d, r) && ax.kind == AxiomKind::kStateConstraint) {
          t = r;
          break;
        }
        t.body = BodyAt(d, r.body, step_var);
        if (ax.kind == AxiomKind::kStateConstraint) {
          t.body.push_back(BodyElement::SortAtom("step", step_var));
        }
        if (r.head) t.head = AtStep(d, *r.head, step_var);
        break;
    }
    out << logic::ToString(t) << "\n";
  }

  if (has_basic) {
    out << "% inertia\n";
    out << "holds(F, I+1) :- #basic_fluent(F), holds(F, I), not -holds(F, I+1).\n";
    out << "-holds(F, I+1) :- #basic_fluent(F), -holds(F, I), not holds(F, I+1).\n";
  }
  if (has_defined) {
    out << "% closed world\n";
    out << "-holds(F, I) :- #defined_fluent(F), #step(I), not holds(F, I).\n";
  }
  if (has_actions) {
    out << "-occurs(A, I) :- #action(A), #step(I), not occurs(A, I).\n";
    out << "occurs(A, I) :- hpd(A, I).\n";
  }
  if (has_fluents) {
    out << "% reality checks\n";
    out << ":- obs(F, true, I), -holds(F, I).\n";
    out << ":- obs(F, false, I), holds(F, I).\n";
    out << "holds(F, 0) :- obs(F, true, 0).\n";
    out << "-holds(F, 0) :- obs(F, false, 0).\n";
  }
  if (!u.defaults.empty()) out << "% defaults\n";
  Term zero = Term::Integer(0);
  for (const auto &df : u.defaults) {
    Rule t;
    t.head = AtStep(d, df.fluent, zero);
    t.body = BodyAt(d, df.condition, zero);
    t.body.push_back(BodyElement::Negative(AtStep(d, df.exception, zero)));
    out << logic::ToString(t) << "\n";
  }

  if (!h.facts.empty() || !h.observations.empty() || !h.happened.empty()) {
    out << "% history\n";
  }
  for (const Literal &f : h.facts) {
    if (!f.IsGround()) Fail(ErrorCode::kSemantic, "non-ground fact " + logic::ToString(f));
    out << logic::ToString(AtStep(d, f, zero)) << ".\n";
  }
  for (const Observation &o : h.observations) {
    out << "obs(" << logic::ToString(o.fluent) << ", " << (o.value ? "true" : "false")
        << ", " << o.step << ").\n";
  }
  for (const Happened &e : h.happened) {
    out << "hpd(" << logic::ToString(e.action) << ", " << e.step << ").\n";
  }
  if (!options.extra_rules.empty()) out << options.extra_rules;
  return out.str();
}

logic::Program Translate(const SystemDescription &d, const History &h, int horizon,
                         const TranslateOptions &options) {
  return logic::Parse(TranslateText(d, h, horizon, options));
}

}  // namespace aspire::kr
