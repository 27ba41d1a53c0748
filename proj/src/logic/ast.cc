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

#include "logic/ast.h"

#include <algorithm>
#include <sstream>

namespace aspire::logic {

Term Term::Constant(std::string name) {
  Term t;
  t.kind = Kind::kConstant;
  t.name = std::move(name);
  return t;
}

Term Term::Variable(std::string name, long offset) {
  Term t;
  t.kind = Kind::kVariable;
  t.name = std::move(name);
  t.value = offset;
  return t;
}

Term Term::Integer(long value) {
  Term t;
  t.kind = Kind::kInteger;
  t.value = value;
  return t;
}

Term Term::Compound(std::string functor, std::vector<Term> args) {
  Term t;
  t.kind = Kind::kCompound;
  t.name = std::move(functor);
  t.args = std::move(args);
  return t;
}

bool Term::IsGround() const {
  if (kind == Kind::kVariable) return false;
  for (const Term &a : args) {
    if (!a.IsGround()) return false;
  }
  return true;
}

void Term::CollectVariables(std::vector<std::string> *out) const {
  if (kind == Kind::kVariable) {
    if (std::find(out->begin(), out->end(), name) == out->end()) {
      out->push_back(name);
    }
    return;
  }
  for (const Term &a : args) a.CollectVariables(out);
}

bool Literal::IsGround() const {
  for (const Term &a : args) {
    if (!a.IsGround()) return false;
  }
  return true;
}

Literal Literal::Complement() const {
  Literal l = *this;
  l.negated = !negated;
  return l;
}

const char *CompareOpText(CompareOp op) {
  switch (op) {
    case CompareOp::kEq: return "=";
    case CompareOp::kNe: return "!=";
    case CompareOp::kLt: return "<";
    case CompareOp::kLe: return "<=";
    case CompareOp::kGt: return ">";
    case CompareOp::kGe: return ">=";
  }
  return "?";
}

BodyElement BodyElement::Positive(Literal l) {
  BodyElement b;
  b.kind = Kind::kPositive;
  b.literal = std::move(l);
  return b;
}

BodyElement BodyElement::Negative(Literal l) {
  BodyElement b;
  b.kind = Kind::kNegative;
  b.literal = std::move(l);
  return b;
}

BodyElement BodyElement::Comparison(Term lhs, CompareOp op, Term rhs) {
  BodyElement b;
  b.kind = Kind::kComparison;
  b.lhs = std::move(lhs);
  b.op = op;
  b.rhs = std::move(rhs);
  return b;
}

BodyElement BodyElement::SortAtom(std::string sort, Term term) {
  BodyElement b;
  b.kind = Kind::kSortAtom;
  b.sort = std::move(sort);
  b.lhs = std::move(term);
  return b;
}

const SortDecl *Program::FindSort(const std::string &name) const {
  for (const SortDecl &s : sorts) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

const PredicateDecl *Program::FindPredicate(const std::string &name,
                                            size_t arity) const {
  for (const PredicateDecl &p : predicates) {
    if (p.name == name && p.arg_sorts.size() == arity) return &p;
  }
  return nullptr;
}

std::string ToString(const Term &t) {
  switch (t.kind) {
    case Term::Kind::kConstant:
      return t.name;
    case Term::Kind::kInteger:
      return std::to_string(t.value);
    case Term::Kind::kVariable:
      if (t.value > 0) return t.name + "+" + std::to_string(t.value);
      if (t.value < 0) return t.name + "-" + std::to_string(-t.value);
      return t.name;
    case Term::Kind::kCompound: {
      std::string out = t.name + "(";
      for (size_t i = 0; i < t.args.size(); ++i) {
        if (i > 0) out += ", ";
        out += ToString(t.args[i]);
      }
      return out + ")";
    }
  }
  return "";
}

std::string ToString(const Literal &l) {
  std::string out = l.negated ? "-" : "";
  out += l.predicate;
  if (!l.args.empty()) {
    out += "(";
    for (size_t i = 0; i < l.args.size(); ++i) {
      if (i > 0) out += ", ";
      out += ToString(l.args[i]);
    }
    out += ")";
  }
  return out;
}

std::string ToString(const BodyElement &b) {
  switch (b.kind) {
    case BodyElement::Kind::kPositive:
      return ToString(b.literal);
    case BodyElement::Kind::kNegative:
      return "not " + ToString(b.literal);
    case BodyElement::Kind::kComparison:
      return ToString(b.lhs) + " " + CompareOpText(b.op) + " " +
             ToString(b.rhs);
    case BodyElement::Kind::kSortAtom:
      return "#" + b.sort + "(" + ToString(b.lhs) + ")";
  }
  return "";
}

std::string ToString(const Rule &r) {
  std::string out;
  if (r.head) out += ToString(*r.head);
  if (r.body.empty() && !r.is_cr) return out + ".";
  out += r.is_cr ? (r.head ? " :+" : ":+") : (r.head ? " :-" : ":-");
  for (size_t i = 0; i < r.body.size(); ++i) {
    out += i == 0 ? " " : ", ";
    out += ToString(r.body[i]);
  }
  return out + ".";
}

std::string ToString(const SortDecl &s) {
  std::string out = "#sort " + s.name + " = ";
  switch (s.kind) {
    case SortDecl::Kind::kEnumerated:
      out += "{";
      for (size_t i = 0; i < s.members.size(); ++i) {
        if (i > 0) out += ", ";
        out += ToString(s.members[i]);
      }
      out += "}";
      break;
    case SortDecl::Kind::kRange:
      out += std::to_string(s.lower) + ".." + std::to_string(s.upper);
      break;
    case SortDecl::Kind::kUnion:
      for (size_t i = 0; i < s.items.size(); ++i) {
        if (i > 0) out += " + ";
        out += s.items[i].name;
        if (s.items[i].is_constructor) {
          out += "(";
          for (size_t j = 0; j < s.items[i].arg_sorts.size(); ++j) {
            if (j > 0) out += ", ";
            out += s.items[i].arg_sorts[j];
          }
          out += ")";
        }
      }
      break;
  }
  return out + ".";
}

std::string ToString(const PredicateDecl &p) {
  std::string out = "#pred " + p.name;
  if (!p.arg_sorts.empty()) {
    out += "(";
    for (size_t i = 0; i < p.arg_sorts.size(); ++i) {
      if (i > 0) out += ", ";
      out += p.arg_sorts[i];
    }
    out += ")";
  }
  return out + ".";
}

std::string ToString(const Program &p) {
  std::ostringstream out;
  for (const SortDecl &s : p.sorts) out << ToString(s) << "\n";
  for (const PredicateDecl &d : p.predicates) out << ToString(d) << "\n";
  for (const std::string &name : p.shown) out << "#show " << name << ".\n";
  for (const Rule &r : p.rules) out << ToString(r) << "\n";
  return out.str();
}

}  // namespace aspire::logic
