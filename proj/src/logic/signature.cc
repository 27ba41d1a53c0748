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

#include "logic/signature.h"

#include <algorithm>
#include <functional>
#include <set>

#include "common/error.h"
#include "logic/parser.h"

namespace aspire::logic {

Signature::Signature(const Program &program) : program_(program) {
  for (const SortDecl &s : program.sorts) {
    if (!sorts_.emplace(s.name, &s).second) {
      Fail(ErrorCode::kSemantic, "sort " + s.name + " declared twice");
    }
  }
  for (const SortDecl &s : program.sorts) {
    switch (s.kind) {
      case SortDecl::Kind::kEnumerated: {
        if (s.members.empty()) {
          Fail(ErrorCode::kSemantic, "sort " + s.name + " has no members");
        }
        std::set<std::string> seen;
        for (const Term &m : s.members) {
          if (!seen.insert(ToString(m)).second) {
            Fail(ErrorCode::kSemantic, "duplicate sort member " + ToString(m) +
                                           " in sort " + s.name);
          }
        }
        break;
      }
      case SortDecl::Kind::kRange:
        if (s.upper < s.lower) {
          Fail(ErrorCode::kSemantic, "sort " + s.name + " has an empty range");
        }
        break;
      case SortDecl::Kind::kUnion:
        for (const SortItem &item : s.items) {
          if (!item.is_constructor && !sorts_.count(item.name)) {
            Fail(ErrorCode::kSemantic, "sort " + s.name +
                                           " refers to undeclared sort " +
                                           item.name);
          }
          for (const std::string &a : item.arg_sorts) {
            if (!sorts_.count(a)) {
              Fail(ErrorCode::kSemantic, "constructor " + item.name +
                                             " uses undeclared sort " + a);
            }
          }
        }
        break;
    }
  }
  // Sort definitions must be well founded.
  std::map<std::string, int> state;
  std::function<void(const std::string &)> visit = [&](const std::string &n) {
    int &st = state[n];
    if (st == 2) return;
    if (st == 1) Fail(ErrorCode::kSemantic, "sort " + n + " is defined cyclically");
    st = 1;
    const SortDecl *s = sorts_.at(n);
    for (const SortItem &item : s->items) {
      if (!item.is_constructor) visit(item.name);
      for (const std::string &a : item.arg_sorts) visit(a);
    }
    state[n] = 2;
  };
  for (const SortDecl &s : program.sorts) visit(s.name);
}

const SortDecl *Signature::sort(const std::string &name) const {
  auto it = sorts_.find(name);
  return it == sorts_.end() ? nullptr : it->second;
}

bool Signature::Fits(const Term &t, const std::string &sort_name) const {
  const SortDecl *s = sort(sort_name);
  if (s == nullptr) return false;
  if (t.kind == Term::Kind::kVariable) return true;
  switch (s->kind) {
    case SortDecl::Kind::kEnumerated:
      if (t.kind == Term::Kind::kCompound) return false;
      return std::find(s->members.begin(), s->members.end(), t) !=
             s->members.end();
    case SortDecl::Kind::kRange:
      return t.kind == Term::Kind::kInteger && t.value >= s->lower &&
             t.value <= s->upper;
    case SortDecl::Kind::kUnion:
      for (const SortItem &item : s->items) {
        if (!item.is_constructor) {
          if (Fits(t, item.name)) return true;
          continue;
        }
        if (t.kind != Term::Kind::kCompound || t.name != item.name ||
            t.args.size() != item.arg_sorts.size()) {
          continue;
        }
        bool ok = true;
        for (size_t i = 0; i < t.args.size() && ok; ++i) {
          ok = Fits(t.args[i], item.arg_sorts[i]);
        }
        if (ok) return true;
      }
      return false;
  }
  return false;
}

const SortItem *Signature::Constructor(const std::string &sort_name,
                                       const std::string &functor,
                                       size_t arity) const {
  const SortDecl *s = sort(sort_name);
  if (s == nullptr || s->kind != SortDecl::Kind::kUnion) return nullptr;
  for (const SortItem &item : s->items) {
    if (item.is_constructor) {
      if (item.name == functor && item.arg_sorts.size() == arity) return &item;
    } else if (const SortItem *found = Constructor(item.name, functor, arity)) {
      return found;
    }
  }
  return nullptr;
}

void Signature::VariableSorts(const Term &t, const std::string &sort_name,
                              std::vector<VarOccurrence> *out) const {
  if (t.kind == Term::Kind::kVariable) {
    out->push_back({t.name, sort_name, t.value});
    return;
  }
  if (t.kind != Term::Kind::kCompound) return;
  const SortItem *ctor = Constructor(sort_name, t.name, t.args.size());
  if (ctor == nullptr) return;
  for (size_t i = 0; i < t.args.size(); ++i) {
    VariableSorts(t.args[i], ctor->arg_sorts[i], out);
  }
}

namespace {

std::string Where(const std::vector<int> &lines, size_t rule) {
  if (rule < lines.size()) return "line " + std::to_string(lines[rule]) + ": ";
  return "rule " + std::to_string(rule) + ": ";
}

}  // namespace

void Validate(const Program &program, const std::vector<int> &rule_lines) {
  Signature sig(program);
  std::set<std::pair<std::string, size_t>> preds;
  for (const PredicateDecl &p : program.predicates) {
    if (!preds.insert({p.name, p.arg_sorts.size()}).second) {
      Fail(ErrorCode::kSemantic, "predicate " + p.name + "/" +
                                     std::to_string(p.arg_sorts.size()) +
                                     " declared twice");
    }
    for (const std::string &s : p.arg_sorts) {
      if (sig.sort(s) == nullptr) {
        Fail(ErrorCode::kSemantic,
             "predicate " + p.name + " uses undeclared sort " + s);
      }
    }
  }
  for (const std::string &name : program.shown) {
    bool found = false;
    for (const PredicateDecl &p : program.predicates) found |= p.name == name;
    if (!found) Fail(ErrorCode::kSemantic, "#show of undeclared predicate " + name);
  }

  for (size_t ri = 0; ri < program.rules.size(); ++ri) {
    const Rule &r = program.rules[ri];
    auto check_literal = [&](const Literal &l) {
      const PredicateDecl *d = program.FindPredicate(l.predicate, l.args.size());
      if (d == nullptr) {
        bool any = false;
        for (const PredicateDecl &p : program.predicates) any |= p.name == l.predicate;
        Fail(ErrorCode::kSemantic,
             Where(rule_lines, ri) +
                 (any ? "arity mismatch for predicate " + l.predicate
                      : "undeclared predicate " + l.predicate));
      }
      for (size_t i = 0; i < l.args.size(); ++i) {
        if (!sig.Fits(l.args[i], d->arg_sorts[i])) {
          Fail(ErrorCode::kSemantic,
               Where(rule_lines, ri) + "argument " + std::to_string(i + 1) +
                   " of " + l.predicate + ": " + ToString(l.args[i]) +
                   " is not in sort " + d->arg_sorts[i]);
        }
      }
    };
    std::vector<std::string> bound, used;
    if (r.head) {
      check_literal(*r.head);
      for (const Term &a : r.head->args) a.CollectVariables(&used);
    }
    for (const BodyElement &b : r.body) {
      switch (b.kind) {
        case BodyElement::Kind::kPositive:
          check_literal(b.literal);
          for (const Term &a : b.literal.args) a.CollectVariables(&bound);
          break;
        case BodyElement::Kind::kNegative:
          check_literal(b.literal);
          for (const Term &a : b.literal.args) a.CollectVariables(&used);
          break;
        case BodyElement::Kind::kComparison:
          b.lhs.CollectVariables(&used);
          b.rhs.CollectVariables(&used);
          break;
        case BodyElement::Kind::kSortAtom:
          if (sig.sort(b.sort) == nullptr) {
            Fail(ErrorCode::kSemantic,
                 Where(rule_lines, ri) + "undeclared sort " + b.sort);
          }
          if (!sig.Fits(b.lhs, b.sort)) {
            Fail(ErrorCode::kSemantic, Where(rule_lines, ri) + ToString(b.lhs) +
                                           " is not in sort " + b.sort);
          }
          b.lhs.CollectVariables(&bound);
          break;
      }
    }
    for (const std::string &v : used) {
      if (std::find(bound.begin(), bound.end(), v) == bound.end()) {
        Fail(ErrorCode::kSemantic, Where(rule_lines, ri) + "unsafe variable " +
                                       v + " in rule " + ToString(r));
      }
    }
  }
}

}  // namespace aspire::logic
