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

#include "logic/ground.h"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <unordered_set>

#include "common/error.h"
#include "logic/parser.h"
#include "logic/signature.h"

namespace aspire::logic {

size_t GroundProgram::num_cr_rules() const {
  size_t n = 0;
  for (const GroundRule &r : rules_) n += r.is_cr;
  return n;
}

int GroundProgram::Find(const Literal &l) const {
  auto it = index_.find(ToString(l));
  return it == index_.end() ? -1 : it->second;
}

int GroundProgram::Find(std::string_view text) const {
  auto it = index_.find(std::string(text));
  if (it != index_.end()) return it->second;
  return Find(ParseLiteral(text));
}

int GroundProgram::AddAtom(const Literal &l, bool shown) {
  std::string key = ToString(l);
  auto it = index_.find(key);
  if (it != index_.end()) return it->second;
  int id = static_cast<int>(atoms_.size());
  atoms_.push_back(l);
  texts_.push_back(key);
  shown_.push_back(shown);
  complement_.push_back(-1);
  index_.emplace(key, id);
  auto comp = index_.find(ToString(l.Complement()));
  if (comp != index_.end()) {
    complement_[id] = comp->second;
    complement_[comp->second] = id;
  }
  return id;
}

void GroundProgram::AddRule(GroundRule r) { rules_.push_back(std::move(r)); }

std::string GroundProgram::ToText() const {
  std::ostringstream out;
  for (const GroundRule &r : rules_) {
    if (r.head >= 0) out << texts_[r.head];
    bool empty = r.pos.empty() && r.neg.empty();
    if (!empty || r.is_cr) out << (r.is_cr ? " :+" : (r.head >= 0 ? " :-" : ":-"));
    bool first = true;
    for (int a : r.pos) {
      out << (first ? " " : ", ") << texts_[a];
      first = false;
    }
    for (int a : r.neg) {
      out << (first ? " not " : ", not ") << texts_[a];
      first = false;
    }
    out << ".\n";
  }
  return out.str();
}

namespace {

class Grounder {
 public:
  Grounder(const Program &p, const GroundOptions &options)
      : program_(p), sig_(p), options_(options) {
    shown_all_ = p.shown.empty();
    shown_.insert(p.shown.begin(), p.shown.end());
  }

  const std::vector<Term> &Members(const std::string &sort) {
    auto it = members_.find(sort);
    if (it != members_.end()) return it->second;
    std::vector<Term> out;
    const SortDecl *s = sig_.sort(sort);
    switch (s->kind) {
      case SortDecl::Kind::kEnumerated:
        out = s->members;
        break;
      case SortDecl::Kind::kRange:
        for (long v = s->lower; v <= s->upper; ++v) out.push_back(Term::Integer(v));
        break;
      case SortDecl::Kind::kUnion:
        for (const SortItem &item : s->items) {
          if (!item.is_constructor) {
            const std::vector<Term> &sub = Members(item.name);
            out.insert(out.end(), sub.begin(), sub.end());
            continue;
          }
          std::vector<std::vector<Term>> tuples = {{}};
          for (const std::string &a : item.arg_sorts) {
            const std::vector<Term> sub = Members(a);
            std::vector<std::vector<Term>> next;
            for (const auto &prefix : tuples) {
              for (const Term &m : sub) {
                next.push_back(prefix);
                next.back().push_back(m);
              }
            }
            tuples = std::move(next);
          }
          for (auto &t : tuples) out.push_back(Term::Compound(item.name, std::move(t)));
        }
        break;
    }
    // Union members may repeat when items overlap; keep first occurrences.
    std::vector<Term> unique;
    std::unordered_set<std::string> seen;
    for (Term &t : out) {
      if (seen.insert(ToString(t)).second) unique.push_back(std::move(t));
    }
    auto &keys = member_keys_[sort];
    keys = std::move(seen);
    return members_[sort] = std::move(unique);
  }

  bool IsMember(const Term &t, const std::string &sort) {
    Members(sort);
    return member_keys_[sort].count(ToString(t)) > 0;
  }

  GroundProgram Run() {
    for (const Rule &r : program_.rules) GroundRuleInstances(r);
    if (options_.simplify) Simplify();
    return Emit();
  }

 private:
  struct Pending {
    std::optional<Literal> head;
    std::vector<Literal> pos, neg;
    int source;
    bool is_cr;
  };

  // Substitutes bound variables. Returns false when an offset is applied
  // to a non-integer binding.
  bool Substitute(const Term &t, const std::map<std::string, Term> &binding,
                  Term *out) {
    switch (t.kind) {
      case Term::Kind::kVariable: {
        const Term &v = binding.at(t.name);
        if (t.value == 0) {
          *out = v;
          return true;
        }
        if (v.kind != Term::Kind::kInteger) return false;
        *out = Term::Integer(v.value + t.value);
        return true;
      }
      case Term::Kind::kCompound: {
        Term c = Term::Compound(t.name, {});
        c.args.resize(t.args.size());
        for (size_t i = 0; i < t.args.size(); ++i) {
          if (!Substitute(t.args[i], binding, &c.args[i])) return false;
        }
        *out = std::move(c);
        return true;
      }
      default:
        *out = t;
        return true;
    }
  }

  bool SubstituteLiteral(const Literal &l, const std::map<std::string, Term> &b,
                         Literal *out) {
    const PredicateDecl *d = program_.FindPredicate(l.predicate, l.args.size());
    out->negated = l.negated;
    out->predicate = l.predicate;
    out->args.resize(l.args.size());
    for (size_t i = 0; i < l.args.size(); ++i) {
      if (!Substitute(l.args[i], b, &out->args[i])) return false;
      if (!IsMember(out->args[i], d->arg_sorts[i])) return false;
    }
    return true;
  }

  static bool Compare(const Term &a, CompareOp op, const Term &b) {
    int c;
    if (a.kind == Term::Kind::kInteger && b.kind == Term::Kind::kInteger) {
      c = a.value < b.value ? -1 : (a.value > b.value ? 1 : 0);
    } else {
      c = ToString(a).compare(ToString(b));
      c = c < 0 ? -1 : (c > 0 ? 1 : 0);
    }
    switch (op) {
      case CompareOp::kEq: return c == 0;
      case CompareOp::kNe: return c != 0;
      case CompareOp::kLt: return c < 0;
      case CompareOp::kLe: return c <= 0;
      case CompareOp::kGt: return c > 0;
      case CompareOp::kGe: return c >= 0;
    }
    return false;
  }

  void GroundRuleInstances(const Rule &r) {
    // Variable order: first occurrence in the body, then the head.
    std::vector<std::string> vars;
    for (const BodyElement &b : r.body) {
      if (b.kind == BodyElement::Kind::kComparison) {
        b.lhs.CollectVariables(&vars);
        b.rhs.CollectVariables(&vars);
      } else if (b.kind == BodyElement::Kind::kSortAtom) {
        b.lhs.CollectVariables(&vars);
      } else {
        for (const Term &a : b.literal.args) a.CollectVariables(&vars);
      }
    }
    if (r.head) {
      for (const Term &a : r.head->args) a.CollectVariables(&vars);
    }

    // Binding domain per variable from its first binding occurrence,
    // preferring one without an offset.
    std::map<std::string, VarOccurrence> binder;
    for (const BodyElement &b : r.body) {
      std::vector<VarOccurrence> occ;
      if (b.kind == BodyElement::Kind::kPositive) {
        const PredicateDecl *d =
            program_.FindPredicate(b.literal.predicate, b.literal.args.size());
        for (size_t i = 0; i < b.literal.args.size(); ++i) {
          sig_.VariableSorts(b.literal.args[i], d->arg_sorts[i], &occ);
        }
      } else if (b.kind == BodyElement::Kind::kSortAtom) {
        sig_.VariableSorts(b.lhs, b.sort, &occ);
      }
      for (const VarOccurrence &o : occ) {
        auto it = binder.find(o.var);
        if (it == binder.end() || (it->second.offset != 0 && o.offset == 0)) {
          binder[o.var] = o;
        }
      }
    }
    std::vector<std::vector<Term>> domains;
    for (const std::string &v : vars) {
      auto it = binder.find(v);
      if (it == binder.end()) {
        Fail(ErrorCode::kSemantic, "unsafe variable " + v + " in " + ToString(r));
      }
      std::vector<Term> dom;
      for (const Term &m : Members(it->second.sort)) {
        if (it->second.offset == 0) {
          dom.push_back(m);
        } else if (m.kind == Term::Kind::kInteger) {
          dom.push_back(Term::Integer(m.value - it->second.offset));
        }
      }
      domains.push_back(std::move(dom));
    }

    // Each comparison is checked as soon as its last variable is bound.
    std::vector<std::vector<const BodyElement *>> checks(vars.size() + 1);
    for (const BodyElement &b : r.body) {
      if (b.kind != BodyElement::Kind::kComparison) continue;
      std::vector<std::string> cv;
      b.lhs.CollectVariables(&cv);
      b.rhs.CollectVariables(&cv);
      size_t level = 0;
      for (const std::string &v : cv) {
        size_t idx = std::find(vars.begin(), vars.end(), v) - vars.begin();
        level = std::max(level, idx + 1);
      }
      checks[level].push_back(&b);
    }

    std::map<std::string, Term> binding;
    auto passes = [&](size_t level) {
      for (const BodyElement *b : checks[level]) {
        Term lhs, rhs;
        if (!Substitute(b->lhs, binding, &lhs) || !Substitute(b->rhs, binding, &rhs)) {
          return false;
        }
        if (!Compare(lhs, b->op, rhs)) return false;
      }
      return true;
    };
    if (!passes(0)) return;

    std::vector<size_t> cursor(vars.size(), 0);
    size_t k = 0;
    if (vars.empty()) {
      Instantiate(r, binding);
      return;
    }
    // Iterative odometer over the variable domains.
    while (true) {
      if (cursor[k] < domains[k].size()) {
        binding[vars[k]] = domains[k][cursor[k]];
        ++cursor[k];
        if (!passes(k + 1)) continue;
        if (k + 1 == vars.size()) {
          Instantiate(r, binding);
        } else {
          ++k;
          cursor[k] = 0;
        }
      } else {
        binding.erase(vars[k]);
        if (k == 0) break;
        --k;
      }
    }
  }

  void Instantiate(const Rule &r, const std::map<std::string, Term> &binding) {
    Pending p;
    p.source = r.id;
    p.is_cr = r.is_cr;
    if (r.head) {
      Literal h;
      if (!SubstituteLiteral(*r.head, binding, &h)) return;
      p.head = std::move(h);
    }
    for (const BodyElement &b : r.body) {
      switch (b.kind) {
        case BodyElement::Kind::kPositive:
        case BodyElement::Kind::kNegative: {
          Literal l;
          if (!SubstituteLiteral(b.literal, binding, &l)) return;
          (b.kind == BodyElement::Kind::kPositive ? p.pos : p.neg).push_back(std::move(l));
          break;
        }
        case BodyElement::Kind::kSortAtom: {
          Term t;
          if (!Substitute(b.lhs, binding, &t) || !IsMember(t, b.sort)) return;
          break;
        }
        case BodyElement::Kind::kComparison:
          break;
      }
    }
    std::string key = p.head ? ToString(*p.head) : "";
    key += p.is_cr ? "|cr" + std::to_string(p.source) + "|" : "|";
    for (const Literal &l : p.pos) key += ToString(l) + ";";
    key += "|";
    for (const Literal &l : p.neg) key += ToString(l) + ";";
    if (!seen_rules_.insert(key).second) return;
    pending_.push_back(std::move(p));
    if (pending_.size() > options_.max_rules) {
      Fail(ErrorCode::kGroundLimit,
           "ground program exceeds " + std::to_string(options_.max_rules) +
               " rules");
    }
  }

  void Simplify() {
    // Least fixpoint of possibly-derivable literals, ignoring negation.
    std::unordered_set<std::string> possible;
    bool changed = true;
    std::vector<bool> fired(pending_.size(), false);
    while (changed) {
      changed = false;
      for (size_t i = 0; i < pending_.size(); ++i) {
        const Pending &p = pending_[i];
        if (fired[i] || !p.head) continue;
        bool ok = true;
        for (const Literal &l : p.pos) {
          if (!possible.count(ToString(l))) {
            ok = false;
            break;
          }
        }
        if (!ok) continue;
        fired[i] = true;
        if (possible.insert(ToString(*p.head)).second) changed = true;
      }
    }
    std::vector<Pending> kept;
    for (Pending &p : pending_) {
      bool ok = true;
      for (const Literal &l : p.pos) ok = ok && possible.count(ToString(l));
      if (!ok) continue;
      // Negated literals that can never hold are trivially satisfied.
      std::vector<Literal> neg;
      for (Literal &l : p.neg) {
        if (possible.count(ToString(l))) neg.push_back(std::move(l));
      }
      p.neg = std::move(neg);
      kept.push_back(std::move(p));
    }
    pending_ = std::move(kept);
  }

  GroundProgram Emit() {
    GroundProgram g;
    auto add = [&](const Literal &l) {
      return g.AddAtom(l, shown_all_ || shown_.count(l.predicate) > 0);
    };
    for (const Pending &p : pending_) {
      GroundRule r;
      r.source = p.source;
      r.is_cr = p.is_cr;
      if (p.head) r.head = add(*p.head);
      for (const Literal &l : p.pos) r.pos.push_back(add(l));
      for (const Literal &l : p.neg) r.neg.push_back(add(l));
      g.AddRule(std::move(r));
    }
    return g;
  }

  const Program &program_;
  Signature sig_;
  GroundOptions options_;
  bool shown_all_ = false;
  std::set<std::string> shown_;
  std::map<std::string, std::vector<Term>> members_;
  std::map<std::string, std::unordered_set<std::string>> member_keys_;
  std::vector<Pending> pending_;
  std::unordered_set<std::string> seen_rules_;
};

}  // namespace

GroundProgram Ground(const Program &p, const GroundOptions &options) {
  return Grounder(p, options).Run();
}

std::vector<Term> SortMembers(const Program &p, const std::string &sort) {
  Grounder g(p, GroundOptions{});
  if (Signature(p).sort(sort) == nullptr) {
    Fail(ErrorCode::kNotFound, "no sort named " + sort);
  }
  return g.Members(sort);
}

}  // namespace aspire::logic
