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

#include "kr/reasoner.h"

#include <algorithm>
#include <cctype>
#include <set>

#include "common/error.h"
#include "kr/translate.h"
#include "logic/signature.h"

namespace aspire::kr {

using logic::AnswerSet;
using logic::GroundProgram;
using logic::Literal;
using logic::Term;

const char *EntailmentName(Entailment e) {
  switch (e) {
    case Entailment::kYes: return "yes";
    case Entailment::kNo: return "no";
    case Entailment::kUnknown: return "unknown";
  }
  return "unknown";
}

Reasoner::Reasoner(SystemDescription d, History h, int horizon)
    : d_(std::move(d)), h_(std::move(h)), horizon_(horizon) {
  base_ = Translate(d_, h_, horizon_);
}

namespace {

Term Instantiate(const Term &t, const Term &value) {
  if (t.kind == Term::Kind::kConstant && t.name == "*") return value;
  Term out = t;
  for (Term &a : out.args) a = Instantiate(a, value);
  return out;
}

}  // namespace

Term ValueTerm(const std::string &v) {
  bool digits = !v.empty() && std::all_of(v.begin(), v.end(), [](char c) {
    return std::isdigit(static_cast<unsigned char>(c));
  });
  return digits ? Term::Integer(std::stol(v)) : Term::Constant(v);
}

std::vector<Literal> FeatureLiterals(const SystemDescription &d, const std::string &name,
                                     const std::string &value) {
  const logic::FeatureDirective *match = nullptr;
  for (const auto &fd : d.source().features) {
    if (fd.feature != name) continue;
    if (fd.value == value) {
      match = &fd;
      break;
    }
    if (fd.value == "*" && match == nullptr) match = &fd;
  }
  if (match == nullptr) {
    Fail(ErrorCode::kInvalidArgument, "no #feature binding for " + name + " = " + value);
  }
  Term v = ValueTerm(value);
  std::vector<Literal> out;
  for (const Literal &l : match->literals) {
    Literal g = l;
    for (Term &a : g.args) a = Instantiate(a, v);
    out.push_back(std::move(g));
  }
  return out;
}

Literal ClassLiteral(const SystemDescription &d, const std::string &label) {
  for (const auto &c : d.source().classes) {
    if (c.label == label) return c.literal;
  }
  for (const auto &c : d.source().classes) {
    if (c.label != "*") continue;
    Literal l = c.literal;
    for (Term &a : l.args) a = Instantiate(a, ValueTerm(label));
    return l;
  }
  Fail(ErrorCode::kNotFound, "unknown class label " + label);
}

std::optional<std::pair<std::string, std::string>> FeatureOf(const SystemDescription &d,
                                                             const Literal &l) {
  for (const auto &fd : d.source().features) {
    if (fd.value != "*") {
      for (const Literal &p : fd.literals) {
        if (p == l) return std::make_pair(fd.feature, fd.value);
      }
      continue;
    }
    for (const Literal &p : fd.literals) {
      if (p.predicate != l.predicate || p.negated != l.negated || p.args.size() != l.args.size()) {
        continue;
      }
      std::string value;
      bool ok = true;
      for (size_t i = 0; i < p.args.size() && ok; ++i) {
        if (p.args[i].kind == Term::Kind::kConstant && p.args[i].name == "*") {
          value = logic::ToString(l.args[i]);
        } else {
          ok = p.args[i] == l.args[i];
        }
      }
      if (ok && !value.empty()) return std::make_pair(fd.feature, value);
    }
  }
  return std::nullopt;
}

std::vector<Literal> Reasoner::FeatureFacts(const FeatureVector &f,
                                            const ClassifyOptions &options) const {
  std::vector<Literal> out;
  for (const auto &[name, value] : f) {
    if (options.confidence != nullptr && options.confidence_threshold > 0.0) {
      auto it = options.confidence->find(name);
      if (it != options.confidence->end() && it->second < options.confidence_threshold) {
        continue;
      }
    }
    for (Literal &l : FeatureLiterals(d_, name, value)) out.push_back(std::move(l));
  }
  return out;
}

std::shared_ptr<const Beliefs> Reasoner::Solve(const std::vector<Literal> &facts) const {
  logic::Program p = base_;
  logic::Signature sig(p);
  for (const Literal &f : facts) {
    Literal l = AtStep(d_, f, Term::Integer(0));
    const logic::PredicateDecl *decl = p.FindPredicate(l.predicate, l.args.size());
    if (decl == nullptr || !l.IsGround()) {
      Fail(ErrorCode::kSemantic, "bad fact " + logic::ToString(f));
    }
    for (size_t i = 0; i < l.args.size(); ++i) {
      if (!sig.Fits(l.args[i], decl->arg_sorts[i])) {
        Fail(ErrorCode::kSemantic, "fact " + logic::ToString(f) + ": " +
                                       logic::ToString(l.args[i]) + " is not in sort " +
                                       decl->arg_sorts[i]);
      }
    }
    logic::Rule r;
    r.id = static_cast<int>(p.rules.size());
    r.head = l;
    p.rules.push_back(std::move(r));
  }
  auto beliefs = std::make_shared<Beliefs>();
  logic::GroundOptions opts;
  opts.simplify = true;
  beliefs->ground = logic::Ground(p, opts);
  beliefs->models = logic::CrSolve(beliefs->ground);
  return beliefs;
}

std::vector<std::pair<std::string, int>> Reasoner::Labels(const GroundProgram &g,
                                                          const AnswerSet &m) const {
  std::vector<std::pair<std::string, int>> out;
  for (const auto &c : d_.source().classes) {
    if (c.label != "*") {
      int a = g.Find(c.literal);
      if (a >= 0 && m.Contains(a)) out.push_back({c.label, a});
      continue;
    }
    // Wildcard: the argument at the '*' position names the class.
    for (int a : m.atoms) {
      const Literal &l = g.atom(a);
      if (l.predicate != c.literal.predicate || l.negated != c.literal.negated ||
          l.args.size() != c.literal.args.size()) {
        continue;
      }
      std::string label;
      bool ok = true;
      for (size_t i = 0; i < l.args.size() && ok; ++i) {
        const Term &pat = c.literal.args[i];
        if (pat.kind == Term::Kind::kConstant && pat.name == "*") {
          label = logic::ToString(l.args[i]);
        } else {
          ok = pat == l.args[i];
        }
      }
      if (ok) out.push_back({label, a});
    }
  }
  return out;
}

ClassOutcome Reasoner::Classify(const FeatureVector &f, const ClassifyOptions &options) const {
  ClassOutcome out;
  out.beliefs = Solve(FeatureFacts(f, options));
  const Beliefs &b = *out.beliefs;
  if (b.models.empty()) {
    out.inconsistent = true;
    return out;
  }
  std::string agreed;
  int atom = -1;
  for (size_t i = 0; i < b.models.size(); ++i) {
    auto labels = Labels(b.ground, b.models[i]);
    std::set<std::string> distinct;
    for (const auto &l : labels) distinct.insert(l.first);
    if (distinct.size() != 1) return out;
    if (i == 0) {
      agreed = labels[0].first;
      atom = labels[0].second;
    } else if (agreed != *distinct.begin()) {
      return out;
    }
  }
  out.label = agreed;
  out.class_atom = atom;
  out.support = ExtractSupport(b.ground, b.models[0], atom);
  return out;
}

Entailment Reasoner::Entails(const Literal &query, const std::vector<Literal> &facts) const {
  auto b = Solve(facts);
  if (b->models.empty()) return Entailment::kUnknown;
  Literal q = AtStep(d_, query, Term::Integer(0));
  int pos = b->ground.Find(q);
  int neg = b->ground.Find(q.Complement());
  auto all = [&](int atom) {
    if (atom < 0) return false;
    for (const AnswerSet &m : b->models) {
      if (!m.Contains(atom)) return false;
    }
    return true;
  };
  if (all(pos)) return Entailment::kYes;
  if (all(neg)) return Entailment::kNo;
  return Entailment::kUnknown;
}

std::vector<std::string> ExtractSupport(const GroundProgram &g, const AnswerSet &m,
                                        int conclusion) {
  if (conclusion < 0 || !m.Contains(conclusion)) {
    Fail(ErrorCode::kInvalidArgument, "conclusion is not in the answer set");
  }
  size_t n = g.num_atoms();
  std::vector<bool> in(n, false);
  for (int a : m.atoms) in[a] = true;
  std::set<int> applied(m.cr_applied.begin(), m.cr_applied.end());
  auto usable = [&](const logic::GroundRule &r) {
    if (r.is_cr && !applied.count(r.source)) return false;
    if (r.head < 0) return false;
    for (int q : r.neg) {
      if (in[q]) return false;
    }
    return true;
  };
  // Derivation level of each atom in the least model of the reduct.
  const int kUnset = -1;
  std::vector<int> level(n, kUnset);
  bool changed = true;
  for (int round = 0; changed; ++round) {
    changed = false;
    std::vector<int> fresh;
    for (const logic::GroundRule &r : g.rules()) {
      if (!usable(r) || level[r.head] != kUnset) continue;
      bool ok = true;
      for (int p : r.pos) ok = ok && level[p] != kUnset && level[p] < round;
      if (ok) fresh.push_back(r.head);
    }
    for (int a : fresh) {
      if (level[a] == kUnset) {
        level[a] = round;
        changed = true;
      }
    }
  }
  if (level[conclusion] == kUnset) {
    Fail(ErrorCode::kInternal, "conclusion has no derivation");
  }
  std::set<int> support;
  std::vector<bool> seen(n, false);
  std::vector<int> stack = {conclusion};
  seen[conclusion] = true;
  while (!stack.empty()) {
    int a = stack.back();
    stack.pop_back();
    for (const logic::GroundRule &r : g.rules()) {
      if (r.head != a || !usable(r)) continue;
      bool ok = true;
      for (int p : r.pos) ok = ok && level[p] != kUnset && level[p] < level[a];
      if (!ok) continue;
      for (int p : r.pos) {
        support.insert(p);
        if (!seen[p]) {
          seen[p] = true;
          stack.push_back(p);
        }
      }
      break;
    }
  }
  std::vector<std::string> out;
  for (int a : support) {
    if (g.shown(a)) out.push_back(g.text(a));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace aspire::kr
