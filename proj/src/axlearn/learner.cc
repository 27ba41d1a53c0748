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

#include "axlearn/learner.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

#include "common/error.h"
#include "common/text.h"
#include "logic/ground.h"

namespace aspire::axlearn {

using induction::LabeledExample;
using logic::Literal;
using logic::Rule;
using logic::Term;

const std::string &ClassifierCache::Label(const FeatureVector &f) {
  auto it = memo_.find(f);
  if (it != memo_.end()) return it->second;
  kr::ClassOutcome out = reasoner_.Classify(f);
  return memo_.emplace(f, out.label).first->second;
}

double KbAccuracy(const kr::SystemDescription &d, const kr::History &h,
                  const std::vector<LabeledExample> &dataset) {
  if (dataset.empty()) return 0.0;
  kr::Reasoner reasoner(d, h);
  ClassifierCache cache(reasoner);
  size_t ok = 0;
  for (const LabeledExample &e : dataset) ok += cache.Label(e.features) == e.label;
  return static_cast<double>(ok) / dataset.size();
}

std::vector<LabeledExample> FindUncovered(const kr::SystemDescription &d, const kr::History &h,
                                          const std::vector<LabeledExample> &dataset) {
  kr::Reasoner reasoner(d, h);
  ClassifierCache cache(reasoner);
  std::vector<LabeledExample> out;
  for (const LabeledExample &e : dataset) {
    if (cache.Label(e.features) != e.label) out.push_back(e);
  }
  return out;
}

induction::DecisionTree TrainUncoveredTree(const kr::SystemDescription &d, const kr::History &h,
                                           const std::vector<LabeledExample> &dataset,
                                           const FeatureSchema &schema) {
  kr::Reasoner reasoner(d, h);
  ClassifierCache cache(reasoner);
  std::vector<LabeledExample> relabelled = dataset;
  for (LabeledExample &e : relabelled) {
    if (cache.Label(e.features) == e.label) e.label = kContrastLabel;
  }
  induction::TreeParams params;
  params.min_gain = 0.0;
  params.min_leaf_support = 1;
  return induction::TrainTree(relabelled, schema, params);
}

std::vector<CandidateAxiom> ExtractCandidates(const induction::DecisionTree &tree,
                                              size_t total, const LearnerParams &params) {
  double gate = params.leaf_support_fraction * static_cast<double>(total);
  std::vector<CandidateAxiom> out;
  for (const induction::LeafInfo &leaf : tree.Leaves()) {
    if (leaf.label == kContrastLabel) continue;
    if (leaf.purity + 1e-12 < params.purity_threshold) continue;
    if (leaf.support + 1e-9 < gate) continue;
    CandidateAxiom c;
    c.label = leaf.label;
    for (const auto &[f, v] : leaf.tests) c.body[f] = v;
    c.support = leaf.support;
    c.purity = leaf.purity;
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<CandidateAxiom> Generalize(const std::vector<CandidateAxiom> &candidates,
                                       const FeatureSchema &schema) {
  std::set<CandidateAxiom> cur;
  for (const CandidateAxiom &c : candidates) {
    auto it = cur.find(c);
    if (it == cur.end()) {
      cur.insert(c);
    } else if (c.support > it->support) {
      cur.erase(it);
      cur.insert(c);
    }
  }
  // Sibling merge to a fixpoint.
  bool changed = true;
  while (changed) {
    changed = false;
    for (const CandidateAxiom &a : cur) {
      for (const auto &[f, v] : a.body) {
        int fi = schema.IndexOf(f);
        if (fi < 0) continue;
        CandidateAxiom merged;
        merged.label = a.label;
        merged.body = a.body;
        merged.body.erase(f);
        std::vector<CandidateAxiom> family;
        for (const std::string &value : schema.at(fi).values) {
          CandidateAxiom probe{a.label, merged.body, 0, 1.0};
          probe.body[f] = value;
          auto it = cur.find(probe);
          if (it == cur.end()) break;
          family.push_back(*it);
        }
        if (family.size() != schema.at(fi).values.size()) continue;
        for (const CandidateAxiom &m : family) {
          merged.support += m.support;
          cur.erase(m);
        }
        cur.insert(merged);
        changed = true;
        break;
      }
      if (changed) break;
    }
  }
  // Drop over-specifications.
  std::vector<CandidateAxiom> out;
  for (const CandidateAxiom &c : cur) {
    bool subsumed = false;
    for (const CandidateAxiom &g : cur) {
      if (g.label != c.label || g.body.size() >= c.body.size()) continue;
      subsumed = std::all_of(g.body.begin(), g.body.end(), [&](const auto &kv) {
        auto it = c.body.find(kv.first);
        return it != c.body.end() && it->second == kv.second;
      });
      if (subsumed) break;
    }
    if (!subsumed) out.push_back(c);
  }
  return out;
}

namespace {

Term Replace(const Term &t, const std::string &constant, const Term &with) {
  if (t.kind == Term::Kind::kConstant && t.name == constant) return with;
  Term out = t;
  for (Term &a : out.args) a = Replace(a, constant, with);
  return out;
}

Literal Replace(Literal l, const std::string &constant, const Term &with) {
  for (Term &a : l.args) a = Replace(a, constant, with);
  return l;
}

bool Matches(const CandidateAxiom &c, const FeatureVector &f) {
  for (const auto &[name, value] : c.body) {
    auto it = f.find(name);
    if (it == f.end() || it->second != value) return false;
  }
  return true;
}

Term Substitute(const Term &t, const std::map<std::string, Term> &theta) {
  if (t.kind == Term::Kind::kVariable) {
    auto it = theta.find(t.name);
    if (it != theta.end() && t.value == 0) return it->second;
    return t;
  }
  Term out = t;
  for (Term &a : out.args) a = Substitute(a, theta);
  return out;
}

// Binds head variables so that head matches a class pattern. Returns the
// label on success.
std::optional<std::string> MatchClass(const Literal &head, const logic::ClassDirective &c,
                                      std::map<std::string, Term> &theta) {
  const Literal &pat = c.literal;
  if (head.predicate != pat.predicate || head.negated != pat.negated ||
      head.args.size() != pat.args.size()) {
    return std::nullopt;
  }
  std::string label = c.label;
  for (size_t i = 0; i < pat.args.size(); ++i) {
    const Term &p = pat.args[i];
    const Term &h = head.args[i];
    bool wild = p.kind == Term::Kind::kConstant && p.name == "*";
    if (wild) {
      if (!h.IsGround()) return std::nullopt;
      label = logic::ToString(h);
    } else if (h.kind == Term::Kind::kVariable) {
      if (h.value != 0) return std::nullopt;
      auto it = theta.find(h.name);
      if (it != theta.end() && !(it->second == p)) return std::nullopt;
      theta[h.name] = p;
    } else if (!(h == p)) {
      return std::nullopt;
    }
  }
  return label;
}

}  // namespace

Rule ToRule(const CandidateAxiom &c, const kr::SystemDescription &d, const FeatureSchema &schema) {
  Rule r;
  r.head = kr::ClassLiteral(d, c.label);
  for (const FeatureDef &f : schema.features()) {
    auto it = c.body.find(f.name);
    if (it == c.body.end()) continue;
    std::vector<Literal> lits = kr::FeatureLiterals(d, f.name, it->second);
    if (lits.empty()) continue;
    logic::BodyElement b;
    b.kind = logic::BodyElement::Kind::kPositive;
    b.literal = lits.front();
    r.body.push_back(std::move(b));
  }
  const Literal &head = *r.head;
  if (!r.body.empty() && !head.args.empty() && head.args[0].kind == Term::Kind::kConstant) {
    std::string object = head.args[0].name;
    std::string var = object;
    for (char &ch : var) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
    Term v = Term::Variable(var);
    r.head = Replace(head, object, v);
    for (logic::BodyElement &b : r.body) b.literal = Replace(b.literal, object, v);
  }
  return r;
}

Validation Validate(const CandidateAxiom &c, const kr::SystemDescription &d, const kr::History &h,
                    const std::vector<LabeledExample> &dataset, const FeatureSchema &schema,
                    const LearnerParams &params, Rng &rng) {
  Validation v;
  std::vector<size_t> relevant;
  for (size_t i = 0; i < dataset.size(); ++i) {
    if (Matches(c, dataset[i].features)) relevant.push_back(i);
  }
  if (relevant.empty()) {
    v.unvalidatable = true;
    return v;
  }
  size_t k = static_cast<size_t>(std::ceil(params.validation_fraction * dataset.size() - 1e-9));
  k = std::clamp<size_t>(k, 1, relevant.size());
  kr::SystemDescription augmented = d;
  augmented.AddRule(ToRule(c, d, schema));
  kr::Reasoner reasoner(augmented, h);
  ClassifierCache cache(reasoner);
  for (size_t pick : rng.Sample(relevant.size(), k)) {
    const LabeledExample &e = dataset[relevant[pick]];
    ++v.checked;
    if (cache.Label(e.features) != e.label) ++v.errors;
  }
  v.accepted = v.errors <= params.max_validation_errors;
  return v;
}

std::optional<AxiomRegion> RegionOf(const Rule &rule, const kr::SystemDescription &d) {
  if (!rule.head || rule.is_cr) return std::nullopt;
  std::map<std::string, Term> theta;
  std::optional<std::string> label;
  for (const auto &c : d.source().classes) {
    theta.clear();
    label = MatchClass(*rule.head, c, theta);
    if (label) break;
  }
  if (!label) return std::nullopt;

  logic::Program view = d.ViewProgram();
  logic::Program probe;
  probe.sorts = view.sorts;
  probe.predicates = view.predicates;
  logic::PredicateDecl marker;
  marker.name = "aspire_probe";
  probe.predicates.push_back(marker);
  Rule r;
  r.head = Literal{false, marker.name, {}};
  for (const logic::BodyElement &b : rule.body) {
    if (b.kind == logic::BodyElement::Kind::kNegative) return std::nullopt;
    logic::BodyElement s = b;
    for (Term &a : s.literal.args) a = Substitute(a, theta);
    s.lhs = Substitute(s.lhs, theta);
    s.rhs = Substitute(s.rhs, theta);
    r.body.push_back(std::move(s));
  }
  probe.rules.push_back(r);
  logic::GroundProgram g;
  try {
    g = logic::Ground(probe);
  } catch (const Error &) {
    return std::nullopt;
  }

  AxiomRegion region;
  region.label = *label;
  for (const logic::GroundRule &gr : g.rules()) {
    std::set<std::pair<std::string, std::string>> cell;
    for (int a : gr.pos) {
      auto t = kr::FeatureOf(d, g.atom(a));
      if (!t) return std::nullopt;
      cell.insert(*t);
    }
    region.cells.push_back(std::move(cell));
  }
  return region;
}

bool Refines(const AxiomRegion &a, const AxiomRegion &b) {
  if (a.label != b.label) return false;
  for (const auto &ca : a.cells) {
    bool inside = std::any_of(b.cells.begin(), b.cells.end(), [&](const auto &cb) {
      return std::includes(ca.begin(), ca.end(), cb.begin(), cb.end());
    });
    if (!inside) return false;
  }
  return true;
}

SanityResult SanityCheck(const std::vector<Rule> &validated, const kr::SystemDescription &d) {
  SanityResult out;
  std::vector<std::pair<int, AxiomRegion>> existing;
  for (size_t i = 0; i < d.rules().size(); ++i) {
    if (auto reg = RegionOf(d.rules()[i], d); reg && !reg->cells.empty()) {
      existing.push_back({static_cast<int>(i), *reg});
    }
  }
  std::vector<std::optional<AxiomRegion>> regions;
  for (const Rule &r : validated) regions.push_back(RegionOf(r, d));
  std::set<int> flagged;
  for (size_t i = 0; i < validated.size(); ++i) {
    if (!regions[i] || regions[i]->cells.empty()) {
      out.install.push_back(validated[i]);
      continue;
    }
    const AxiomRegion &rv = *regions[i];
    bool duplicate = false, specific = false;
    for (const auto &[idx, re] : existing) {
      if (Refines(rv, re)) {
        (Refines(re, rv) ? duplicate : specific) = true;
      }
    }
    for (size_t j = 0; j < validated.size() && !duplicate && !specific; ++j) {
      if (j == i || !regions[j] || regions[j]->cells.empty()) continue;
      bool fwd = Refines(rv, *regions[j]);
      bool back = Refines(*regions[j], rv);
      if (fwd && !back) specific = true;
      if (fwd && back && j < i) duplicate = true;
    }
    if (duplicate) {
      out.duplicates.push_back(validated[i]);
    } else if (specific) {
      out.over_specified.push_back(validated[i]);
    } else {
      out.install.push_back(validated[i]);
      for (const auto &[idx, re] : existing) {
        if (Refines(re, rv)) flagged.insert(idx);
      }
    }
  }
  out.flagged_existing.assign(flagged.begin(), flagged.end());
  return out;
}

std::string LearnReport::CountsCsv() const {
  std::ostringstream out;
  out << "stage,count\n";
  out << "dataset," << dataset_size << "\n";
  out << "uncovered," << uncovered << "\n";
  out << "tree_leaves," << tree_leaves << "\n";
  out << "candidates," << candidates << "\n";
  out << "generalized," << generalized << "\n";
  out << "validated," << validated << "\n";
  out << "unvalidatable," << unvalidatable << "\n";
  out << "installed," << installed << "\n";
  out << "flagged," << flagged_rules.size() << "\n";
  out << "accuracy_before," << FormatFixed(accuracy_before, 4) << "\n";
  out << "accuracy_after," << FormatFixed(accuracy_after, 4) << "\n";
  return out.str();
}

std::string LearnReport::AxiomsText() const {
  std::ostringstream out;
  out << "% Learned axioms.\n";
  for (const std::string &r : installed_rules) out << r << "\n";
  for (const std::string &r : flagged_rules) out << "% now redundant: " << r << "\n";
  return out.str();
}

std::pair<kr::SystemDescription, LearnReport> Learn(const kr::SystemDescription &d,
                                                    const kr::History &h,
                                                    const std::vector<LabeledExample> &dataset,
                                                    const FeatureSchema &schema,
                                                    const LearnerParams &params) {
  if (dataset.empty()) Fail(ErrorCode::kInvalidArgument, "learn needs a non-empty dataset");
  for (double f : {params.leaf_support_fraction, params.validation_fraction}) {
    if (!(f > 0.0 && f <= 1.0)) Fail(ErrorCode::kInvalidArgument, "fractions must be in (0, 1]");
  }
  LearnReport report;
  report.dataset_size = dataset.size();
  report.accuracy_before = KbAccuracy(d, h, dataset);
  std::vector<LabeledExample> uncovered = FindUncovered(d, h, dataset);
  report.uncovered = uncovered.size();
  if (uncovered.empty()) {
    report.accuracy_after = report.accuracy_before;
    return {d, report};
  }
  induction::DecisionTree tree = TrainUncoveredTree(d, h, dataset, schema);
  report.tree_leaves = tree.num_leaves();
  std::vector<CandidateAxiom> candidates = ExtractCandidates(tree, dataset.size(), params);
  report.candidates = candidates.size();
  std::vector<CandidateAxiom> general = Generalize(candidates, schema);
  report.generalized = general.size();

  Rng rng(params.seed);
  std::vector<Rule> validated;
  for (const CandidateAxiom &c : general) {
    Validation v = Validate(c, d, h, dataset, schema, params, rng);
    report.unvalidatable += v.unvalidatable;
    if (v.accepted) validated.push_back(ToRule(c, d, schema));
  }
  report.validated = validated.size();

  SanityResult sanity = SanityCheck(validated, d);
  kr::SystemDescription out = d;
  for (const Rule &r : sanity.install) {
    out.AddRule(r);
    report.installed_rules.push_back(logic::ToString(r));
  }
  for (int idx : sanity.flagged_existing) {
    report.flagged_rules.push_back(logic::ToString(d.rules()[idx]));
  }
  report.installed = sanity.install.size();
  report.accuracy_after = KbAccuracy(out, h, dataset);
  return {std::move(out), report};
}

}  // namespace aspire::axlearn
