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

#include "logic/solver.h"

#include <algorithm>
#include <cstdint>
#include <functional>

#include "common/error.h"

namespace aspire::logic {

bool AnswerSet::Contains(int atom) const {
  return std::binary_search(atoms.begin(), atoms.end(), atom);
}

bool AnswerSet::operator<(const AnswerSet &other) const {
  if (atoms != other.atoms) return atoms < other.atoms;
  return cr_applied < other.cr_applied;
}

std::vector<std::string> AtomTexts(const GroundProgram &g, const AnswerSet &m,
                                   bool shown_only) {
  std::vector<std::string> out;
  for (int a : m.atoms) {
    if (!shown_only || g.shown(a)) out.push_back(g.text(a));
  }
  return out;
}

namespace {

// Branch-and-propagate enumeration. Propagation covers forward rule
// firing, backward falsification of bodies, support (completion) and
// complementary literals. Programs with positive loops additionally get
// an unfounded-set sweep; every total assignment is checked against the
// reduct before it is reported.
class Search {
 public:
  Search(const GroundProgram &g, const std::vector<int> &active_cr) : g_(g) {
    size_t n = g.num_atoms();
    pos_occ_.resize(n);
    neg_occ_.resize(n);
    head_occ_.resize(n);
    val_.assign(n, 0);
    alive_.assign(n, 0);
    std::vector<bool> active(g.rules().size(), false);
    for (int i : active_cr) active[i] = true;
    for (size_t i = 0; i < g.rules().size(); ++i) {
      const GroundRule &gr = g.rules()[i];
      if (gr.is_cr && !active[i]) continue;
      int id = static_cast<int>(rules_.size());
      Rule r;
      r.head = gr.head;
      r.pos = gr.pos;
      r.neg = gr.neg;
      r.size = static_cast<int>(gr.pos.size() + gr.neg.size());
      rules_.push_back(std::move(r));
      for (int a : gr.pos) pos_occ_[a].push_back(id);
      for (int a : gr.neg) neg_occ_[a].push_back(id);
      if (gr.head >= 0) {
        head_occ_[gr.head].push_back(id);
        ++alive_[gr.head];
      }
    }
    tight_ = IsTight();
  }

  std::vector<AnswerSet> Run(size_t limit) {
    std::vector<AnswerSet> models;
    if (limit == 0) return models;
    for (size_t r = 0; r < rules_.size() && !conflict_; ++r) CheckRule(static_cast<int>(r));
    for (size_t a = 0; a < val_.size() && !conflict_; ++a) CheckSupport(static_cast<int>(a));
    Propagate();

    struct Decision {
      int atom;
      size_t trail_size;
      bool flipped;
    };
    std::vector<Decision> decisions;
    size_t next = 0;
    while (true) {
      if (!conflict_) {
        while (next < val_.size() && val_[next] != 0) ++next;
        if (next == val_.size()) {
          if (IsLeafStable()) {
            AnswerSet m;
            for (size_t a = 0; a < val_.size(); ++a) {
              if (val_[a] > 0) m.atoms.push_back(static_cast<int>(a));
            }
            models.push_back(std::move(m));
            if (models.size() >= limit) break;
          }
          conflict_ = true;  // force backtracking to the next branch
          continue;
        }
        decisions.push_back({static_cast<int>(next), trail_.size(), false});
        Assign(static_cast<int>(next), 1);
        Propagate();
        continue;
      }
      while (!decisions.empty() && decisions.back().flipped) {
        decisions.pop_back();
      }
      if (decisions.empty()) break;
      Decision &d = decisions.back();
      UndoTo(d.trail_size);
      d.flipped = true;
      conflict_ = false;
      next = 0;
      Assign(d.atom, -1);
      Propagate();
    }
    std::sort(models.begin(), models.end());
    return models;
  }

 private:
  struct Rule {
    int head = -1;
    std::vector<int> pos, neg;
    int size = 0;
    int n_true = 0, n_false = 0;
  };

  bool IsTight() const {
    // Any cycle in the positive dependency graph head -> body atom.
    size_t n = val_.size();
    std::vector<int8_t> color(n, 0);
    std::vector<std::pair<int, size_t>> stack;
    for (size_t s = 0; s < n; ++s) {
      if (color[s] != 0) continue;
      stack.push_back({static_cast<int>(s), 0});
      color[s] = 1;
      while (!stack.empty()) {
        auto &[atom, edge] = stack.back();
        // Edges: for each rule with head atom, each positive body atom.
        const std::vector<int> &hr = head_occ_[atom];
        bool pushed = false;
        while (edge < TotalEdges(atom)) {
          int to = EdgeAt(hr, edge++);
          if (color[to] == 1) return false;
          if (color[to] == 0) {
            color[to] = 1;
            stack.push_back({to, 0});
            pushed = true;
            break;
          }
        }
        if (!pushed) {
          color[stack.back().first] = 2;
          stack.pop_back();
        }
      }
    }
    return true;
  }

  size_t TotalEdges(int atom) const {
    size_t n = 0;
    for (int r : head_occ_[atom]) n += rules_[r].pos.size();
    return n;
  }

  int EdgeAt(const std::vector<int> &hr, size_t k) const {
    for (int r : hr) {
      if (k < rules_[r].pos.size()) return rules_[r].pos[k];
      k -= rules_[r].pos.size();
    }
    return -1;
  }

  void Assign(int a, int8_t v) {
    if (conflict_) return;
    if (val_[a] == v) return;
    if (val_[a] != 0) {
      conflict_ = true;
      return;
    }
    val_[a] = v;
    trail_.push_back(a);
    for (int r : pos_occ_[a]) Count(r, v > 0);
    for (int r : neg_occ_[a]) Count(r, v < 0);
  }

  void Count(int r, bool literal_true) {
    Rule &rule = rules_[r];
    if (literal_true) {
      ++rule.n_true;
    } else if (rule.n_false++ == 0 && rule.head >= 0) {
      --alive_[rule.head];
    }
  }

  void Uncount(int r, bool literal_true) {
    Rule &rule = rules_[r];
    if (literal_true) {
      --rule.n_true;
    } else if (--rule.n_false == 0 && rule.head >= 0) {
      ++alive_[rule.head];
    }
  }

  void UndoTo(size_t size) {
    while (trail_.size() > size) {
      int a = trail_.back();
      trail_.pop_back();
      int8_t v = val_[a];
      for (int r : pos_occ_[a]) Uncount(r, v > 0);
      for (int r : neg_occ_[a]) Uncount(r, v < 0);
      val_[a] = 0;
    }
    qhead_ = std::min(qhead_, trail_.size());
  }

  void CheckRule(int r) {
    const Rule &rule = rules_[r];
    if (rule.head >= 0) CheckSupport(rule.head);
    if (rule.n_false > 0 || conflict_) return;
    if (rule.n_true == rule.size) {
      if (rule.head < 0) {
        conflict_ = true;
      } else {
        Assign(rule.head, 1);
      }
      return;
    }
    if (rule.n_true == rule.size - 1 && (rule.head < 0 || val_[rule.head] < 0)) {
      for (int a : rule.pos) {
        if (val_[a] == 0) {
          Assign(a, -1);
          return;
        }
      }
      for (int a : rule.neg) {
        if (val_[a] == 0) {
          Assign(a, 1);
          return;
        }
      }
    }
  }

  void CheckSupport(int a) {
    if (conflict_) return;
    if (alive_[a] == 0) {
      Assign(a, -1);
    } else if (alive_[a] == 1 && val_[a] > 0) {
      for (int r : head_occ_[a]) {
        if (rules_[r].n_false != 0) continue;
        for (int p : rules_[r].pos) Assign(p, 1);
        for (int q : rules_[r].neg) Assign(q, -1);
        return;
      }
    }
  }

  void Propagate() {
    while (!conflict_) {
      while (qhead_ < trail_.size() && !conflict_) {
        int a = trail_[qhead_++];
        for (int r : pos_occ_[a]) CheckRule(r);
        for (int r : neg_occ_[a]) CheckRule(r);
        for (int r : head_occ_[a]) CheckRule(r);
        CheckSupport(a);
        if (val_[a] > 0 && g_.complement(a) >= 0) Assign(g_.complement(a), -1);
      }
      if (conflict_ || tight_ || !SweepUnfounded()) return;
    }
  }

  // Falsifies atoms that cannot be derived from outside their own loops.
  // Returns true when anything was assigned.
  bool SweepUnfounded() {
    size_t n = val_.size();
    std::vector<bool> in(n, false);
    std::vector<int> missing(rules_.size());
    std::vector<int> queue;
    for (size_t r = 0; r < rules_.size(); ++r) {
      const Rule &rule = rules_[r];
      if (rule.head < 0 || rule.n_false > 0) {
        missing[r] = -1;
        continue;
      }
      missing[r] = static_cast<int>(rule.pos.size());
      if (missing[r] == 0 && val_[rule.head] >= 0 && !in[rule.head]) {
        in[rule.head] = true;
        queue.push_back(rule.head);
      }
    }
    for (size_t q = 0; q < queue.size(); ++q) {
      int a = queue[q];
      for (int r : pos_occ_[a]) {
        if (missing[r] <= 0) continue;
        if (--missing[r] == 0) {
          int h = rules_[r].head;
          if (val_[h] >= 0 && !in[h]) {
            in[h] = true;
            queue.push_back(h);
          }
        }
      }
    }
    bool any = false;
    for (size_t a = 0; a < n && !conflict_; ++a) {
      if (!in[a] && val_[a] >= 0) {
        if (val_[a] > 0) {
          conflict_ = true;
          return false;
        }
        Assign(static_cast<int>(a), -1);
        any = true;
      }
    }
    return any && !conflict_;
  }

  bool IsLeafStable() const {
    if (tight_) return true;
    std::vector<bool> model(val_.size(), false);
    std::vector<int> missing(rules_.size(), -1);
    std::vector<int> queue;
    for (size_t r = 0; r < rules_.size(); ++r) {
      const Rule &rule = rules_[r];
      if (rule.head < 0) continue;
      bool blocked = false;
      for (int q : rule.neg) blocked = blocked || val_[q] > 0;
      if (blocked) continue;
      missing[r] = static_cast<int>(rule.pos.size());
      if (missing[r] == 0 && !model[rule.head]) {
        model[rule.head] = true;
        queue.push_back(rule.head);
      }
    }
    for (size_t q = 0; q < queue.size(); ++q) {
      for (int r : pos_occ_[queue[q]]) {
        if (missing[r] <= 0) continue;
        if (--missing[r] == 0 && !model[rules_[r].head]) {
          model[rules_[r].head] = true;
          queue.push_back(rules_[r].head);
        }
      }
    }
    for (size_t a = 0; a < val_.size(); ++a) {
      if (model[a] != (val_[a] > 0)) return false;
    }
    return true;
  }

  const GroundProgram &g_;
  std::vector<Rule> rules_;
  std::vector<std::vector<int>> pos_occ_, neg_occ_, head_occ_;
  std::vector<int8_t> val_;
  std::vector<int> alive_;
  std::vector<int> trail_;
  size_t qhead_ = 0;
  bool conflict_ = false;
  bool tight_ = true;
};

}  // namespace

std::vector<AnswerSet> StableModels(const GroundProgram &g, size_t limit) {
  return Search(g, {}).Run(limit);
}

std::vector<AnswerSet> StableModelsWith(const GroundProgram &g,
                                        const std::vector<int> &active_cr,
                                        size_t limit) {
  return Search(g, active_cr).Run(limit);
}

namespace {

bool IsStableUnder(const GroundProgram &g, const std::vector<bool> &m) {
  size_t n = g.num_atoms();
  for (size_t a = 0; a < n; ++a) {
    if (m[a] && g.complement(a) >= 0 && m[g.complement(a)]) return false;
  }
  std::vector<bool> least(n, false);
  bool changed = true;
  // Satisfaction, then the reduct's least model by naive iteration.
  for (const GroundRule &r : g.rules()) {
    if (r.is_cr) continue;
    bool body = true;
    for (int p : r.pos) body = body && m[p];
    for (int q : r.neg) body = body && !m[q];
    if (body && (r.head < 0 || !m[r.head])) return false;
  }
  while (changed) {
    changed = false;
    for (const GroundRule &r : g.rules()) {
      if (r.is_cr || r.head < 0 || least[r.head]) continue;
      bool body = true;
      for (int q : r.neg) body = body && !m[q];
      for (int p : r.pos) body = body && least[p];
      if (body) {
        least[r.head] = true;
        changed = true;
      }
    }
  }
  return least == m;
}

}  // namespace

bool IsStable(const GroundProgram &g, const std::vector<int> &candidate) {
  std::vector<bool> m(g.num_atoms(), false);
  for (int a : candidate) {
    if (a < 0 || static_cast<size_t>(a) >= g.num_atoms()) return false;
    m[a] = true;
  }
  return IsStableUnder(g, m);
}

std::vector<AnswerSet> OracleStableModels(const GroundProgram &g, size_t cap) {
  size_t n = g.num_atoms();
  if (n > cap || n >= 63) {
    Fail(ErrorCode::kOracleCap, "oracle cap of " + std::to_string(cap) +
                                    " atoms exceeded (" + std::to_string(n) + ")");
  }
  std::vector<AnswerSet> out;
  std::vector<bool> m(n);
  for (uint64_t mask = 0; mask < (uint64_t{1} << n); ++mask) {
    for (size_t a = 0; a < n; ++a) m[a] = (mask >> a) & 1;
    if (!IsStableUnder(g, m)) continue;
    AnswerSet s;
    for (size_t a = 0; a < n; ++a) {
      if (m[a]) s.atoms.push_back(static_cast<int>(a));
    }
    out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<AnswerSet> CrSolve(const GroundProgram &g, CrPreference pref) {
  std::vector<int> cr;
  for (size_t i = 0; i < g.rules().size(); ++i) {
    if (g.rules()[i].is_cr) cr.push_back(static_cast<int>(i));
  }
  std::vector<AnswerSet> out;
  std::vector<std::vector<int>> restoring;
  size_t m = cr.size();
  for (size_t k = 0; k <= m; ++k) {
    // Combinations of size k in lexicographic order.
    std::vector<size_t> idx(k);
    for (size_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
      std::vector<int> chosen;
      for (size_t i : idx) chosen.push_back(cr[i]);
      bool dominated = false;
      if (pref == CrPreference::kSetInclusion) {
        for (const auto &s : restoring) {
          dominated = dominated || std::includes(chosen.begin(), chosen.end(),
                                                 s.begin(), s.end());
        }
      }
      if (!dominated) {
        std::vector<AnswerSet> models = StableModelsWith(g, chosen);
        if (!models.empty()) {
          restoring.push_back(chosen);
          std::vector<int> ids;
          for (int r : chosen) ids.push_back(g.rules()[r].source);
          std::sort(ids.begin(), ids.end());
          ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
          for (AnswerSet &a : models) {
            a.cr_applied = ids;
            out.push_back(std::move(a));
          }
        }
      }
      // Advance to the next combination.
      size_t i = k;
      while (i > 0 && idx[i - 1] == m - k + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
    if (pref == CrPreference::kCardinality && !out.empty()) break;
  }
  return out;
}

std::vector<AnswerSet> CrSolve(const Program &p, CrPreference pref) {
  return CrSolve(Ground(p), pref);
}

}  // namespace aspire::logic
