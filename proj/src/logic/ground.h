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

#ifndef ASPIRE_LOGIC_GROUND_H_
#define ASPIRE_LOGIC_GROUND_H_

#include <memory>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "logic/ast.h"

namespace aspire::logic {

struct GroundRule {
  int head = -1;              // -1 for a constraint
  std::vector<int> pos;
  std::vector<int> neg;
  int source = -1;            // id of the source rule
  bool is_cr = false;
};

// Indexed universe of ground literals plus ground rules. Immutable once
// built; shared between solver instances.
class GroundProgram {
 public:
  GroundProgram() = default;

  size_t num_atoms() const { return atoms_.size(); }
  const Literal &atom(int i) const { return atoms_[i]; }
  const std::string &text(int i) const { return texts_[i]; }
  int complement(int i) const { return complement_[i]; }
  bool shown(int i) const { return shown_[i]; }
  const std::vector<GroundRule> &rules() const { return rules_; }
  size_t num_cr_rules() const;

  // Index of a ground literal, or -1 when it is not in the universe.
  int Find(const Literal &l) const;
  int Find(std::string_view text) const;

  // Builder interface, used by the grounder and by tests that construct
  // propositional programs directly.
  int AddAtom(const Literal &l, bool shown = true);
  void AddRule(GroundRule r);

  std::string ToText() const;

 private:
  std::vector<Literal> atoms_;
  std::vector<std::string> texts_;
  std::vector<int> complement_;
  std::vector<bool> shown_;
  std::unordered_map<std::string, int> index_;
  std::vector<GroundRule> rules_;
};

struct GroundOptions {
  size_t max_rules = 2000000;
  // Drop rules whose positive body can never be derived. Sound for answer
  // sets; off by default so that the instance set is complete.
  bool simplify = false;
};

// Sort-respecting instantiation. Throws Error(kGroundLimit) past the cap.
GroundProgram Ground(const Program &p, const GroundOptions &options = {});

// All ground members of a sort in declaration order.
std::vector<Term> SortMembers(const Program &p, const std::string &sort);

}  // namespace aspire::logic

#endif  // ASPIRE_LOGIC_GROUND_H_
