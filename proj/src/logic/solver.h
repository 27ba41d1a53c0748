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

#ifndef ASPIRE_LOGIC_SOLVER_H_
#define ASPIRE_LOGIC_SOLVER_H_

#include <cstddef>
#include <string>
#include <vector>

#include "logic/ast.h"
#include "logic/ground.h"

namespace aspire::logic {

struct AnswerSet {
  std::vector<int> atoms;        // sorted atom indices
  std::vector<int> cr_applied;   // sorted source rule ids

  bool Contains(int atom) const;
  bool operator==(const AnswerSet &other) const = default;
  bool operator<(const AnswerSet &other) const;
};

std::vector<std::string> AtomTexts(const GroundProgram &g, const AnswerSet &m,
                                   bool shown_only = false);

constexpr size_t kNoLimit = static_cast<size_t>(-1);

// Stable models of the regular (non-CR) rules of g, sorted
// lexicographically by atom index list.
std::vector<AnswerSet> StableModels(const GroundProgram &g,
                                    size_t limit = kNoLimit);

// As above, with the listed CR rule indices (into g.rules()) treated as
// regular rules.
std::vector<AnswerSet> StableModelsWith(const GroundProgram &g,
                                        const std::vector<int> &active_cr,
                                        size_t limit = kNoLimit);

bool IsStable(const GroundProgram &g, const std::vector<int> &candidate);

// Brute force over all subsets of the atom universe.
std::vector<AnswerSet> OracleStableModels(const GroundProgram &g,
                                          size_t cap = 16);

enum class CrPreference { kCardinality, kSetInclusion };

std::vector<AnswerSet> CrSolve(const GroundProgram &g,
                               CrPreference pref = CrPreference::kCardinality);
std::vector<AnswerSet> CrSolve(const Program &p,
                               CrPreference pref = CrPreference::kCardinality);

}  // namespace aspire::logic

#endif  // ASPIRE_LOGIC_SOLVER_H_
