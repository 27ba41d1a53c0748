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

#ifndef ASPIRE_AXLEARN_LEARNER_H_
#define ASPIRE_AXLEARN_LEARNER_H_

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "common/random.h"
#include "induction/tree.h"
#include "kr/description.h"
#include "kr/reasoner.h"

namespace aspire::axlearn {

// A state constraint lifted from one decision-tree path.
struct CandidateAxiom {
  std::string label;
  std::map<std::string, std::string> body;  // feature -> value
  int support = 0;
  double purity = 1.0;

  bool operator==(const CandidateAxiom &o) const { return label == o.label && body == o.body; }
  bool operator<(const CandidateAxiom &o) const {
    return label != o.label ? label < o.label : body < o.body;
  }
};

struct LearnerParams {
  double leaf_support_fraction = 0.10;
  double validation_fraction = 0.10;
  double purity_threshold = 1.0;
  int max_validation_errors = 0;
  uint64_t seed = 1;
};

// Reserved label standing for "already classified correctly".
inline constexpr const char *kContrastLabel = "_covered";

// Memoised classification of feature vectors against one description.
class ClassifierCache {
 public:
  explicit ClassifierCache(const kr::Reasoner &reasoner) : reasoner_(reasoner) {}
  // Empty string for Unknown.
  const std::string &Label(const FeatureVector &f);

 private:
  const kr::Reasoner &reasoner_;
  std::map<FeatureVector, std::string> memo_;
};

std::vector<induction::LabeledExample> FindUncovered(
    const kr::SystemDescription &d, const kr::History &h,
    const std::vector<induction::LabeledExample> &dataset);

// Step 2: the dataset with covered examples relabelled to the contrast
// class, so that uncovered regions are carved out of the full space.
induction::DecisionTree TrainUncoveredTree(const kr::SystemDescription &d, const kr::History &h,
                                           const std::vector<induction::LabeledExample> &dataset,
                                           const FeatureSchema &schema);

std::vector<CandidateAxiom> ExtractCandidates(const induction::DecisionTree &tree,
                                              size_t total_training_count,
                                              const LearnerParams &params);

std::vector<CandidateAxiom> Generalize(const std::vector<CandidateAxiom> &candidates,
                                       const FeatureSchema &schema);

// The rule a candidate denotes in the description's vocabulary.
logic::Rule ToRule(const CandidateAxiom &c, const kr::SystemDescription &d,
                   const FeatureSchema &schema);

struct Validation {
  bool accepted = false;
  bool unvalidatable = false;
  int checked = 0;
  int errors = 0;
};

Validation Validate(const CandidateAxiom &c, const kr::SystemDescription &d,
                    const kr::History &h, const std::vector<induction::LabeledExample> &dataset,
                    const FeatureSchema &schema, const LearnerParams &params, Rng &rng);

// Region of a classification axiom: its label and the feature-test sets
// of its ground instances. Empty when the rule is not a pure
// feature-to-class axiom.
struct AxiomRegion {
  std::string label;
  std::vector<std::set<std::pair<std::string, std::string>>> cells;
};
std::optional<AxiomRegion> RegionOf(const logic::Rule &rule, const kr::SystemDescription &d);

// a is as specific as b or more: every instance of a refines one of b.
bool Refines(const AxiomRegion &a, const AxiomRegion &b);

struct SanityResult {
  std::vector<logic::Rule> install;
  std::vector<logic::Rule> duplicates;
  std::vector<logic::Rule> over_specified;  // validated, dropped
  std::vector<int> flagged_existing;        // rule indices made redundant
};

SanityResult SanityCheck(const std::vector<logic::Rule> &validated,
                         const kr::SystemDescription &d);

struct LearnReport {
  size_t dataset_size = 0;
  size_t uncovered = 0;
  size_t tree_leaves = 0;
  size_t candidates = 0;
  size_t generalized = 0;
  size_t validated = 0;
  size_t unvalidatable = 0;
  size_t installed = 0;
  std::vector<std::string> installed_rules;
  std::vector<std::string> flagged_rules;
  double accuracy_before = 0.0;
  double accuracy_after = 0.0;

  // Stage counts as CSV rows and the installed axioms as KB text.
  std::string CountsCsv() const;
  std::string AxiomsText() const;
};

std::pair<kr::SystemDescription, LearnReport> Learn(
    const kr::SystemDescription &d, const kr::History &h,
    const std::vector<induction::LabeledExample> &dataset, const FeatureSchema &schema,
    const LearnerParams &params = {});

// Fraction of examples whose KB label equals the gold label.
double KbAccuracy(const kr::SystemDescription &d, const kr::History &h,
                  const std::vector<induction::LabeledExample> &dataset);

}  // namespace aspire::axlearn

#endif  // ASPIRE_AXLEARN_LEARNER_H_
