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

#ifndef ASPIRE_KR_REASONER_H_
#define ASPIRE_KR_REASONER_H_

#include <memory>
#include <optional>
#include <utility>
#include <string>
#include <vector>

#include "features/schema.h"
#include "kr/description.h"
#include "logic/ground.h"
#include "logic/solver.h"

namespace aspire::kr {

// Ground program and its answer sets for one query.
struct Beliefs {
  logic::GroundProgram ground;
  std::vector<logic::AnswerSet> models;
};

struct ClassOutcome {
  std::string label;          // empty means Unknown
  bool inconsistent = false;  // no answer set at all
  int class_atom = -1;        // the concluded literal, when labelled
  std::vector<std::string> support;
  std::shared_ptr<const Beliefs> beliefs;

  bool known() const { return !label.empty(); }
};

enum class Entailment { kYes, kNo, kUnknown };
const char *EntailmentName(Entailment e);

struct ClassifyOptions {
  // Features whose confidence is below the threshold are withheld.
  const ConfidenceVector *confidence = nullptr;
  double confidence_threshold = 0.0;
};

class Reasoner {
 public:
  Reasoner(SystemDescription d, History h = {}, int horizon = 0);

  const SystemDescription &description() const { return d_; }
  const logic::Program &base_program() const { return base_; }

  // Initial-state facts for a feature vector through the #feature
  // bindings. Throws kInvalidArgument for an unbound feature value.
  std::vector<logic::Literal> FeatureFacts(const FeatureVector &f,
                                           const ClassifyOptions &options = {}) const;

  std::shared_ptr<const Beliefs> Solve(const std::vector<logic::Literal> &facts) const;

  ClassOutcome Classify(const FeatureVector &f, const ClassifyOptions &options = {}) const;

  Entailment Entails(const logic::Literal &query,
                     const std::vector<logic::Literal> &facts = {}) const;

  // Class labels present in one answer set, with the atom carrying each.
  std::vector<std::pair<std::string, int>> Labels(const logic::GroundProgram &g,
                                                  const logic::AnswerSet &m) const;

 private:
  SystemDescription d_;
  History h_;
  int horizon_;
  logic::Program base_;
};

// Literals bound to one feature value, with any "*" replaced. Throws
// kInvalidArgument when no #feature directive matches.
std::vector<logic::Literal> FeatureLiterals(const SystemDescription &d, const std::string &feature,
                                            const std::string &value);

// The class literal for a label, instantiating a wildcard class. Throws
// kNotFound for an unknown label.
logic::Literal ClassLiteral(const SystemDescription &d, const std::string &label);

// The feature test a bound literal stands for, if any.
std::optional<std::pair<std::string, std::string>> FeatureOf(const SystemDescription &d,
                                                             const logic::Literal &literal);

// Integer term for an all-digit value, constant otherwise.
logic::Term ValueTerm(const std::string &value);

// Literals on one witness derivation of the conclusion, transitively,
// restricted to display-hinted atoms. Facts have empty support.
std::vector<std::string> ExtractSupport(const logic::GroundProgram &g,
                                        const logic::AnswerSet &m, int conclusion);

}  // namespace aspire::kr

#endif  // ASPIRE_KR_REASONER_H_
