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

#ifndef ASPIRE_KR_DESCRIPTION_H_
#define ASPIRE_KR_DESCRIPTION_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "logic/ast.h"
#include "logic/parser.h"

namespace aspire::kr {

enum class SymbolKind { kPlain, kStatic, kBasicFluent, kDefinedFluent, kAction };

enum class AxiomKind {
  kCausalLaw,
  kStateConstraint,
  kExecutability,
  kRaw,   // mentions holds/occurs/obs/hpd directly; emitted verbatim
};

struct Axiom {
  AxiomKind kind;
  logic::Rule rule;
};

// Sorted signature, attributes, actions, axioms, defaults, plus the
// feature and class bindings used for classification.
class SystemDescription {
 public:
  SystemDescription() = default;

  // Parses and validates the authoring format. Throws kParse / kSemantic.
  static SystemDescription FromText(std::string_view text);

  const logic::SourceUnit &source() const { return unit_; }
  const std::vector<logic::SortDecl> &sorts() const { return unit_.program.sorts; }
  const std::vector<logic::Rule> &rules() const { return unit_.program.rules; }

  SymbolKind KindOf(const std::string &predicate) const;
  bool IsFluent(const std::string &predicate) const;
  bool IsAction(const std::string &predicate) const;
  bool HasTemporalPart() const;

  std::vector<Axiom> Axioms() const;
  AxiomKind Classify(const logic::Rule &r) const;

  // Editing, used by the learner. Rules get fresh ids in order.
  void AddRule(const logic::Rule &r);
  void RemoveRule(size_t index);
  void SetRules(std::vector<logic::Rule> rules);

  // Canonical text that FromText reads back to an equal description.
  std::string ToText() const;

  // The validation view: directives lowered to plain declarations.
  logic::Program ViewProgram() const;

 private:
  void Validate() const;

  logic::SourceUnit unit_;
};

struct Observation {
  logic::Literal fluent;   // positive fluent literal
  bool value = true;
  int step = 0;
};

struct Happened {
  logic::Literal action;
  int step = 0;
};

struct History {
  std::vector<Observation> observations;
  std::vector<Happened> happened;
  // Ground literals: statics as given, fluents as holds at step 0.
  std::vector<logic::Literal> facts;

  std::string ToText() const;
};

// Reserved predicates and variable introduced by the translation.
inline constexpr const char *kStepVar = "I";
bool IsReservedPredicate(const std::string &name);

std::string ToText(const logic::AttributeDirective &a);
std::string ToText(const logic::ActionDirective &a);
std::string ToText(const logic::DefaultDirective &d);
std::string ToText(const logic::FeatureDirective &f);
std::string ToText(const logic::ClassDirective &c);

}  // namespace aspire::kr

#endif  // ASPIRE_KR_DESCRIPTION_H_
