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

#ifndef ASPIRE_LOGIC_PARSER_H_
#define ASPIRE_LOGIC_PARSER_H_

#include <string>
#include <string_view>
#include <vector>

#include "logic/ast.h"

namespace aspire::logic {

// Directive layer used by system descriptions. The plain logic parser
// rejects these; the kr module consumes them.
struct AttributeDirective {
  enum class Kind { kStatic, kBasicFluent, kDefinedFluent };
  Kind kind = Kind::kStatic;
  PredicateDecl decl;
  int line = 0;
};

struct ActionDirective {
  PredicateDecl decl;
  int line = 0;
};

// #default loc(P, L) if workplace(P, L) unless default_negated(P, L).
struct DefaultDirective {
  Literal fluent;
  std::vector<BodyElement> condition;
  Literal exception;
  int line = 0;
};

// #feature lean = true : struc_type(s, lean).
// A value of "*" is a wildcard; a "*" constant inside the literals is
// replaced by the feature value.
struct FeatureDirective {
  std::string feature;
  std::string value;
  std::vector<Literal> literals;
  int line = 0;
};

// #class stable : stable(s).   #class * : sign_type(s, *).
struct ClassDirective {
  std::string label;
  Literal literal;
  int line = 0;
};

struct SourceUnit {
  Program program;
  std::vector<int> rule_lines;
  std::vector<AttributeDirective> attributes;
  std::vector<ActionDirective> actions;
  std::vector<DefaultDirective> defaults;
  std::vector<FeatureDirective> features;
  std::vector<ClassDirective> classes;

  bool HasDirectives() const {
    return !attributes.empty() || !actions.empty() || !defaults.empty() ||
           !features.empty() || !classes.empty();
  }
};

// Syntax only. Throws Error(kParse) with line and column.
SourceUnit ParseSource(std::string_view text);

// Parses and validates a plain program. Directive statements are rejected.
Program Parse(std::string_view text);

// Semantic checks: declarations, arity, sort membership of constants,
// safety, duplicate members. Throws Error(kSemantic).
void Validate(const Program &program, const std::vector<int> &rule_lines = {});

// Parses a single literal such as "-stable(s)" or "holds(loc(a, b), 0)".
Literal ParseLiteral(std::string_view text);

}  // namespace aspire::logic

#endif  // ASPIRE_LOGIC_PARSER_H_
