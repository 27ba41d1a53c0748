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

#ifndef ASPIRE_KR_TRANSLATE_H_
#define ASPIRE_KR_TRANSLATE_H_

#include <string>

#include "kr/description.h"
#include "logic/ast.h"

namespace aspire::kr {

struct TranslateOptions {
  // Rules placed before everything else in the rule section, e.g. the
  // planner's choice rules. Atom indices follow first occurrence, so
  // atoms mentioned here come first.
  std::string prelude_rules;
  // Extra declarations and rules appended at the end.
  std::string extra_rules;
};

// Text of the program for D and H over steps 0..horizon. The output is in
// the plain logic grammar.
std::string TranslateText(const SystemDescription &d, const History &h, int horizon,
                          const TranslateOptions &options = {});

logic::Program Translate(const SystemDescription &d, const History &h, int horizon,
                         const TranslateOptions &options = {});

// A literal of the description in program form: fluents become
// holds(f, step) (negation moves outside), other literals are unchanged.
logic::Literal AtStep(const SystemDescription &d, const logic::Literal &l,
                      const logic::Term &step);

}  // namespace aspire::kr

#endif  // ASPIRE_KR_TRANSLATE_H_
