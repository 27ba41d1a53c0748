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

#ifndef ASPIRE_LOGIC_SIGNATURE_H_
#define ASPIRE_LOGIC_SIGNATURE_H_

#include <map>
#include <string>
#include <vector>

#include "logic/ast.h"

namespace aspire::logic {

struct VarOccurrence {
  std::string var;
  std::string sort;
  long offset = 0;
};

// Sort-level view of a program: structural membership tests and the sort
// of every variable position. Construction checks the sort declarations.
class Signature {
 public:
  explicit Signature(const Program &program);

  const Program &program() const { return program_; }
  const SortDecl *sort(const std::string &name) const;

  // True when t can denote a member of the sort. Variables fit anything.
  bool Fits(const Term &t, const std::string &sort) const;

  // Appends the sort of each variable occurring in t, where t sits at a
  // position of the given sort.
  void VariableSorts(const Term &t, const std::string &sort,
                     std::vector<VarOccurrence> *out) const;

 private:
  const SortItem *Constructor(const std::string &sort, const std::string &functor,
                              size_t arity) const;

  const Program &program_;
  std::map<std::string, const SortDecl *> sorts_;
};

}  // namespace aspire::logic

#endif  // ASPIRE_LOGIC_SIGNATURE_H_
