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

#ifndef ASPIRE_LOGIC_AST_H_
#define ASPIRE_LOGIC_AST_H_

#include <optional>
#include <string>
#include <vector>

namespace aspire::logic {

// Constants and functors start lowercase, variables uppercase. A variable
// may carry an integer offset, written I+1 or I-1.
struct Term {
  enum class Kind { kConstant, kVariable, kInteger, kCompound };

  Kind kind = Kind::kConstant;
  std::string name;
  long value = 0;
  std::vector<Term> args;

  static Term Constant(std::string name);
  static Term Variable(std::string name, long offset = 0);
  static Term Integer(long value);
  static Term Compound(std::string functor, std::vector<Term> args);

  bool IsGround() const;
  void CollectVariables(std::vector<std::string> *out) const;

  bool operator==(const Term &other) const = default;
};

struct Literal {
  bool negated = false;
  std::string predicate;
  std::vector<Term> args;

  bool IsGround() const;
  Literal Complement() const;

  bool operator==(const Literal &other) const = default;
};

enum class CompareOp { kEq, kNe, kLt, kLe, kGt, kGe };

const char *CompareOpText(CompareOp op);

struct BodyElement {
  enum class Kind { kPositive, kNegative, kComparison, kSortAtom };

  Kind kind = Kind::kPositive;
  Literal literal;       // kPositive, kNegative
  CompareOp op = CompareOp::kEq;
  Term lhs;              // kComparison, kSortAtom (the bound term)
  Term rhs;              // kComparison
  std::string sort;      // kSortAtom

  static BodyElement Positive(Literal l);
  static BodyElement Negative(Literal l);
  static BodyElement Comparison(Term lhs, CompareOp op, Term rhs);
  static BodyElement SortAtom(std::string sort, Term term);

  bool operator==(const BodyElement &other) const = default;
};

struct Rule {
  int id = 0;
  std::optional<Literal> head;
  std::vector<BodyElement> body;
  bool is_cr = false;

  bool operator==(const Rule &other) const = default;
};

// One alternative of a union sort: either another sort name or a
// constructor applied to argument sorts, as in loc(agent, place).
struct SortItem {
  std::string name;
  bool is_constructor = false;
  std::vector<std::string> arg_sorts;

  bool operator==(const SortItem &other) const = default;
};

struct SortDecl {
  enum class Kind { kEnumerated, kRange, kUnion };

  std::string name;
  Kind kind = Kind::kEnumerated;
  std::vector<Term> members;     // kEnumerated: constants or integers
  long lower = 0, upper = 0;     // kRange
  std::vector<SortItem> items;   // kUnion

  bool operator==(const SortDecl &other) const = default;
};

struct PredicateDecl {
  std::string name;
  std::vector<std::string> arg_sorts;

  bool operator==(const PredicateDecl &other) const = default;
};

struct Program {
  std::vector<SortDecl> sorts;
  std::vector<PredicateDecl> predicates;
  std::vector<Rule> rules;
  std::vector<std::string> shown;

  const SortDecl *FindSort(const std::string &name) const;
  const PredicateDecl *FindPredicate(const std::string &name,
                                     size_t arity) const;

  bool operator==(const Program &other) const = default;
};

// Text forms used by the pretty printer. Ground output uses the same
// rendering so that every printed atom re-parses.
std::string ToString(const Term &t);
std::string ToString(const Literal &l);
std::string ToString(const BodyElement &b);
std::string ToString(const Rule &r);
std::string ToString(const SortDecl &s);
std::string ToString(const PredicateDecl &p);
std::string ToString(const Program &p);

}  // namespace aspire::logic

#endif  // ASPIRE_LOGIC_AST_H_
