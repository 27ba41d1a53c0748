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

#include "logic/parser.h"

#include <cctype>

#include "common/error.h"
#include "logic/signature.h"

namespace aspire::logic {
namespace {

enum class Tok {
  kIdent,
  kVariable,
  kInteger,
  kLParen,
  kRParen,
  kLBrace,
  kRBrace,
  kComma,
  kDot,
  kDotDot,
  kIf,      // :-
  kCrIf,    // :+
  kColon,
  kPlus,
  kMinus,
  kHash,
  kStar,
  kEq,
  kNe,
  kLt,
  kLe,
  kGt,
  kGe,
  kEnd,
};

struct Token {
  Tok type;
  std::string text;
  long value = 0;
  int line = 0, column = 0;
};

std::vector<Token> Lex(std::string_view s) {
  std::vector<Token> out;
  int line = 1, col = 1;
  size_t i = 0;
  auto error = [&](const std::string &msg) {
    Fail(ErrorCode::kParse, "line " + std::to_string(line) + ", column " +
                                std::to_string(col) + ": " + msg);
  };
  auto advance = [&](size_t n) {
    for (size_t k = 0; k < n; ++k, ++i) {
      if (s[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '%') {
      while (i < s.size() && s[i] != '\n') advance(1);
      continue;
    }
    Token t;
    t.line = line;
    t.column = col;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t j = i;
      while (j < s.size() &&
             (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) {
        ++j;
      }
      t.text = std::string(s.substr(i, j - i));
      t.type = std::isupper(static_cast<unsigned char>(c)) ? Tok::kVariable
                                                           : Tok::kIdent;
      if (c == '_') error("identifiers may not start with '_'");
      advance(j - i);
      out.push_back(t);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      t.text = std::string(s.substr(i, j - i));
      t.type = Tok::kInteger;
      try {
        t.value = std::stol(t.text);
      } catch (const std::exception &) {
        error("integer out of range");
      }
      advance(j - i);
      out.push_back(t);
      continue;
    }
    auto two = [&](const char *p) {
      return i + 1 < s.size() && s[i] == p[0] && s[i + 1] == p[1];
    };
    size_t len = 1;
    if (two(":-")) {
      t.type = Tok::kIf;
      len = 2;
    } else if (two(":+")) {
      t.type = Tok::kCrIf;
      len = 2;
    } else if (two("..")) {
      t.type = Tok::kDotDot;
      len = 2;
    } else if (two("!=")) {
      t.type = Tok::kNe;
      len = 2;
    } else if (two("<=")) {
      t.type = Tok::kLe;
      len = 2;
    } else if (two(">=")) {
      t.type = Tok::kGe;
      len = 2;
    } else {
      switch (c) {
        case '(': t.type = Tok::kLParen; break;
        case ')': t.type = Tok::kRParen; break;
        case '{': t.type = Tok::kLBrace; break;
        case '}': t.type = Tok::kRBrace; break;
        case ',': t.type = Tok::kComma; break;
        case '.': t.type = Tok::kDot; break;
        case ':': t.type = Tok::kColon; break;
        case '+': t.type = Tok::kPlus; break;
        case '-': t.type = Tok::kMinus; break;
        case '#': t.type = Tok::kHash; break;
        case '*': t.type = Tok::kStar; break;
        case '=': t.type = Tok::kEq; break;
        case '<': t.type = Tok::kLt; break;
        case '>': t.type = Tok::kGt; break;
        default:
          error(std::string("unexpected character '") + c + "'");
      }
    }
    t.text = std::string(s.substr(i, len));
    advance(len);
    out.push_back(t);
  }
  Token end;
  end.type = Tok::kEnd;
  end.line = line;
  end.column = col;
  out.push_back(end);
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  SourceUnit Unit() {
    SourceUnit unit;
    while (!At(Tok::kEnd)) Statement(&unit);
    for (size_t i = 0; i < unit.program.rules.size(); ++i) {
      unit.program.rules[i].id = static_cast<int>(i);
    }
    return unit;
  }

  Literal SingleLiteral() {
    Literal l = ParseLit(false);
    Expect(Tok::kEnd, "end of input");
    return l;
  }

 private:
  const Token &Peek(size_t k = 0) const {
    return toks_[std::min(pos_ + k, toks_.size() - 1)];
  }
  bool At(Tok t) const { return Peek().type == t; }
  bool AtWord(const char *w) const {
    return Peek().type == Tok::kIdent && Peek().text == w;
  }
  Token Take() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

  [[noreturn]] void ErrorAt(const Token &t, const std::string &msg) const {
    Fail(ErrorCode::kParse, "line " + std::to_string(t.line) + ", column " +
                                std::to_string(t.column) + ": " + msg);
  }

  Token Expect(Tok t, const char *what) {
    if (!At(t)) {
      const Token &got = Peek();
      ErrorAt(got, std::string("expected ") + what + ", found " +
                       (got.type == Tok::kEnd ? "end of input"
                                              : "'" + got.text + "'"));
    }
    return Take();
  }

  std::string Ident(const char *what) { return Expect(Tok::kIdent, what).text; }

  void Statement(SourceUnit *unit) {
    if (At(Tok::kHash)) {
      Directive(unit);
      return;
    }
    int line = Peek().line;
    Rule r;
    if (!At(Tok::kIf) && !At(Tok::kCrIf)) r.head = ParseLit(false);
    if (At(Tok::kIf) || At(Tok::kCrIf)) {
      r.is_cr = Take().type == Tok::kCrIf;
      if (r.is_cr && !r.head) ErrorAt(Peek(), "consistency-restoring rule needs a head");
      if (!At(Tok::kDot) || !r.is_cr) r.body = Body();
    }
    Expect(Tok::kDot, "'.'");
    unit->program.rules.push_back(std::move(r));
    unit->rule_lines.push_back(line);
  }

  std::vector<BodyElement> Body() {
    std::vector<BodyElement> body;
    body.push_back(Element());
    while (At(Tok::kComma)) {
      Take();
      body.push_back(Element());
    }
    return body;
  }

  BodyElement Element() {
    if (AtWord("not") && (Peek(1).type == Tok::kIdent ||
                          Peek(1).type == Tok::kMinus)) {
      Take();
      return BodyElement::Negative(ParseLit(false));
    }
    if (At(Tok::kHash)) {
      Take();
      std::string sort = Ident("sort name");
      Expect(Tok::kLParen, "'('");
      Term t = ParseTerm(false);
      Expect(Tok::kRParen, "')'");
      return BodyElement::SortAtom(sort, t);
    }
    if (At(Tok::kMinus)) return BodyElement::Positive(ParseLit(false));
    const Token start = Peek();
    Term t = ParseTerm(false);
    if (auto op = CompareAhead()) {
      Take();
      Term rhs = ParseTerm(false);
      return BodyElement::Comparison(std::move(t), *op, std::move(rhs));
    }
    return BodyElement::Positive(TermToLiteral(start, std::move(t)));
  }

  std::optional<CompareOp> CompareAhead() const {
    switch (Peek().type) {
      case Tok::kEq: return CompareOp::kEq;
      case Tok::kNe: return CompareOp::kNe;
      case Tok::kLt: return CompareOp::kLt;
      case Tok::kLe: return CompareOp::kLe;
      case Tok::kGt: return CompareOp::kGt;
      case Tok::kGe: return CompareOp::kGe;
      default: return std::nullopt;
    }
  }

  Literal TermToLiteral(const Token &at, Term t) {
    if (t.kind != Term::Kind::kConstant && t.kind != Term::Kind::kCompound) {
      ErrorAt(at, "expected a literal");
    }
    Literal l;
    l.predicate = t.name;
    l.args = std::move(t.args);
    return l;
  }

  Literal ParseLit(bool allow_star) {
    bool neg = false;
    if (At(Tok::kMinus)) {
      Take();
      neg = true;
    }
    const Token start = Peek();
    if (!At(Tok::kIdent)) ErrorAt(start, "expected a literal");
    Literal l = TermToLiteral(start, ParseTerm(allow_star));
    l.negated = neg;
    return l;
  }

  Term ParseTerm(bool allow_star) {
    const Token t = Peek();
    switch (t.type) {
      case Tok::kInteger:
        Take();
        return Term::Integer(t.value);
      case Tok::kStar:
        if (!allow_star) ErrorAt(t, "'*' is only allowed in #feature and #class");
        Take();
        return Term::Constant("*");
      case Tok::kVariable: {
        Take();
        long offset = 0;
        if ((At(Tok::kPlus) || At(Tok::kMinus)) &&
            Peek(1).type == Tok::kInteger) {
          bool minus = Take().type == Tok::kMinus;
          offset = Take().value;
          if (minus) offset = -offset;
        }
        return Term::Variable(t.text, offset);
      }
      case Tok::kIdent: {
        Take();
        if (!At(Tok::kLParen)) return Term::Constant(t.text);
        Take();
        std::vector<Term> args;
        args.push_back(ParseTerm(allow_star));
        while (At(Tok::kComma)) {
          Take();
          args.push_back(ParseTerm(allow_star));
        }
        Expect(Tok::kRParen, "')'");
        return Term::Compound(t.text, std::move(args));
      }
      default:
        ErrorAt(t, "expected a term, found '" + t.text + "'");
    }
  }

  std::vector<std::string> SortList() {
    std::vector<std::string> out;
    if (!At(Tok::kLParen)) return out;
    Take();
    out.push_back(Ident("sort name"));
    while (At(Tok::kComma)) {
      Take();
      out.push_back(Ident("sort name"));
    }
    Expect(Tok::kRParen, "')'");
    return out;
  }

  PredicateDecl Signature() {
    PredicateDecl d;
    d.name = Ident("predicate name");
    d.arg_sorts = SortList();
    return d;
  }

  std::string ValueWord() {
    const Token t = Peek();
    if (t.type == Tok::kIdent || t.type == Tok::kInteger ||
        t.type == Tok::kStar) {
      Take();
      return t.text;
    }
    ErrorAt(t, "expected a value");
  }

  void Directive(SourceUnit *unit) {
    Take();
    const Token kw = Peek();
    std::string word = Ident("directive name");
    if (word == "sort") {
      unit->program.sorts.push_back(SortDeclaration());
    } else if (word == "pred") {
      unit->program.predicates.push_back(Signature());
    } else if (word == "show") {
      unit->program.shown.push_back(Ident("predicate name"));
    } else if (word == "static" || word == "fluent") {
      AttributeDirective a;
      a.line = kw.line;
      a.kind = AttributeDirective::Kind::kStatic;
      if (word == "fluent") {
        std::string k = Ident("'basic' or 'defined'");
        if (k == "basic") {
          a.kind = AttributeDirective::Kind::kBasicFluent;
        } else if (k == "defined") {
          a.kind = AttributeDirective::Kind::kDefinedFluent;
        } else {
          ErrorAt(kw, "fluent kind must be basic or defined");
        }
      }
      a.decl = Signature();
      unit->attributes.push_back(a);
    } else if (word == "action") {
      ActionDirective a;
      a.line = kw.line;
      a.decl = Signature();
      unit->actions.push_back(a);
    } else if (word == "default") {
      DefaultDirective d;
      d.line = kw.line;
      d.fluent = ParseLit(false);
      if (AtWord("if")) {
        Take();
        d.condition = Body();
      }
      if (!AtWord("unless")) ErrorAt(Peek(), "expected 'unless'");
      Take();
      d.exception = ParseLit(false);
      unit->defaults.push_back(std::move(d));
    } else if (word == "feature") {
      FeatureDirective f;
      f.line = kw.line;
      f.feature = Ident("feature name");
      Expect(Tok::kEq, "'='");
      f.value = ValueWord();
      Expect(Tok::kColon, "':'");
      f.literals.push_back(ParseLit(true));
      while (At(Tok::kComma)) {
        Take();
        f.literals.push_back(ParseLit(true));
      }
      unit->features.push_back(std::move(f));
    } else if (word == "class") {
      ClassDirective c;
      c.line = kw.line;
      c.label = ValueWord();
      Expect(Tok::kColon, "':'");
      c.literal = ParseLit(true);
      unit->classes.push_back(std::move(c));
    } else {
      ErrorAt(kw, "unknown directive #" + word);
    }
    Expect(Tok::kDot, "'.'");
  }

  SortDecl SortDeclaration() {
    SortDecl s;
    s.name = Ident("sort name");
    Expect(Tok::kEq, "'='");
    if (At(Tok::kLBrace)) {
      Take();
      s.kind = SortDecl::Kind::kEnumerated;
      do {
        if (!s.members.empty()) Take();
        const Token t = Peek();
        if (t.type == Tok::kIdent) {
          s.members.push_back(Term::Constant(Take().text));
        } else if (t.type == Tok::kInteger) {
          s.members.push_back(Term::Integer(Take().value));
        } else {
          ErrorAt(t, "sort members must be constants or integers");
        }
      } while (At(Tok::kComma));
      Expect(Tok::kRBrace, "'}'");
    } else if (At(Tok::kInteger)) {
      s.kind = SortDecl::Kind::kRange;
      s.lower = Take().value;
      Expect(Tok::kDotDot, "'..'");
      s.upper = Expect(Tok::kInteger, "integer").value;
      if (s.upper < s.lower) ErrorAt(Peek(), "empty integer range");
    } else {
      s.kind = SortDecl::Kind::kUnion;
      do {
        if (!s.items.empty()) Take();
        SortItem item;
        item.name = Ident("sort or constructor name");
        if (At(Tok::kLParen)) {
          item.is_constructor = true;
          item.arg_sorts = SortList();
        }
        s.items.push_back(item);
      } while (At(Tok::kPlus));
    }
    return s;
  }

  std::vector<Token> toks_;
  size_t pos_ = 0;
};

}  // namespace

SourceUnit ParseSource(std::string_view text) {
  return Parser(Lex(text)).Unit();
}

Program Parse(std::string_view text) {
  SourceUnit unit = ParseSource(text);
  if (unit.HasDirectives()) {
    Fail(ErrorCode::kParse,
         "system-description directives are not allowed in a plain program");
  }
  Validate(unit.program, unit.rule_lines);
  return std::move(unit.program);
}

Literal ParseLiteral(std::string_view text) {
  return Parser(Lex(text)).SingleLiteral();
}

}  // namespace aspire::logic
