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

#include "random_programs.h"

#include <sstream>

#include "common/random.h"
#include "common/text.h"

namespace aspire::testing {

std::string RandomProgramText(uint64_t seed, const RandomProgramParams &params) {
  Rng rng(seed);
  std::ostringstream out;
  for (int i = 0; i < params.predicates; ++i) out << "#pred p" << i << ".\n";
  auto literal = [&]() {
    std::string l = rng.Bernoulli(params.classical_rate) ? "-" : "";
    return l + "p" + std::to_string(rng.Below(params.predicates));
  };
  int rules = rng.Int(1, params.max_rules);
  for (int r = 0; r < rules; ++r) {
    int body = rng.Int(0, params.max_body);
    bool constraint = rng.Bernoulli(params.constraint_rate);
    if (constraint && body == 0) body = 1;
    std::vector<std::string> parts;
    for (int b = 0; b < body; ++b) {
      parts.push_back((rng.Bernoulli(params.negation_rate) ? "not " : "") + literal());
    }
    if (constraint) {
      out << ":- " << Join(parts, ", ") << ".\n";
    } else if (body == 0) {
      out << literal() << ".\n";
    } else {
      out << literal() << " :- " << Join(parts, ", ") << ".\n";
    }
  }
  if (params.max_cr_rules > 0) {
    int cr = rng.Int(1, params.max_cr_rules);
    for (int c = 0; c < cr; ++c) {
      int body = rng.Int(0, 1);
      out << literal() << " :+";
      if (body > 0) out << " " << (rng.Bernoulli(params.negation_rate) ? "not " : "") << literal();
      out << ".\n";
    }
  }
  return out.str();
}

std::string RandomCrProgramText(uint64_t seed, int max_cr_rules) {
  Rng rng(seed);
  const int preds = 5;
  std::ostringstream out;
  for (int i = 0; i < preds; ++i) out << "#pred p" << i << ".\n";
  auto literal = [&]() {
    return (rng.Bernoulli(0.2) ? "-p" : "p") + std::to_string(rng.Below(preds));
  };
  auto element = [&]() { return (rng.Bernoulli(0.35) ? "not " : "") + literal(); };
  for (int r = rng.Int(0, 6); r > 0; --r) {
    out << literal();
    int body = rng.Int(0, 2);
    for (int b = 0; b < body; ++b) out << (b == 0 ? " :- " : ", ") << element();
    out << ".\n";
  }
  std::vector<std::string> required;
  for (int r = rng.Int(1, 2); r > 0; --r) {
    required.push_back(literal());
    out << ":- not " << required.back() << ".\n";
  }
  if (rng.Bernoulli(0.3)) out << ":- " << element() << ", " << element() << ".\n";
  for (int c = rng.Int(1, max_cr_rules); c > 0; --c) {
    out << (rng.Bernoulli(0.7) ? required[rng.Below(required.size())] : literal()) << " :+";
    if (rng.Bernoulli(0.4)) out << " " << element();
    out << ".\n";
  }
  return out.str();
}

std::string WithCrRules(const std::string &text, uint32_t mask) {
  std::ostringstream out;
  int ordinal = 0;
  for (const std::string &line : Split(text, '\n')) {
    size_t at = line.find(":+");
    if (at == std::string::npos) {
      out << line << "\n";
      continue;
    }
    if ((mask >> ordinal++) & 1) {
      std::string body = Trim(line.substr(at + 2));
      std::string head = Trim(line.substr(0, at));
      out << head << (body == "." ? "." : " :- " + body) << "\n";
    }
  }
  return out.str();
}

}  // namespace aspire::testing
