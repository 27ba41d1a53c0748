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

#ifndef ASPIRE_DOMAINS_TS_H_
#define ASPIRE_DOMAINS_TS_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "features/scene.h"

namespace aspire::domains {

struct SignClass {
  int id = 0;
  std::string label;
  FeatureVector features;
  std::string message;
  std::string response;
};

struct TsOntology {
  std::vector<SignClass> classes;
  FeatureSchema schema;

  const SignClass &ByLabel(const std::string &label) const;
};

inline constexpr const char *kTsFeatures[] = {"primary_symbol", "secondary_symbol", "shape",
                                              "main_color",     "border_color",     "background",
                                              "cross"};

// CSV with header id,label,<7 features>,message,response. Throws kParse on
// a malformed file, kInvalidArgument on duplicate labels or feature rows.
TsOntology ParseTsOntology(std::string_view csv);
TsOntology LoadTsOntology(const std::string &path);

// Scene attributes are the sign's feature values.
FeatureProvider TsProvider(const TsOntology &ontology);

// Classes drawn uniformly (or in order when sequential); features from the
// class row, flipped per feature with probability noise.
std::vector<SceneRecord> GenTs(const TsOntology &ontology, int n, uint64_t seed,
                               double noise = 0.0, bool sequential = false);

}  // namespace aspire::domains

#endif  // ASPIRE_DOMAINS_TS_H_
