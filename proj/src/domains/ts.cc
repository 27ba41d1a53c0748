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

#include "domains/ts.h"

#include <algorithm>
#include <set>

#include "common/error.h"
#include "common/random.h"
#include "common/text.h"

namespace aspire::domains {

const SignClass &TsOntology::ByLabel(const std::string &label) const {
  for (const SignClass &c : classes) {
    if (c.label == label) return c;
  }
  Fail(ErrorCode::kNotFound, "unknown sign class " + label);
}

TsOntology ParseTsOntology(std::string_view csv) {
  std::vector<CsvRow> rows = ParseCsv(csv);
  CsvRow header = {"id", "label"};
  for (const char *f : kTsFeatures) header.push_back(f);
  header.push_back("message");
  header.push_back("response");
  if (rows.empty() || rows[0] != header) {
    Fail(ErrorCode::kParse, "ontology header must be " + Join(header, ","));
  }
  TsOntology o;
  std::vector<FeatureDef> defs;
  for (const char *f : kTsFeatures) defs.push_back({f, {}});
  std::set<std::string> labels;
  std::set<FeatureVector> seen;
  for (size_t r = 1; r < rows.size(); ++r) {
    const CsvRow &row = rows[r];
    if (row.size() != header.size()) {
      Fail(ErrorCode::kParse, "ontology row " + std::to_string(r + 1) + " has wrong width");
    }
    SignClass c;
    try {
      c.id = std::stoi(row[0]);
    } catch (const std::exception &) {
      Fail(ErrorCode::kParse, "ontology row " + std::to_string(r + 1) + ": bad id");
    }
    c.label = row[1];
    for (size_t f = 0; f < defs.size(); ++f) {
      const std::string &v = row[2 + f];
      if (v.empty()) Fail(ErrorCode::kParse, "ontology row " + std::to_string(r + 1) + ": empty value");
      c.features[defs[f].name] = v;
      auto &vals = defs[f].values;
      if (std::find(vals.begin(), vals.end(), v) == vals.end()) vals.push_back(v);
    }
    c.message = row[9];
    c.response = row[10];
    if (!labels.insert(c.label).second) {
      Fail(ErrorCode::kInvalidArgument, "duplicate sign class " + c.label);
    }
    if (!seen.insert(c.features).second) {
      Fail(ErrorCode::kInvalidArgument, "duplicate feature row for " + c.label);
    }
    o.classes.push_back(std::move(c));
  }
  if (o.classes.empty()) Fail(ErrorCode::kParse, "ontology has no classes");
  o.schema = FeatureSchema(defs);
  return o;
}

TsOntology LoadTsOntology(const std::string &path) { return ParseTsOntology(ReadFile(path)); }

FeatureProvider TsProvider(const TsOntology &ontology) {
  return FeatureProvider("ts", ontology.schema, [](const SceneRecord &s) {
    FeatureVector f;
    for (const char *name : kTsFeatures) f[name] = s.Attr(name);
    return f;
  });
}

std::vector<SceneRecord> GenTs(const TsOntology &ontology, int n, uint64_t seed, double noise,
                               bool sequential) {
  if (n < 1) Fail(ErrorCode::kInvalidArgument, "gen_ts needs n >= 1");
  Rng rng(seed);
  FeatureProvider provider = TsProvider(ontology);
  std::vector<SceneRecord> out;
  for (int i = 0; i < n; ++i) {
    size_t k = sequential ? i % ontology.classes.size() : rng.Below(ontology.classes.size());
    const SignClass &c = ontology.classes[k];
    SceneRecord s;
    s.domain = "ts";
    s.id = i;
    s.label = c.label;
    for (const auto &[name, value] : c.features) s.attributes[name] = value;
    if (noise > 0.0) {
      Extraction e = provider.NoisyExtract(s, noise, DeriveSeed(seed, static_cast<uint64_t>(i)));
      for (const auto &[name, value] : e.features) s.attributes[name] = value;
    }
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace aspire::domains
