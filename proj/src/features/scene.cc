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

#include "features/scene.h"

#include <sstream>

#include "common/error.h"
#include "common/random.h"
#include "common/text.h"

namespace aspire {

const std::string &SceneRecord::Attr(const std::string &key) const {
  auto it = attributes.find(key);
  if (it == attributes.end()) {
    Fail(ErrorCode::kInvalidArgument,
         domain + " scene " + std::to_string(id) + " lacks attribute " + key);
  }
  return it->second;
}

double SceneRecord::Number(const std::string &key) const {
  const std::string &v = Attr(key);
  try {
    size_t used = 0;
    double d = std::stod(v, &used);
    if (used == v.size()) return d;
  } catch (const std::exception &) {
  }
  Fail(ErrorCode::kInvalidArgument, "attribute " + key + " is not numeric: " + v);
}

std::string ToText(const SceneRecord &r) {
  std::ostringstream out;
  out << r.domain << " | " << r.id << " | " << r.label << " | ";
  bool first = true;
  for (const auto &[k, v] : r.attributes) {
    out << (first ? "" : ";") << k << "=" << v;
    first = false;
  }
  out << " | ";
  first = true;
  for (const QaEntry &q : r.qa) {
    out << (first ? "" : ";") << q.question << "=>" << q.answer_type;
    first = false;
  }
  return out.str();
}

SceneRecord SceneFromText(std::string_view line) {
  std::vector<std::string> parts = Split(line, '|');
  if (parts.size() != 5) Fail(ErrorCode::kParse, "scene record needs 5 fields: " + std::string(line));
  SceneRecord r;
  r.domain = Trim(parts[0]);
  try {
    r.id = std::stoi(Trim(parts[1]));
  } catch (const std::exception &) {
    Fail(ErrorCode::kParse, "bad scene id: " + parts[1]);
  }
  r.label = Trim(parts[2]);
  std::string attrs = Trim(parts[3]);
  if (!attrs.empty()) {
    for (const std::string &kv : Split(attrs, ';')) {
      size_t eq = kv.find('=');
      if (eq == std::string::npos) Fail(ErrorCode::kParse, "bad attribute: " + kv);
      r.attributes[Trim(kv.substr(0, eq))] = Trim(kv.substr(eq + 1));
    }
  }
  std::string qa = Trim(parts[4]);
  if (!qa.empty()) {
    for (const std::string &e : Split(qa, ';')) {
      size_t arrow = e.find("=>");
      if (arrow == std::string::npos) Fail(ErrorCode::kParse, "bad qa entry: " + e);
      r.qa.push_back({Trim(e.substr(0, arrow)), Trim(e.substr(arrow + 2))});
    }
  }
  return r;
}

std::string ScenesToText(const std::vector<SceneRecord> &records) {
  std::string out;
  for (const SceneRecord &r : records) out += ToText(r) + "\n";
  return out;
}

std::vector<SceneRecord> ScenesFromText(std::string_view text) {
  std::vector<SceneRecord> out;
  for (const std::string &line : Split(text, '\n')) {
    std::string t = Trim(line);
    if (t.empty() || t[0] == '#') continue;
    out.push_back(SceneFromText(t));
  }
  return out;
}

FeatureProvider::FeatureProvider(std::string domain, FeatureSchema schema, Deriver derive)
    : domain_(std::move(domain)), schema_(std::move(schema)), derive_(std::move(derive)) {}

Extraction FeatureProvider::Extract(const SceneRecord &scene) const {
  if (scene.domain != domain_) {
    Fail(ErrorCode::kInvalidArgument,
         "scene domain " + scene.domain + " does not match provider " + domain_);
  }
  Extraction e;
  e.features = derive_(scene);
  schema_.Check(e.features);
  for (const auto &[name, value] : e.features) e.confidence[name] = 1.0;
  return e;
}

Extraction FeatureProvider::NoisyExtract(const SceneRecord &scene, double epsilon,
                                         uint64_t seed) const {
  if (epsilon < 0.0 || epsilon > 1.0) Fail(ErrorCode::kInvalidArgument, "epsilon outside [0, 1]");
  Extraction e = Extract(scene);
  Rng rng(seed);
  for (const FeatureDef &f : schema_.features()) {
    std::string &value = e.features[f.name];
    bool flip = f.values.size() > 1 && rng.Bernoulli(epsilon);
    if (flip) {
      size_t current = 0;
      while (f.values[current] != value) ++current;
      size_t pick = rng.Below(f.values.size() - 1);
      if (pick >= current) ++pick;
      value = f.values[pick];
      e.confidence[f.name] = rng.Uniform(0.3, 0.7);
    } else {
      e.confidence[f.name] = rng.Uniform(0.8, 1.0);
    }
  }
  return e;
}

const char *RouteName(Route r) { return r == Route::kSymbolic ? "symbolic" : "tree"; }

Route RouteByConfidence(const ConfidenceVector &confidence, double tau) {
  if (tau < 0.0 || tau > 1.0) Fail(ErrorCode::kInvalidArgument, "tau outside [0, 1]");
  if (tau == 0.0) return Route::kSymbolic;
  for (const auto &[name, c] : confidence) {
    if (c < tau) return Route::kTreeOnly;
  }
  return Route::kSymbolic;
}

}  // namespace aspire
