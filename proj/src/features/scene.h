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

#ifndef ASPIRE_FEATURES_SCENE_H_
#define ASPIRE_FEATURES_SCENE_H_

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "features/schema.h"

namespace aspire {

struct QaEntry {
  std::string question;
  std::string answer_type;
  bool operator==(const QaEntry &o) const = default;
};

// Simulated stand-in for one image.
//
// Text form, one record per line:
//   domain | id | label | key=value;key=value | question=>atype;question=>atype
// Values may not contain '|', ';' or '='. Lines starting with '#' are
// comments.
struct SceneRecord {
  std::string domain;
  int id = 0;
  std::map<std::string, std::string> attributes;
  std::string label;
  std::vector<QaEntry> qa;

  const std::string &Attr(const std::string &key) const;
  double Number(const std::string &key) const;
  bool operator==(const SceneRecord &o) const = default;
};

std::string ToText(const SceneRecord &r);
SceneRecord SceneFromText(std::string_view line);
std::string ScenesToText(const std::vector<SceneRecord> &records);
std::vector<SceneRecord> ScenesFromText(std::string_view text);

struct Extraction {
  FeatureVector features;
  ConfidenceVector confidence;
};

// The feature-provider contract: one symbolic value per schema feature.
class FeatureProvider {
 public:
  using Deriver = std::function<FeatureVector(const SceneRecord &)>;

  FeatureProvider(std::string domain, FeatureSchema schema, Deriver derive);

  const std::string &domain() const { return domain_; }
  const FeatureSchema &schema() const { return schema_; }

  // Ground truth, confidence 1.0 everywhere. Throws kInvalidArgument on a
  // domain mismatch or an underivable feature.
  Extraction Extract(const SceneRecord &scene) const;

  // Each feature flips to a uniformly drawn other value with probability
  // epsilon. Flipped confidences fall in [0.3, 0.7], others in [0.8, 1.0].
  Extraction NoisyExtract(const SceneRecord &scene, double epsilon, uint64_t seed) const;

 private:
  std::string domain_;
  FeatureSchema schema_;
  Deriver derive_;
};

enum class Route { kSymbolic, kTreeOnly };
const char *RouteName(Route r);

// Tree-only iff some confidence is below tau; tau = 0 disables the gate.
Route RouteByConfidence(const ConfidenceVector &confidence, double tau);

}  // namespace aspire

#endif  // ASPIRE_FEATURES_SCENE_H_
