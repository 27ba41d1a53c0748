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

#ifndef ASPIRE_FEATURES_SCHEMA_H_
#define ASPIRE_FEATURES_SCHEMA_H_

#include <map>
#include <string>
#include <vector>

namespace aspire {

// Named symbolic features of one scene, and per-feature confidence.
using FeatureVector = std::map<std::string, std::string>;
using ConfidenceVector = std::map<std::string, double>;

struct FeatureDef {
  std::string name;
  std::vector<std::string> values;
};

class FeatureSchema {
 public:
  FeatureSchema() = default;
  explicit FeatureSchema(std::vector<FeatureDef> features);

  const std::vector<FeatureDef> &features() const { return features_; }
  size_t size() const { return features_.size(); }
  const FeatureDef &at(size_t i) const { return features_[i]; }

  // -1 when absent.
  int IndexOf(const std::string &name) const;
  int ValueIndex(size_t feature, const std::string &value) const;

  // True when v assigns a declared value to every feature and nothing else.
  bool Valid(const FeatureVector &v) const;
  // Throws kInvalidArgument naming the first offending feature.
  void Check(const FeatureVector &v) const;

  // CSV header form: the feature names in order.
  std::vector<std::string> Names() const;

 private:
  std::vector<FeatureDef> features_;
};

// "k1=v1 k2=v2" in key order.
std::string FormatFeatures(const FeatureVector &v);

}  // namespace aspire

#endif  // ASPIRE_FEATURES_SCHEMA_H_
