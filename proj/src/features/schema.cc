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

#include "features/schema.h"

#include <algorithm>
#include <set>

#include "common/error.h"

namespace aspire {

FeatureSchema::FeatureSchema(std::vector<FeatureDef> features)
    : features_(std::move(features)) {
  std::set<std::string> names;
  for (const FeatureDef &f : features_) {
    if (!names.insert(f.name).second) {
      Fail(ErrorCode::kInvalidArgument, "duplicate feature " + f.name);
    }
    if (f.values.empty()) {
      Fail(ErrorCode::kInvalidArgument, "feature " + f.name + " has no values");
    }
  }
}

int FeatureSchema::IndexOf(const std::string &name) const {
  for (size_t i = 0; i < features_.size(); ++i) {
    if (features_[i].name == name) return static_cast<int>(i);
  }
  return -1;
}

int FeatureSchema::ValueIndex(size_t feature, const std::string &value) const {
  const auto &vals = features_[feature].values;
  auto it = std::find(vals.begin(), vals.end(), value);
  return it == vals.end() ? -1 : static_cast<int>(it - vals.begin());
}

bool FeatureSchema::Valid(const FeatureVector &v) const {
  if (v.size() != features_.size()) return false;
  for (size_t i = 0; i < features_.size(); ++i) {
    auto it = v.find(features_[i].name);
    if (it == v.end() || ValueIndex(i, it->second) < 0) return false;
  }
  return true;
}

void FeatureSchema::Check(const FeatureVector &v) const {
  for (size_t i = 0; i < features_.size(); ++i) {
    auto it = v.find(features_[i].name);
    if (it == v.end()) {
      Fail(ErrorCode::kInvalidArgument, "missing feature " + features_[i].name);
    }
    if (ValueIndex(i, it->second) < 0) {
      Fail(ErrorCode::kInvalidArgument,
           "value " + it->second + " not allowed for feature " + features_[i].name);
    }
  }
  for (const auto &[name, value] : v) {
    if (IndexOf(name) < 0) Fail(ErrorCode::kInvalidArgument, "unknown feature " + name);
  }
}

std::vector<std::string> FeatureSchema::Names() const {
  std::vector<std::string> out;
  for (const FeatureDef &f : features_) out.push_back(f.name);
  return out;
}

std::string FormatFeatures(const FeatureVector &v) {
  std::string out;
  for (const auto &[k, val] : v) {
    if (!out.empty()) out += ' ';
    out += k + "=" + val;
  }
  return out;
}

}  // namespace aspire
