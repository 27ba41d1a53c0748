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

#ifndef ASPIRE_HARNESS_CONFIG_H_
#define ASPIRE_HARNESS_CONFIG_H_

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace aspire::harness {

// Experiment ids: ss-classify, ss-vqa, ts-classify, ts-vqa,
// axiom-ablation, ra-paired, ra-qa.
const std::vector<std::string> &ExperimentIds();

// Key-value settings for one run. Every experiment has a full set of
// defaults; files and overrides may only set known keys.
class ExperimentConfig {
 public:
  // Defaults for the experiment, then the overrides in order. Throws
  // kInvalidArgument for an unknown experiment or key.
  static ExperimentConfig For(const std::string &experiment,
                              const std::map<std::string, std::string> &overrides = {});
  // "key = value" lines. The experiment comes from the "experiment" key
  // unless given.
  static ExperimentConfig FromText(std::string_view text, const std::string &experiment = "");
  static ExperimentConfig Load(const std::string &path, const std::string &experiment = "");

  const std::string &experiment() const { return experiment_; }
  const std::map<std::string, std::string> &values() const { return values_; }

  void Set(const std::string &key, const std::string &value);
  std::string Str(const std::string &key) const;
  int Int(const std::string &key) const;
  uint64_t Uint(const std::string &key) const;
  // Accepts a decimal or a fraction such as 2/3.
  double Double(const std::string &key) const;
  bool Bool(const std::string &key) const;
  std::vector<int> Ints(const std::string &key) const;
  // Unset or "world" means the map's own value.
  bool IsWorld(const std::string &key) const { return Str(key) == "world"; }

  // Range and file checks. Throws kInvalidArgument naming the key.
  void Validate() const;

  // Sorted "key = value" lines, experiment first.
  std::string ToText() const;

 private:
  std::string experiment_;
  std::map<std::string, std::string> values_;
};

}  // namespace aspire::harness

#endif  // ASPIRE_HARNESS_CONFIG_H_
