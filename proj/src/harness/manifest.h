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

#ifndef ASPIRE_HARNESS_MANIFEST_H_
#define ASPIRE_HARNESS_MANIFEST_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace aspire::harness {

// A shuffled train/test partition of [0, n). The two index sets are
// checked disjoint and complete on construction; rows are only reachable
// through them.
class TrainTestSplit {
 public:
  // round(n * train_fraction) training rows, at least one of each side.
  // Throws kInvalidArgument when n < 2.
  TrainTestSplit(size_t n, double train_fraction, uint64_t seed);

  const std::vector<size_t> &train() const { return train_; }
  const std::vector<size_t> &test() const { return test_; }

  template <typename T>
  std::vector<T> Train(const std::vector<T> &rows) const {
    return Take(rows, train_);
  }
  template <typename T>
  std::vector<T> Test(const std::vector<T> &rows) const {
    return Take(rows, test_);
  }

 private:
  template <typename T>
  std::vector<T> Take(const std::vector<T> &rows, const std::vector<size_t> &idx) const {
    Check(rows.size());
    std::vector<T> out;
    out.reserve(idx.size());
    for (size_t i : idx) out.push_back(rows[i]);
    return out;
  }
  void Check(size_t rows) const;

  size_t n_;
  std::vector<size_t> train_;
  std::vector<size_t> test_;
};

// Everything needed to reproduce one run.
struct RunManifest {
  std::string experiment;
  std::string version;
  std::string run_id;  // digest of the config and the version
  std::string config;  // ExperimentConfig::ToText
  std::vector<std::pair<int, uint64_t>> trial_seeds;
  std::map<std::string, std::string> inputs;   // path -> digest
  std::map<std::string, std::string> outputs;  // file -> digest
  std::vector<std::string> volatile_outputs;   // timing tables, not reproducible
  bool complete = true;
  std::vector<std::string> errors;

  std::string ToText() const;
  // Throws kParse.
  static RunManifest FromText(std::string_view text);
};

// Header line tying a result table to its manifest.
std::string ManifestReference(const RunManifest &m);

}  // namespace aspire::harness

#endif  // ASPIRE_HARNESS_MANIFEST_H_
