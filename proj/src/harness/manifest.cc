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

#include "harness/manifest.h"

#include <cmath>
#include <numeric>
#include <sstream>

#include "common/error.h"
#include "common/random.h"
#include "common/text.h"

namespace aspire::harness {

TrainTestSplit::TrainTestSplit(size_t n, double train_fraction, uint64_t seed) : n_(n) {
  if (n < 2) Fail(ErrorCode::kInvalidArgument, "split needs at least two rows");
  size_t k = static_cast<size_t>(std::llround(static_cast<double>(n) * train_fraction));
  k = std::min(std::max<size_t>(k, 1), n - 1);
  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  Rng rng(seed);
  rng.Shuffle(order);
  train_.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k));
  test_.assign(order.begin() + static_cast<std::ptrdiff_t>(k), order.end());
  std::vector<int> seen(n, 0);
  for (size_t i : train_) seen[i] += 1;
  for (size_t i : test_) seen[i] += 2;
  for (int s : seen) {
    if (s != 1 && s != 2) Fail(ErrorCode::kInternal, "train and test rows overlap");
  }
}

void TrainTestSplit::Check(size_t rows) const {
  if (rows != n_) {
    Fail(ErrorCode::kInternal,
         "split over " + std::to_string(n_) + " rows applied to " + std::to_string(rows));
  }
}

std::string RunManifest::ToText() const {
  std::ostringstream out;
  out << "aspire-manifest 1\n";
  out << "experiment " << experiment << "\n";
  out << "version " << version << "\n";
  out << "run " << run_id << "\n";
  out << "complete " << (complete ? "true" : "false") << "\n";
  for (const std::string &line : aspire::Split(config, '\n')) {
    if (!line.empty()) out << "config " << line << "\n";
  }
  for (const auto &[trial, seed] : trial_seeds) out << "seed " << trial << " " << seed << "\n";
  for (const auto &[path, digest] : inputs) out << "input " << digest << " " << path << "\n";
  for (const auto &[file, digest] : outputs) out << "output " << digest << " " << file << "\n";
  for (const std::string &file : volatile_outputs) out << "volatile " << file << "\n";
  for (const std::string &e : errors) out << "error " << e << "\n";
  return out.str();
}

RunManifest RunManifest::FromText(std::string_view text) {
  RunManifest m;
  auto lines = aspire::Split(text, '\n');
  if (lines.empty() || lines[0] != "aspire-manifest 1") {
    Fail(ErrorCode::kParse, "not a run manifest");
  }
  for (size_t i = 1; i < lines.size(); ++i) {
    const std::string &line = lines[i];
    if (line.empty()) continue;
    size_t sp = line.find(' ');
    std::string tag = line.substr(0, sp);
    std::string rest = sp == std::string::npos ? "" : line.substr(sp + 1);
    auto pair = [&](const std::string &what) {
      size_t s = rest.find(' ');
      if (s == std::string::npos) Fail(ErrorCode::kParse, "manifest: bad " + what + " line");
      return std::make_pair(rest.substr(0, s), rest.substr(s + 1));
    };
    if (tag == "experiment") {
      m.experiment = rest;
    } else if (tag == "version") {
      m.version = rest;
    } else if (tag == "run") {
      m.run_id = rest;
    } else if (tag == "complete") {
      m.complete = rest == "true";
    } else if (tag == "config") {
      m.config += rest + "\n";
    } else if (tag == "seed") {
      auto [t, s] = pair("seed");
      m.trial_seeds.push_back({std::stoi(t), std::stoull(s)});
    } else if (tag == "input") {
      auto [digest, path] = pair("input");
      m.inputs[path] = digest;
    } else if (tag == "output") {
      auto [digest, file] = pair("output");
      m.outputs[file] = digest;
    } else if (tag == "volatile") {
      m.volatile_outputs.push_back(rest);
    } else if (tag == "error") {
      m.errors.push_back(rest);
    } else {
      Fail(ErrorCode::kParse, "manifest: unknown line '" + line + "'");
    }
  }
  return m;
}

std::string ManifestReference(const RunManifest &m) {
  return "# manifest=manifest.txt run=" + m.run_id;
}

}  // namespace aspire::harness
