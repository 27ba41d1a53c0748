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

#include "harness/config.h"

#include <algorithm>
#include <filesystem>
#include <sstream>

#include "common/error.h"
#include "common/paths.h"
#include "common/text.h"

namespace aspire::harness {
namespace {

using Values = std::map<std::string, std::string>;

const Values &Common() {
  static const Values v = {
      {"seed", "1"},          {"trials", "10"},     {"threads", "0"},
      {"output_dir", ""},     {"train_fraction", "2/3"},
  };
  return v;
}

Values Learning() {
  return {{"leaf_support_fraction", "0.02"}, {"validation_fraction", "0.1"},
          {"min_gain", "0.01"},              {"min_leaf_support", "2"},
          {"prune", "false"}};
}

Values Defaults(const std::string &id) {
  Values v = Common();
  auto merge = [&v](const Values &more) {
    for (const auto &[k, x] : more) v[k] = x;
  };
  if (id == "ss-classify" || id == "ss-vqa" || id == "ts-classify" || id == "ts-vqa") {
    bool ss = id[0] == 's';
    merge(Learning());
    merge({{"domain", ss ? "ss" : "ts"},
           {"kb", ss ? "ss/kb.sd" : "ts/kb_partial.sd"},
           {"sizes", ss ? "50,100,200,400,800,1600" : "125,250,500,1000,2000,4000"},
           {"remove", "0"},
           {"noise", "0.1"},
           {"tau", "0.75"},
           {"boundary_band", "0.15"},
           {"learn", "true"}});
    if (!ss) v["leaf_support_fraction"] = "0.005";
    if (id.ends_with("vqa")) v["per_scene"] = "2";
  } else if (id == "axiom-ablation") {
    merge(Learning());
    merge({{"domain", "ss"},
           {"kb", "ss/kb.sd"},
           {"sizes", "2000"},
           {"remove", "4"},
           {"noise", "0"},
           {"tau", "0"},
           {"boundary_band", "0"},
           {"per_scene", "2"},
           {"trials", "30"}});
  } else if (id == "ra-paired") {
    merge({{"trials", "100"},
           {"map", "canonical"},
           {"min_places", "3"},
           {"max_places", "7"},
           {"p_home", "world"},
           {"p_fail", "world"},
           {"p_miss", "world"},
           {"max_replans", "40"},
           {"max_horizon", "12"}});
  } else if (id == "ra-qa") {
    merge(Learning());
    merge({{"trials", "1"},
           {"examples", "500"},
           {"per_scene", "2"},
           {"noise", "0.1"},
           {"tau", "0.75"},
           {"kb", "ra/qa.sd"}});
  } else {
    Fail(ErrorCode::kInvalidArgument, "unknown experiment " + id);
  }
  return v;
}

// The ablation defaults follow the domain.
void ApplyDomainDefaults(const std::string &id, const Values &given, Values &v) {
  if (id != "axiom-ablation" || v["domain"] != "ts") return;
  const Values ts = {{"kb", "ts/kb.sd"},
                     {"sizes", "125,250,500,1000,2000,4000"},
                     {"remove", "16"},
                     {"leaf_support_fraction", "0.005"}};
  for (const auto &[k, x] : ts) {
    if (!given.count(k)) v[k] = x;
  }
}

bool ParseBool(const std::string &key, const std::string &s) {
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  Fail(ErrorCode::kInvalidArgument, key + ": expected a boolean, got '" + s + "'");
}

double ParseDouble(const std::string &key, const std::string &s) {
  try {
    size_t slash = s.find('/');
    size_t used = 0;
    if (slash != std::string::npos) {
      double num = std::stod(s.substr(0, slash), &used);
      if (used != slash) throw std::invalid_argument(s);
      std::string rest = s.substr(slash + 1);
      double den = std::stod(rest, &used);
      if (used != rest.size() || den == 0.0) throw std::invalid_argument(s);
      return num / den;
    }
    double x = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return x;
  } catch (const std::logic_error &) {
    Fail(ErrorCode::kInvalidArgument, key + ": expected a number, got '" + s + "'");
  }
}

long long ParseInteger(const std::string &key, const std::string &s) {
  try {
    size_t used = 0;
    long long x = std::stoll(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return x;
  } catch (const std::logic_error &) {
    Fail(ErrorCode::kInvalidArgument, key + ": expected an integer, got '" + s + "'");
  }
}

}  // namespace

const std::vector<std::string> &ExperimentIds() {
  static const std::vector<std::string> ids = {"ss-classify",    "ss-vqa",    "ts-classify",
                                               "ts-vqa",         "axiom-ablation", "ra-paired",
                                               "ra-qa"};
  return ids;
}

ExperimentConfig ExperimentConfig::For(const std::string &experiment, const Values &overrides) {
  ExperimentConfig c;
  c.experiment_ = experiment;
  c.values_ = Defaults(experiment);
  for (const auto &[k, v] : overrides) c.Set(k, v);
  ApplyDomainDefaults(experiment, overrides, c.values_);
  if (c.values_["output_dir"].empty()) c.values_["output_dir"] = "results/" + experiment;
  return c;
}

ExperimentConfig ExperimentConfig::FromText(std::string_view text, const std::string &experiment) {
  Values kv = ParseKeyValues(text);
  std::string id = experiment;
  if (auto it = kv.find("experiment"); it != kv.end()) {
    if (!id.empty() && it->second != id) {
      Fail(ErrorCode::kInvalidArgument,
           "config is for " + it->second + ", not " + id);
    }
    id = it->second;
    kv.erase(it);
  }
  if (id.empty()) Fail(ErrorCode::kInvalidArgument, "config names no experiment");
  return For(id, kv);
}

ExperimentConfig ExperimentConfig::Load(const std::string &path, const std::string &experiment) {
  return FromText(ReadFile(path), experiment);
}

void ExperimentConfig::Set(const std::string &key, const std::string &value) {
  auto it = values_.find(key);
  if (it == values_.end()) {
    Fail(ErrorCode::kInvalidArgument, "unknown key '" + key + "' for " + experiment_);
  }
  it->second = value;
}

std::string ExperimentConfig::Str(const std::string &key) const {
  auto it = values_.find(key);
  if (it == values_.end()) Fail(ErrorCode::kNotFound, "no setting " + key);
  return it->second;
}

int ExperimentConfig::Int(const std::string &key) const {
  long long x = ParseInteger(key, Str(key));
  if (x < -2147483647LL || x > 2147483647LL) {
    Fail(ErrorCode::kInvalidArgument, key + ": out of range");
  }
  return static_cast<int>(x);
}

uint64_t ExperimentConfig::Uint(const std::string &key) const {
  std::string s = Str(key);
  try {
    size_t used = 0;
    if (!s.empty() && s[0] == '-') throw std::invalid_argument(s);
    uint64_t x = std::stoull(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return x;
  } catch (const std::logic_error &) {
    Fail(ErrorCode::kInvalidArgument, key + ": expected a non-negative integer, got '" + s + "'");
  }
}

double ExperimentConfig::Double(const std::string &key) const {
  return ParseDouble(key, Str(key));
}

bool ExperimentConfig::Bool(const std::string &key) const { return ParseBool(key, Str(key)); }

std::vector<int> ExperimentConfig::Ints(const std::string &key) const {
  std::vector<int> out;
  for (const std::string &part : Split(Str(key), ',')) {
    out.push_back(static_cast<int>(ParseInteger(key, Trim(part))));
  }
  return out;
}

void ExperimentConfig::Validate() const {
  auto need = [](bool ok, const std::string &key, const std::string &what) {
    if (!ok) Fail(ErrorCode::kInvalidArgument, key + ": " + what);
  };
  auto probability = [&](const std::string &key) {
    if (!values_.count(key) || IsWorld(key)) return;
    double p = Double(key);
    need(p >= 0.0 && p <= 1.0, key, "must lie in [0, 1]");
  };
  Uint("seed");
  need(Int("trials") >= 1, "trials", "must be at least 1");
  need(Int("threads") >= 0, "threads", "must be non-negative");
  double tf = Double("train_fraction");
  need(tf > 0.0 && tf < 1.0, "train_fraction", "must lie in (0, 1)");
  for (const char *key : {"noise", "tau", "boundary_band", "leaf_support_fraction",
                          "validation_fraction", "p_home", "p_fail", "p_miss"}) {
    probability(key);
  }
  if (values_.count("domain")) {
    std::string d = Str("domain");
    bool ok = experiment_ == "axiom-ablation" ? (d == "ss" || d == "ts")
                                              : d == experiment_.substr(0, 2);
    need(ok, "domain", "'" + d + "' does not fit " + experiment_);
  }
  if (values_.count("sizes")) {
    std::vector<int> sizes = Ints("sizes");
    need(!sizes.empty(), "sizes", "empty");
    need(std::is_sorted(sizes.begin(), sizes.end()), "sizes", "must be ascending");
    for (int s : sizes) need(s >= 1, "sizes", "must be positive");
  }
  for (const char *key : {"remove", "min_leaf_support", "per_scene", "max_replans",
                          "max_horizon"}) {
    if (values_.count(key)) need(Int(key) >= 0, key, "must be non-negative");
  }
  if (values_.count("per_scene")) need(Int("per_scene") >= 1, "per_scene", "must be at least 1");
  if (values_.count("examples")) need(Int("examples") >= 3, "examples", "must be at least 3");
  if (values_.count("prune")) Bool("prune");
  if (values_.count("learn")) Bool("learn");
  if (values_.count("min_gain")) need(Double("min_gain") >= 0.0, "min_gain", "must be non-negative");
  if (values_.count("kb")) {
    need(std::filesystem::exists(DataPath(Str("kb"))), "kb", "no file " + DataPath(Str("kb")));
  }
  if (values_.count("map")) {
    std::string m = Str("map");
    need(m == "canonical" || m == "random", "map", "expected canonical or random");
    need(Int("min_places") >= 1 && Int("max_places") >= Int("min_places"), "max_places",
         "bad place range");
  }
}

std::string ExperimentConfig::ToText() const {
  std::ostringstream out;
  out << "experiment = " << experiment_ << "\n";
  for (const auto &[k, v] : values_) out << k << " = " << v << "\n";
  return out.str();
}

}  // namespace aspire::harness
