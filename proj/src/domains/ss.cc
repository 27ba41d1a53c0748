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

#include "domains/ss.h"

#include <cmath>

#include "common/error.h"
#include "common/random.h"
#include "common/text.h"

namespace aspire::domains {

FeatureSchema SsSchema() {
  return FeatureSchema({{"num_blocks", {"1", "2", "3", "4", "5"}},
                        {"base", {"wide", "narrow"}},
                        {"lean", {"true", "false"}},
                        {"displaced", {"true", "false"}}});
}

FeatureProvider SsProvider(const SsParams &params) {
  return FeatureProvider("ss", SsSchema(), [params](const SceneRecord &s) {
    FeatureVector f;
    double n = s.Number("n_blocks");
    if (n < 1 || n > 5 || n != std::floor(n)) {
      Fail(ErrorCode::kInvalidArgument, "n_blocks outside 1..5");
    }
    f["num_blocks"] = std::to_string(static_cast<int>(n));
    f["base"] = s.Number("base_width") < params.narrow_threshold ? "narrow" : "wide";
    f["lean"] = std::fabs(s.Number("lean_angle")) > params.lean_threshold ? "true" : "false";
    f["displaced"] = s.Number("displacement") > params.displacement_threshold ? "true" : "false";
    return f;
  });
}

std::string SsGoldLabel(const SceneRecord &s, const SsParams &params) {
  if (s.Number("n_blocks") < 2) return "stable";
  double tolerance = s.Number("base_width") < params.narrow_threshold ? 1.0 - params.band_width
                                                                      : 1.0 + params.band_width;
  bool tips = std::fabs(s.Number("lean_angle")) > params.lean_threshold * tolerance;
  bool slides = s.Number("displacement") > params.displacement_threshold * tolerance;
  return tips || slides ? "unstable" : "stable";
}

namespace {

int Categorical(Rng &rng, const std::vector<double> &p) {
  double u = rng.Uniform(), acc = 0;
  for (size_t i = 0; i < p.size(); ++i) {
    acc += p[i];
    if (u < acc) return static_cast<int>(i);
  }
  return static_cast<int>(p.size()) - 1;
}

// A value clear of the band on the requested side of the threshold.
double Clear(Rng &rng, double threshold, double band, bool above) {
  return above ? rng.Uniform(threshold * (1 + 2 * band), threshold * 3)
               : rng.Uniform(0.0, threshold * (1 - 2 * band));
}

}  // namespace

std::vector<SceneRecord> GenSs(int n, uint64_t seed, const SsParams &params) {
  if (n < 1) Fail(ErrorCode::kInvalidArgument, "gen_ss needs n >= 1");
  static const char *kColors[] = {"red", "blue", "green", "yellow"};
  Rng rng(seed);
  std::vector<SceneRecord> out;
  for (int i = 0; i < n; ++i) {
    int blocks = 1 + Categorical(rng, params.p_blocks);
    bool narrow = rng.Bernoulli(params.p_narrow);
    double width = narrow ? rng.Uniform(0.4, params.narrow_threshold)
                          : rng.Uniform(params.narrow_threshold, 2.0);
    bool lean = blocks > 1 && rng.Bernoulli(params.p_lean);
    bool displaced = blocks > 1 && rng.Bernoulli(params.p_displaced);
    double angle = Clear(rng, params.lean_threshold, params.band_width, lean);
    double shift = Clear(rng, params.displacement_threshold, params.band_width, displaced);
    if (blocks > 1 && rng.Bernoulli(params.boundary_band)) {
      double lo = 1 - params.band_width, hi = 1 + params.band_width;
      if (rng.Bernoulli(0.5)) {
        angle = params.lean_threshold * rng.Uniform(lo, hi);
      } else {
        shift = params.displacement_threshold * rng.Uniform(lo, hi);
      }
    }
    if (blocks == 1) shift = 0.0;
    if (rng.Bernoulli(0.5)) angle = -angle;

    // Block list: size/color/offset, one block carrying the displacement.
    int moved = blocks > 1 ? rng.Int(1, blocks - 1) : -1;
    std::vector<std::string> parts;
    for (int b = 0; b < blocks; ++b) {
      std::string size = rng.Bernoulli(0.5) ? "large" : "small";
      std::string color = kColors[rng.Below(4)];
      parts.push_back(size + "/" + color + "/" + FormatFixed(b == moved ? shift : 0.0, 3));
    }
    SceneRecord s;
    s.domain = "ss";
    s.id = i;
    s.attributes["n_blocks"] = std::to_string(blocks);
    s.attributes["base_width"] = FormatFixed(width, 4);
    s.attributes["lean_angle"] = FormatFixed(angle, 4);
    s.attributes["displacement"] = FormatFixed(shift, 4);
    s.attributes["blocks"] = Join(parts, ",");
    s.label = SsGoldLabel(s, params);
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace aspire::domains
