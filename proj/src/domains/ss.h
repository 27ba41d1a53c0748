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

#ifndef ASPIRE_DOMAINS_SS_H_
#define ASPIRE_DOMAINS_SS_H_

#include <cstdint>
#include <string>
#include <vector>

#include "features/scene.h"

namespace aspire::domains {

struct SsParams {
  double lean_threshold = 5.0;          // degrees
  double displacement_threshold = 0.25; // fraction of block width
  double narrow_threshold = 1.0;        // base width below this is narrow
  // Fraction of scenes drawn near a threshold, where the discrete
  // features under-determine the label.
  double boundary_band = 0.15;
  double band_width = 0.1;              // relative half width of the band
  std::vector<double> p_blocks = {0.15, 0.2, 0.25, 0.2, 0.2};
  double p_lean = 0.35;
  double p_narrow = 0.5;
  double p_displaced = 0.2;
};

FeatureSchema SsSchema();
FeatureProvider SsProvider(const SsParams &params = {});

// Canonical continuous labeler: unstable iff there are at least two
// blocks and the lean or the displacement exceeds its threshold, scaled
// by the base (a wide base tolerates a little more).
std::string SsGoldLabel(const SceneRecord &scene, const SsParams &params = {});

std::vector<SceneRecord> GenSs(int n, uint64_t seed, const SsParams &params = {});

}  // namespace aspire::domains

#endif  // ASPIRE_DOMAINS_SS_H_
