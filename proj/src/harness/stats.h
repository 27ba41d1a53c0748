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

#ifndef ASPIRE_HARNESS_STATS_H_
#define ASPIRE_HARNESS_STATS_H_

#include <vector>

namespace aspire::harness {

struct SignTest {
  int wins = 0;    // a > b
  int losses = 0;  // a < b
  int ties = 0;
  double p_value = 1.0;  // exact, two-sided; ties dropped
};

// Paired sign test of a against b. Throws kInvalidArgument on a length
// mismatch.
SignTest PairedSignTest(const std::vector<double> &a, const std::vector<double> &b);

// Spearman rank correlation with average ranks for ties. Zero when
// either side is constant.
double Spearman(const std::vector<double> &x, const std::vector<double> &y);

double Mean(const std::vector<double> &v);

}  // namespace aspire::harness

#endif  // ASPIRE_HARNESS_STATS_H_
