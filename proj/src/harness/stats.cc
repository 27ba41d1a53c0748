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

#include "harness/stats.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "common/error.h"

namespace aspire::harness {
namespace {

std::vector<double> Ranks(const std::vector<double> &v) {
  std::vector<size_t> order(v.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) { return v[a] < v[b]; });
  std::vector<double> rank(v.size());
  for (size_t i = 0; i < order.size();) {
    size_t j = i;
    while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) ++j;
    double r = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (size_t k = i; k <= j; ++k) rank[order[k]] = r;
    i = j + 1;
  }
  return rank;
}

}  // namespace

SignTest PairedSignTest(const std::vector<double> &a, const std::vector<double> &b) {
  if (a.size() != b.size()) Fail(ErrorCode::kInvalidArgument, "sign test: unpaired samples");
  SignTest t;
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) {
      ++t.wins;
    } else if (a[i] < b[i]) {
      ++t.losses;
    } else {
      ++t.ties;
    }
  }
  int n = t.wins + t.losses;
  if (n == 0) return t;
  int k = std::min(t.wins, t.losses);
  // P(X <= k) for X ~ Binomial(n, 1/2), summed in log space.
  double tail = 0.0;
  for (int i = 0; i <= k; ++i) {
    tail += std::exp(std::lgamma(n + 1.0) - std::lgamma(i + 1.0) - std::lgamma(n - i + 1.0) -
                     n * std::log(2.0));
  }
  t.p_value = std::min(1.0, 2.0 * tail);
  return t;
}

double Spearman(const std::vector<double> &x, const std::vector<double> &y) {
  if (x.size() != y.size()) Fail(ErrorCode::kInvalidArgument, "spearman: unpaired samples");
  if (x.size() < 2) return 0.0;
  std::vector<double> rx = Ranks(x), ry = Ranks(y);
  double mx = Mean(rx), my = Mean(ry);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

double Mean(const std::vector<double> &v) {
  if (v.empty()) return 0.0;
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

}  // namespace aspire::harness
