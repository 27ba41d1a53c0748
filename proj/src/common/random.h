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

#ifndef ASPIRE_COMMON_RANDOM_H_
#define ASPIRE_COMMON_RANDOM_H_

#include <cstdint>
#include <random>
#include <vector>

namespace aspire {

// Seeded generator with distribution helpers written out by hand so that
// streams are identical across standard library implementations.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t Next() { return engine_(); }

  // Uniform in [0, 1).
  double Uniform() { return (engine_() >> 11) * 0x1.0p-53; }
  double Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform(); }

  // Uniform integer in [0, n). n must be positive.
  uint64_t Below(uint64_t n);
  int Int(int lo, int hi) {
    return lo + static_cast<int>(Below(static_cast<uint64_t>(hi - lo + 1)));
  }

  bool Bernoulli(double p) { return Uniform() < p; }

  template <typename T>
  void Shuffle(std::vector<T> &v) {
    for (size_t i = v.size(); i > 1; --i) {
      size_t j = Below(i);
      std::swap(v[i - 1], v[j]);
    }
  }

  // k distinct indices from [0, n) in draw order.
  std::vector<size_t> Sample(size_t n, size_t k);

 private:
  std::mt19937_64 engine_;
};

// Derives an independent stream seed from a base seed and an index.
uint64_t DeriveSeed(uint64_t base, uint64_t index);

}  // namespace aspire

#endif  // ASPIRE_COMMON_RANDOM_H_
