// Copyright 2026 The dpnoise Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DPNOISE_MECHANISMS_HPP_
#define DPNOISE_MECHANISMS_HPP_

#include <cstdint>
#include <vector>

#include "dpnoise/core.hpp"

namespace dpnoise {

struct SampleBatch {
  std::uint64_t seed = 0;
  std::vector<std::vector<std::int64_t>> draws;
};

// splitmix64: tiny, seedable, identical stream on every platform.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next();
  // Uniform in [0, 1) with 53 random bits.
  double next_double();

 private:
  std::uint64_t state_;
};

// Uniform noise on [-D/(2 delta), D/(2 delta) - 1] with mass delta/D per
// point. Requires D/(2 delta) to be a positive integer.
NoiseDistribution uniform_mechanism_1d(const PrivacyParams& params);

// Product of dims identical uniform axes.
NoiseDistribution uniform_mechanism_multi(const PrivacyParams& params);

// Two-sided geometric with lambda = exp(-epsilon / sensitivity); a product of
// dims such axes when dims > 1.
NoiseDistribution discrete_laplace(const PrivacyParams& params);

// n deterministic draws. Finite axes use inverse-CDF over the cumulative
// table; geometric axes use the exact zero-mass / magnitude / sign
// decomposition so tail statistics carry no truncation bias.
SampleBatch sample(const NoiseDistribution& dist, std::uint64_t seed,
                   std::size_t n);

}  // namespace dpnoise

#endif  // DPNOISE_MECHANISMS_HPP_
