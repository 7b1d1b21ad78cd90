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

#ifndef DPNOISE_PRIVACY_HPP_
#define DPNOISE_PRIVACY_HPP_

#include <cstdint>
#include <vector>

#include "dpnoise/core.hpp"

namespace dpnoise {

struct PrivacyReport {
  double tightest_delta = 0.0;
  std::vector<std::int64_t> worst_shift;
  bool satisfies = false;
};

// Smallest delta such that the pmf is (epsilon, delta)-DP at the given
// sensitivity: max over shifts 1 <= |s| <= sensitivity of
// sum_k max(p_k - e^eps p_{k+s}, 0). The positive-margin sum equals the
// supremum over output sets because the optimal set collects exactly the
// indices with positive margin.
PrivacyReport tightest_delta_1d(const NoiseDistribution& dist, double epsilon,
                                std::int64_t sensitivity);

// Same over shift vectors v with 1 <= |v|_1 <= sensitivity on the expanded
// joint table of a product distribution. worst_shift is the lexicographically
// smallest maximizer.
PrivacyReport tightest_delta_multi(const NoiseDistribution& dist,
                                   double epsilon, std::int64_t sensitivity);

// Wraps the two above and compares against params.delta.
PrivacyReport check_dp(const NoiseDistribution& dist,
                       const PrivacyParams& params);

}  // namespace dpnoise

#endif  // DPNOISE_PRIVACY_HPP_
