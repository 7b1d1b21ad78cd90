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

#ifndef DPNOISE_HYPOTEST_HPP_
#define DPNOISE_HYPOTEST_HPP_

#include <utility>
#include <vector>

#include "dpnoise/common.hpp"

namespace dpnoise {

// Lower boundary of the feasible (false-alarm, missed-detection) region
// under the privacy constraint pair
//   p_fa + e^eps p_md >= 1 - delta and e^eps p_fa + p_md >= 1 - delta.
struct TradeoffRegion {
  double epsilon = 0.0;
  double delta = 0.0;
  std::vector<std::pair<double, double>> vertices;  // (p_fa, p_md)
};

// Always three vertices: (0, 1-delta), the diagonal point, (1-delta, 0).
// The middle vertex is kept even when collinear (epsilon = 0) so the output
// schema is fixed.
TradeoffRegion tradeoff_region(double epsilon, double delta);

bool point_feasible(const TradeoffRegion& region, double p_fa, double p_md);

}  // namespace dpnoise

#endif  // DPNOISE_HYPOTEST_HPP_
