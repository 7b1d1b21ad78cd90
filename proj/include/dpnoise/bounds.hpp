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

#ifndef DPNOISE_BOUNDS_HPP_
#define DPNOISE_BOUNDS_HPP_

#include <cstdint>

#include "dpnoise/core.hpp"

namespace dpnoise {

// Geometric series parameters behind the (eps, delta) lower bound:
// a = (delta + (e^eps - 1)/2) / e^eps, b = e^{-eps}, and the real n with
// sum_{k=0}^{n-1} a b^k = 1/2 (infinite when delta = 0).
struct EpsDeltaSeriesParams {
  double a = 0.0;
  double b = 1.0;
  double n_star = 0.0;  // may be +inf

  static EpsDeltaSeriesParams from(double epsilon, double delta);
};

BoundReport lb_zero_delta(const CostFn& cost, std::int64_t sensitivity,
                          double delta);
BoundReport ub_uniform_1d(const CostFn& cost, std::int64_t sensitivity,
                          double delta);
// Best verified lower bound at eps > 0 or delta > 0: series-length
// certificate when it verifies, truncated-program optimum otherwise, with a
// beta-regime certificate as the last resort for l1/l2.
BoundReport lb_eps_delta(const CostFn& cost, std::int64_t sensitivity,
                         double epsilon, double delta);
BoundReport ub_laplace(const CostFn& cost, std::int64_t sensitivity,
                       double epsilon);

BoundReport lb_multi_zero_delta(const CostFn& cost, std::int64_t dims,
                                std::int64_t sensitivity, double delta);
BoundReport ub_uniform_multi(const CostFn& cost, std::int64_t dims,
                             std::int64_t sensitivity, double delta);
BoundReport ub_laplace_multi(const CostFn& cost, std::int64_t dims,
                             std::int64_t sensitivity, double epsilon);
BoundReport lb_multi_eps_delta(const CostFn& cost, std::int64_t dims,
                               std::int64_t sensitivity, double epsilon,
                               double delta);

struct GapReport {
  BoundReport lower;
  BoundReport upper;
  double ratio = 0.0;  // upper.value / lower.value
};

// Best available lower bound and the cheaper of the two mechanisms.
GapReport gap_report(const CostFn& cost, const PrivacyParams& params);

}  // namespace dpnoise

#endif  // DPNOISE_BOUNDS_HPP_
