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

#ifndef DPNOISE_LP_HPP_
#define DPNOISE_LP_HPP_

#include <cstdint>
#include <vector>

#include "dpnoise/core.hpp"

namespace dpnoise {

// Truncated relaxation over the symmetric half-line variables p_0..p_N.
struct LpProblem {
  struct Row {
    std::vector<double> coeffs;  // dense, size num_vars
    double rhs = 0.0;
    bool ge = false;  // true: sum >= rhs, false: sum <= rhs
  };

  std::int64_t truncation = 0;        // N
  std::vector<double> objective;      // 2 L(k), L(0) term 0
  std::vector<Row> rows;

  std::int64_t num_vars() const {
    return static_cast<std::int64_t>(objective.size());
  }
};

struct LpSolution {
  enum class Status { Optimal, TruncationSuspect, Infeasible };

  double optimal_value = 0.0;
  Finite1D pmf;  // symmetrized full-line pmf
  Status status = Status::Optimal;
  double boundary_mass = 0.0;  // full-line mass at |k| >= N - sensitivity
  std::int64_t iterations = 0;
};

const char* lp_status_name(LpSolution::Status s);

// Default truncation: ceil((1/(2 delta) + 6) * sensitivity) for delta > 0,
// ceil(14 * sensitivity / epsilon) for delta = 0.
std::int64_t default_truncation(double epsilon, double delta,
                                std::int64_t sensitivity);

// Mass row p_0/2 + sum p_k >= 1/2 plus, for epsilon = 0, window rows
// sum_{l=0}^{D-1} p_{k+l} <= delta, and for epsilon > 0 the three
// tail-adjusted row families of the relaxation.
LpProblem build_relaxed_lp(const CostFn& cost, std::int64_t sensitivity,
                           double epsilon, double delta, std::int64_t N);

// Dense two-phase tableau simplex, long double arithmetic. Deterministic:
// Dantzig pricing with lowest-index tie-breaks, falling back to Bland's rule
// when the objective stalls.
LpSolution solve_lp(const LpProblem& problem,
                    std::int64_t sensitivity = 1);

// build + solve; N <= 0 picks the default truncation.
BoundReport lp_lower_bound(const CostFn& cost, const PrivacyParams& params,
                           std::int64_t N = 0);
LpSolution lp_solve_for(const CostFn& cost, const PrivacyParams& params,
                        std::int64_t N = 0);

}  // namespace dpnoise

#endif  // DPNOISE_LP_HPP_
