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

#include <cmath>

#include "doctest.h"
#include "dpnoise/bounds.hpp"
#include "dpnoise/lp.hpp"
#include "dpnoise/mechanisms.hpp"
#include "dpnoise/privacy.hpp"

using namespace dpnoise;

TEST_CASE("reference optima at epsilon zero") {
  PrivacyParams p{0.0, 0.05, 3, 1};
  auto l1 = lp_solve_for(CostFn::l1(), p);
  CHECK(l1.status == LpSolution::Status::Optimal);
  CHECK(l1.optimal_value == doctest::Approx(14.5).epsilon(1e-11));
  auto l2 = lp_solve_for(CostFn::l2(), p);
  CHECK(l2.status == LpSolution::Status::Optimal);
  CHECK(l2.optimal_value == doctest::Approx(284.5).epsilon(1e-9));
}

TEST_CASE("tight truncation is flagged, wide truncation is not") {
  PrivacyParams p{0.0, 0.25, 1, 1};
  auto wide = lp_solve_for(CostFn::l1(), p, 40);
  CHECK(wide.status == LpSolution::Status::Optimal);
  CHECK(wide.optimal_value == doctest::Approx(1.0).epsilon(1e-11));
  // With delta far below epsilon the optimum is near-geometric, so a short
  // window leaves visible boundary mass while a wide one does not.
  PrivacyParams q{1.0, 1e-9, 1, 1};
  auto tight = lp_solve_for(CostFn::l1(), q, 20);
  CHECK(tight.status == LpSolution::Status::TruncationSuspect);
  CHECK(tight.boundary_mass >= 1e-10);
  auto wide2 = lp_solve_for(CostFn::l1(), q, 120);
  CHECK(wide2.status == LpSolution::Status::Optimal);
}

TEST_CASE("optimum is stable under doubling the truncation") {
  PrivacyParams p{0.0, 0.05, 2, 1};
  auto a = lp_solve_for(CostFn::l1(), p);
  auto b = lp_solve_for(CostFn::l1(), p, 2 * a.pmf.hi() + 20);
  CHECK(a.optimal_value == doctest::Approx(b.optimal_value).epsilon(1e-10));
}

TEST_CASE("lp solution pmf is a valid symmetric pmf") {
  PrivacyParams p{0.0, 0.05, 3, 1};
  auto sol = lp_solve_for(CostFn::l1(), p);
  double sum = 0.0;
  for (double q : sol.pmf.probs) {
    CHECK(q >= -1e-12);
    sum += q;
  }
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-10));
  for (std::int64_t k = 0; k <= sol.pmf.hi(); ++k)
    CHECK(sol.pmf.prob_at(k) == doctest::Approx(sol.pmf.prob_at(-k)));
  // The optimizing point of the relaxation is generally not itself a valid
  // mechanism; only its value is meaningful, and it matches the cost of the
  // genuinely private uniform mechanism here.
  PrivacyParams unif{0.0, 0.05, 3, 1};
  auto rep = check_dp(uniform_mechanism_1d(unif), unif);
  CHECK(rep.satisfies);
  CHECK(sol.optimal_value <=
        expected_cost(uniform_mechanism_1d(unif), CostFn::l1()) + 1e-9);
}

TEST_CASE("optimum never exceeds the mechanism costs") {
  for (double delta : {0.25, 0.05}) {
    for (std::int64_t D : {1, 2, 3}) {
      PrivacyParams p{0.0, delta, D, 1};
      auto sol = lp_solve_for(CostFn::l1(), p);
      auto ub = ub_uniform_1d(CostFn::l1(), D, delta);
      CHECK(sol.optimal_value <= ub.value + 1e-9);
    }
  }
  PrivacyParams q{1.0, 1e-9, 1, 1};
  auto sol = lp_solve_for(CostFn::l1(), q);
  auto lap = ub_laplace(CostFn::l1(), 1, 1.0);
  CHECK(sol.optimal_value <= lap.value + 1e-7);
}

TEST_CASE("optimum decreases as delta grows") {
  double prev = 1e300;
  for (double delta : {0.01, 0.025, 0.05, 0.125, 0.25}) {
    PrivacyParams p{0.0, delta, 1, 1};
    auto sol = lp_solve_for(CostFn::l1(), p);
    CHECK(sol.optimal_value < prev + 1e-12);
    prev = sol.optimal_value;
  }
}

TEST_CASE("epsilon-positive relaxation matches the geometric mechanism") {
  // With delta far below epsilon the geometric mechanism is near optimal,
  // so the relaxation's optimum must sit just below its cost.
  PrivacyParams p{1.0, 1e-9, 1, 1};
  auto sol = lp_solve_for(CostFn::l1(), p);
  double lap = ub_laplace(CostFn::l1(), 1, 1.0).value;
  CHECK(sol.optimal_value <= lap + 1e-9);
  CHECK(sol.optimal_value >= lap - 1e-3);
}

TEST_CASE("default truncation branches") {
  CHECK(default_truncation(0.0, 0.05, 2) >= 2 * 10);
  CHECK(default_truncation(1.0, 0.0, 1) >= 14);
  // delta and epsilon both positive: window covers the shorter regime.
  auto n = default_truncation(0.001, 0.001, 1);
  CHECK(n >= 500);
}

TEST_CASE("lp lower bound report plumbing") {
  PrivacyParams p{0.0, 0.05, 3, 1};
  auto rep = lp_lower_bound(CostFn::l1(), p);
  CHECK(rep.value == doctest::Approx(14.5).epsilon(1e-11));
  CHECK(rep.kind == BoundReport::Kind::Lower);
  CHECK(rep.method == "lp");
}

TEST_CASE("truncations below the admissible window are rejected") {
  // At delta = 0 the constraint system needs roughly 12/epsilon variables;
  // anything shorter is refused up front rather than mis-solved.
  try {
    build_relaxed_lp(CostFn::l1(), 1, 0.001, 0.0, 30);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::TruncationTooSmall);
  }
}

TEST_CASE("contradictory rows report infeasible") {
  LpProblem prob;
  prob.truncation = 1;
  prob.objective = {0.0, 2.0};
  LpProblem::Row mass;
  mass.coeffs = {0.5, 1.0};
  mass.rhs = 0.5;
  mass.ge = true;
  LpProblem::Row cap;
  cap.coeffs = {1.0, 1.0};
  cap.rhs = 0.1;
  cap.ge = false;
  prob.rows = {mass, cap};
  auto sol = solve_lp(prob, 1);
  CHECK(sol.status == LpSolution::Status::Infeasible);
}

TEST_CASE("power cost objective runs through the same pipeline") {
  PrivacyParams p{0.0, 0.25, 1, 1};
  auto sol = lp_solve_for(CostFn::power(3), p, 40);
  CHECK(sol.status == LpSolution::Status::Optimal);
  CHECK(sol.optimal_value > 0.0);
}
