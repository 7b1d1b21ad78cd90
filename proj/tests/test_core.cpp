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

#include <array>
#include <cmath>

#include "doctest.h"
#include "dpnoise/core.hpp"

using namespace dpnoise;

TEST_CASE("finite pmf support accessors") {
  Finite1D f{-2, {0.1, 0.2, 0.4, 0.2, 0.1}};
  CHECK(f.lo() == -2);
  CHECK(f.hi() == 2);
  CHECK(f.prob_at(0) == doctest::Approx(0.4));
  CHECK(f.prob_at(-3) == 0.0);
  CHECK(f.prob_at(3) == 0.0);
}

TEST_CASE("validate_distribution accepts normalized pmfs") {
  NoiseDistribution d{Finite1D{-1, {0.25, 0.5, 0.25}}};
  CHECK_NOTHROW(validate_distribution(d));
}

TEST_CASE("validate_distribution rejects bad pmfs") {
  NoiseDistribution neg{Finite1D{0, {1.2, -0.2}}};
  try {
    validate_distribution(neg);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NegativeProbability);
  }
  NoiseDistribution off{Finite1D{0, {0.6, 0.3}}};
  try {
    validate_distribution(off);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NotNormalized);
  }
  NoiseDistribution lam{GeometricLaplace{1.0}};
  try {
    validate_distribution(lam);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::LambdaOutOfRange);
  }
}

TEST_CASE("geometric pmf closed forms") {
  GeometricLaplace g{std::exp(-1.0)};
  CHECK(g.mass_at_zero() ==
        doctest::Approx((1 - g.lambda) / (1 + g.lambda)).epsilon(1e-14));
  // Direct series for the first moments.
  double m0 = g.mass_at_zero();
  double s1 = 0.0, s2 = 0.0, mass = m0;
  for (int k = 1; k <= 200; ++k) {
    double p = m0 * std::pow(g.lambda, k);
    mass += 2 * p;
    s1 += 2 * p * k;
    s2 += 2 * p * double(k) * k;
  }
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-12));
  NoiseDistribution d{g};
  CHECK(expected_cost(d, CostFn::l1()) == doctest::Approx(s1).epsilon(1e-12));
  CHECK(expected_cost(d, CostFn::l2()) == doctest::Approx(s2).epsilon(1e-12));
  double lam = g.lambda;
  CHECK(expected_cost(d, CostFn::l1()) ==
        doctest::Approx(2 * lam / (1 - lam * lam)).epsilon(1e-14));
  CHECK(expected_cost(d, CostFn::l2()) ==
        doctest::Approx(2 * lam / ((1 - lam) * (1 - lam))).epsilon(1e-14));
}

TEST_CASE("truncation radius and truncated pmf") {
  GeometricLaplace g{0.5};
  auto r = g.truncation_radius(1e-9);
  double tail = 0.0;
  double m0 = g.mass_at_zero();
  for (std::int64_t k = r + 1; k <= r + 400; ++k)
    tail += 2 * m0 * std::pow(g.lambda, double(k));
  CHECK(tail < 1e-9);
  Finite1D f = g.truncate(1e-9);
  CHECK(f.lo() == -r);
  CHECK(f.hi() == r);
  // The truncation drops the tail rather than renormalizing.
  double sum = 0.0;
  for (double p : f.probs) sum += p;
  CHECK(sum <= 1.0);
  CHECK(sum > 1.0 - 1e-9);
}

TEST_CASE("cost functions on single coordinates") {
  CHECK(CostFn::l1().axis(-3) == 3.0);
  CHECK(CostFn::l2().axis(-3) == 9.0);
  CHECK(CostFn::power(3).axis(2) == 8.0);
  auto t = CostFn::from_table({0.0, 1.0, 5.0});
  CHECK(t.axis(-2) == 5.0);
  try {
    t.axis(3);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::TableOutOfRange);
  }
}

TEST_CASE("cost_value is coordinate additive") {
  std::array<std::int64_t, 3> pt{1, -2, 3};
  CHECK(cost_value(CostFn::l1(), pt) == 6.0);
  CHECK(cost_value(CostFn::l2(), pt) == 14.0);
}

TEST_CASE("expected cost of a product distribution adds per axis") {
  Finite1D f{-1, {0.25, 0.5, 0.25}};
  GeometricLaplace g{0.5};
  NoiseDistribution prod{std::vector<Axis1D>{f, g}};
  double fx = expected_cost(NoiseDistribution{f}, CostFn::l1());
  double gx = expected_cost(NoiseDistribution{g}, CostFn::l1());
  CHECK(expected_cost(prod, CostFn::l1()) ==
        doctest::Approx(fx + gx).epsilon(1e-14));
}

TEST_CASE("table cost past support diverges cleanly") {
  GeometricLaplace g{0.5};
  auto t = CostFn::from_table({0.0, 1.0});
  CHECK_THROWS_AS(expected_cost(NoiseDistribution{g}, t), Error);
}
