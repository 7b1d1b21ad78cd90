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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "doctest.h"
#include "dpnoise/mechanisms.hpp"
#include "dpnoise/privacy.hpp"

using namespace dpnoise;

namespace {

// Reference oracle: sup over all output subsets S and all shifts s with
// 1 <= |s| <= sensitivity of P(N in S) - e^eps P(N + s in S), computed by
// brute-force enumeration of the 2^n subsets of the support.
double subset_oracle(const Finite1D& f, double epsilon,
                     std::int64_t sensitivity) {
  std::size_t n = f.probs.size();
  REQUIRE(n <= 14);
  double best = 0.0;
  double ee = std::exp(epsilon);
  for (std::int64_t s = -sensitivity; s <= sensitivity; ++s) {
    if (s == 0) continue;
    for (std::size_t mask = 1; mask < (std::size_t(1) << n); ++mask) {
      double diff = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        if (!(mask & (std::size_t(1) << i))) continue;
        std::int64_t k = f.offset + std::int64_t(i);
        diff += f.prob_at(k) - ee * f.prob_at(k + s);
      }
      best = std::max(best, diff);
    }
  }
  return best;
}

Finite1D normalized(std::vector<double> w, std::int64_t offset) {
  double sum = 0.0;
  for (double x : w) sum += x;
  for (double& x : w) x /= sum;
  return Finite1D{offset, std::move(w)};
}

}  // namespace

TEST_CASE("tightest delta equals the subset oracle on small supports") {
  std::vector<Finite1D> pmfs = {
      normalized({1, 2, 3, 4, 3, 2, 1}, -3),
      normalized({5, 1, 1, 1, 5}, -2),
      normalized({1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1}, -6),
      normalized({1, 0, 4, 0, 1, 7, 1, 0, 4, 0, 1}, -5),
      normalized({0.5, 9, 0.5}, -1),
  };
  for (const auto& f : pmfs) {
    NoiseDistribution d{f};
    for (double eps : {0.0, 0.1, 1.0}) {
      for (std::int64_t D : {1, 2}) {
        auto rep = tightest_delta_1d(d, eps, D);
        double oracle = subset_oracle(f, eps, D);
        CHECK(rep.tightest_delta == doctest::Approx(oracle).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("uniform mechanism attains exactly its target delta") {
  for (std::int64_t D : {1, 2, 3}) {
    for (double delta : {0.25, 0.05}) {
      PrivacyParams p{0.0, delta, D, 1};
      auto d = uniform_mechanism_1d(p);
      auto rep = check_dp(d, p);
      CHECK(rep.tightest_delta == doctest::Approx(delta).epsilon(1e-14));
      CHECK(rep.satisfies);
    }
  }
}

TEST_CASE("geometric mechanism is (eps, 0)-DP") {
  PrivacyParams p{1.0, 0.0, 1, 1};
  auto d = discrete_laplace(p);
  auto rep = check_dp(d, p);
  CHECK(rep.tightest_delta <= 1e-12);
  CHECK(rep.satisfies);
  // At a smaller epsilon budget the same pmf must fail.
  PrivacyParams tight{0.5, 0.0, 1, 1};
  auto rep2 = check_dp(d, tight);
  CHECK_FALSE(rep2.satisfies);
  CHECK(rep2.tightest_delta > 0.0);
}

TEST_CASE("worst shift is reported lexicographically smallest") {
  // Symmetric pmf: shifts -1 and +1 tie; -1 must win.
  auto f = normalized({1, 2, 1}, -1);
  auto rep = tightest_delta_1d(NoiseDistribution{f}, 0.0, 1);
  REQUIRE(rep.worst_shift.size() == 1);
  CHECK(rep.worst_shift[0] == -1);
}

TEST_CASE("product tightest delta matches a joint brute force") {
  // d = 2 product of a small pmf; enumerate the joint table directly.
  auto f = normalized({1, 3, 2}, -1);
  NoiseDistribution prod{std::vector<Axis1D>{f, f}};
  for (double eps : {0.0, 0.5}) {
    for (std::int64_t D : {1, 2}) {
      auto rep = tightest_delta_multi(prod, eps, D);
      double ee = std::exp(eps);
      double best = 0.0;
      for (std::int64_t s0 = -D; s0 <= D; ++s0) {
        for (std::int64_t s1 = -D; s1 <= D; ++s1) {
          std::int64_t l1 = std::abs(s0) + std::abs(s1);
          if (l1 < 1 || l1 > D) continue;
          double acc = 0.0;
          for (std::int64_t a = f.lo(); a <= f.hi(); ++a) {
            for (std::int64_t b = f.lo(); b <= f.hi(); ++b) {
              double pa = f.prob_at(a) * f.prob_at(b);
              double pb = f.prob_at(a + s0) * f.prob_at(b + s1);
              acc += std::max(pa - ee * pb, 0.0);
            }
          }
          best = std::max(best, acc);
        }
      }
      CHECK(rep.tightest_delta == doctest::Approx(best).epsilon(1e-12));
    }
  }
}

TEST_CASE("multi-axis uniform product stays within budget") {
  PrivacyParams p{0.0, 0.05, 1, 2};
  auto d = uniform_mechanism_multi(p);
  auto rep = check_dp(d, p);
  CHECK(rep.satisfies);
  CHECK(rep.tightest_delta == doctest::Approx(0.05).epsilon(1e-12));
}

TEST_CASE("oversized joint supports are rejected") {
  PrivacyParams p{0.0, 0.0005, 1, 3};
  auto d = uniform_mechanism_multi(p);  // 1000^3 joint cells
  try {
    tightest_delta_multi(d, 0.0, 1);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::SupportTooLarge);
  }
}
