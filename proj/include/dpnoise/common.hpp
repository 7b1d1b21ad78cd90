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

#ifndef DPNOISE_COMMON_HPP_
#define DPNOISE_COMMON_HPP_

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace dpnoise {

enum class Errc {
  NegativeProbability,
  NotNormalized,
  LambdaOutOfRange,
  TableOutOfRange,
  DivergentCost,
  IntegralityViolated,
  EpsilonZero,
  SupportTooLarge,
  NegativeWeight,
  NoFeasibleCertificate,
  RegimeMismatch,
  TruncationTooSmall,
  Unbounded,
  Infeasible,
  InvalidParams,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& msg)
      : std::runtime_error(std::string(errc_name(code)) + ": " + msg),
        code_(code) {}

  Errc code() const { return code_; }

 private:
  Errc code_;
};

// Neumaier variant of Kahan summation. Used everywhere a long sum feeds a
// tolerance-sensitive comparison.
template <typename Real = double>
struct CompensatedSum {
  Real sum = 0;
  Real comp = 0;

  void add(Real x) {
    Real t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      comp += (sum - t) + x;
    } else {
      comp += (x - t) + sum;
    }
    sum = t;
  }

  Real value() const { return sum + comp; }
};

using NeumaierSum = CompensatedSum<double>;
using NeumaierSumL = CompensatedSum<long double>;

struct PrivacyParams {
  double epsilon = 0.0;
  double delta = 0.0;
  std::int64_t sensitivity = 1;
  std::int64_t dims = 1;

  // Throws Error on out-of-range fields or (epsilon, delta) == (0, 0).
  void validate() const;
};

// Checks that x is an integer up to a relative tolerance and returns it.
// Throws Error(IntegralityViolated) with `what` in the message otherwise.
std::int64_t require_integer(double x, const std::string& what);

}  // namespace dpnoise

#endif  // DPNOISE_COMMON_HPP_
