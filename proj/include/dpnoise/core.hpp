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

#ifndef DPNOISE_CORE_HPP_
#define DPNOISE_CORE_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "dpnoise/common.hpp"

namespace dpnoise {

// Pmf over Z with finite support [offset, offset + probs.size() - 1].
struct Finite1D {
  std::int64_t offset = 0;
  std::vector<double> probs;

  std::int64_t lo() const { return offset; }
  std::int64_t hi() const {
    return offset + static_cast<std::int64_t>(probs.size()) - 1;
  }
  double prob_at(std::int64_t k) const {
    return (k < lo() || k > hi()) ? 0.0
                                  : probs[static_cast<std::size_t>(k - offset)];
  }
};

// Two-sided geometric pmf p_k = ((1-lambda)/(1+lambda)) * lambda^|k|.
struct GeometricLaplace {
  double lambda = 0.5;

  double mass_at_zero() const { return (1.0 - lambda) / (1.0 + lambda); }
  double prob_at(std::int64_t k) const;
  // Smallest R such that the mass outside [-R, R] is < tail_mass.
  std::int64_t truncation_radius(double tail_mass) const;
  Finite1D truncate(double tail_mass) const;
};

using Axis1D = std::variant<Finite1D, GeometricLaplace>;

struct NoiseDistribution {
  // Product is a list of per-axis marginals; the joint pmf is their product.
  std::variant<Finite1D, GeometricLaplace, std::vector<Axis1D>> value;

  bool is_product() const {
    return std::holds_alternative<std::vector<Axis1D>>(value);
  }
  std::int64_t dims() const {
    return is_product()
               ? static_cast<std::int64_t>(
                     std::get<std::vector<Axis1D>>(value).size())
               : 1;
  }
};

struct CostFn {
  enum class Kind { L1, L2, Power, Table };

  Kind kind = Kind::L1;
  std::int64_t power_m = 1;
  std::vector<double> table;  // values[|k|]; error beyond the table

  static CostFn l1() { return {Kind::L1, 1, {}}; }
  static CostFn l2() { return {Kind::L2, 2, {}}; }
  static CostFn power(std::int64_t m);
  static CostFn from_table(std::vector<double> values);

  // Per-coordinate loss at |k|. Throws Error(TableOutOfRange) for Table
  // costs past the stored values.
  double axis(std::int64_t k) const;
  // Polynomial degree used for tail/search-bound arguments (Table costs are
  // bounded, degree 0 is reported as 1 to keep ceil(mu^(1/r)) finite).
  std::int64_t degree() const;
  std::string name() const;
};

struct BoundReport {
  enum class Kind { Lower, Upper };

  double value = 0.0;
  Kind kind = Kind::Lower;
  std::string method;
  bool preconditions_ok = true;
  std::vector<std::string> notes;
};

NoiseDistribution validate_distribution(NoiseDistribution dist);

double cost_value(const CostFn& cost, std::span<const std::int64_t> point);

// Sum L(k) p_k over the support. Closed forms for GeometricLaplace with
// L1/L2, truncated series (tail mass < 1e-12) otherwise. Product with
// coordinate-additive costs reduces to the sum of per-axis expectations.
double expected_cost(const NoiseDistribution& dist, const CostFn& cost);
double expected_cost_axis(const Axis1D& axis, const CostFn& cost);

}  // namespace dpnoise

#endif  // DPNOISE_CORE_HPP_
