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

#include "dpnoise/core.hpp"

#include <cmath>
#include <sstream>

namespace dpnoise {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::NegativeProbability: return "NegativeProbability";
    case Errc::NotNormalized: return "NotNormalized";
    case Errc::LambdaOutOfRange: return "LambdaOutOfRange";
    case Errc::TableOutOfRange: return "TableOutOfRange";
    case Errc::DivergentCost: return "DivergentCost";
    case Errc::IntegralityViolated: return "IntegralityViolated";
    case Errc::EpsilonZero: return "EpsilonZero";
    case Errc::SupportTooLarge: return "SupportTooLarge";
    case Errc::NegativeWeight: return "NegativeWeight";
    case Errc::NoFeasibleCertificate: return "NoFeasibleCertificate";
    case Errc::RegimeMismatch: return "RegimeMismatch";
    case Errc::TruncationTooSmall: return "TruncationTooSmall";
    case Errc::Unbounded: return "Unbounded";
    case Errc::Infeasible: return "Infeasible";
    case Errc::InvalidParams: return "InvalidParams";
  }
  return "UnknownError";
}

void PrivacyParams::validate() const {
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) {
    throw Error(Errc::InvalidParams, "epsilon must be finite and >= 0");
  }
  if (!(delta >= 0.0 && delta <= 1.0)) {
    throw Error(Errc::InvalidParams, "delta must lie in [0, 1]");
  }
  if (sensitivity < 1) {
    throw Error(Errc::InvalidParams, "sensitivity must be a positive integer");
  }
  if (dims < 1) {
    throw Error(Errc::InvalidParams, "dims must be a positive integer");
  }
  if (epsilon == 0.0 && delta == 0.0) {
    throw Error(Errc::InvalidParams,
                "(epsilon, delta) = (0,0) admits no finite-cost mechanism");
  }
}

std::int64_t require_integer(double x, const std::string& what) {
  double r = std::round(x);
  if (std::abs(x - r) > 1e-9 * std::max(1.0, std::abs(x)) || r < -9e18 ||
      r > 9e18) {
    std::ostringstream os;
    os << what << " = " << x << " is not an integer";
    throw Error(Errc::IntegralityViolated, os.str());
  }
  return static_cast<std::int64_t>(r);
}

double GeometricLaplace::prob_at(std::int64_t k) const {
  return mass_at_zero() * std::pow(lambda, static_cast<double>(std::abs(k)));
}

std::int64_t GeometricLaplace::truncation_radius(double tail_mass) const {
  // Mass outside [-R, R] is 2 lambda^{R+1} / (1 + lambda).
  double r = std::log(tail_mass * (1.0 + lambda) / 2.0) / std::log(lambda);
  std::int64_t radius = static_cast<std::int64_t>(std::ceil(r));
  return std::max<std::int64_t>(radius, 1);
}

Finite1D GeometricLaplace::truncate(double tail_mass) const {
  std::int64_t radius = truncation_radius(tail_mass);
  Finite1D out;
  out.offset = -radius;
  out.probs.resize(static_cast<std::size_t>(2 * radius + 1));
  for (std::int64_t k = -radius; k <= radius; ++k) {
    out.probs[static_cast<std::size_t>(k + radius)] = prob_at(k);
  }
  return out;
}

CostFn CostFn::power(std::int64_t m) {
  if (m < 1) throw Error(Errc::InvalidParams, "power exponent must be >= 1");
  return {Kind::Power, m, {}};
}

CostFn CostFn::from_table(std::vector<double> values) {
  if (values.empty() || values[0] != 0.0) {
    throw Error(Errc::InvalidParams, "table cost must start with L(0) = 0");
  }
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] < values[i - 1]) {
      throw Error(Errc::InvalidParams, "table cost must be nondecreasing");
    }
  }
  return {Kind::Table, 1, std::move(values)};
}

double CostFn::axis(std::int64_t k) const {
  std::int64_t a = std::abs(k);
  switch (kind) {
    case Kind::L1:
      return static_cast<double>(a);
    case Kind::L2:
      return static_cast<double>(a) * static_cast<double>(a);
    case Kind::Power:
      return std::pow(static_cast<double>(a), static_cast<double>(power_m));
    case Kind::Table:
      if (a >= static_cast<std::int64_t>(table.size())) {
        std::ostringstream os;
        os << "table cost has no value at |k| = " << a;
        throw Error(Errc::TableOutOfRange, os.str());
      }
      return table[static_cast<std::size_t>(a)];
  }
  return 0.0;
}

std::int64_t CostFn::degree() const {
  switch (kind) {
    case Kind::L1: return 1;
    case Kind::L2: return 2;
    case Kind::Power: return power_m;
    case Kind::Table: return 1;
  }
  return 1;
}

std::string CostFn::name() const {
  switch (kind) {
    case Kind::L1: return "l1";
    case Kind::L2: return "l2";
    case Kind::Power: return "power:" + std::to_string(power_m);
    case Kind::Table: return "table";
  }
  return "?";
}

namespace {

void validate_finite(const Finite1D& f) {
  if (f.probs.empty()) {
    throw Error(Errc::InvalidParams, "empty support");
  }
  NeumaierSum total;
  for (double p : f.probs) {
    if (p < 0.0 || !std::isfinite(p)) {
      throw Error(Errc::NegativeProbability,
                  "probability " + std::to_string(p));
    }
    total.add(p);
  }
  double dev = total.value() - 1.0;
  if (std::abs(dev) > 1e-12) {
    std::ostringstream os;
    os << "probabilities sum to 1 " << (dev > 0 ? "+ " : "- ")
       << std::abs(dev);
    throw Error(Errc::NotNormalized, os.str());
  }
}

void validate_geometric(const GeometricLaplace& g) {
  if (!(g.lambda > 0.0 && g.lambda < 1.0)) {
    throw Error(Errc::LambdaOutOfRange,
                "lambda = " + std::to_string(g.lambda) +
                    " outside the open interval (0, 1)");
  }
}

}  // namespace

NoiseDistribution validate_distribution(NoiseDistribution dist) {
  if (const auto* f = std::get_if<Finite1D>(&dist.value)) {
    validate_finite(*f);
  } else if (const auto* g = std::get_if<GeometricLaplace>(&dist.value)) {
    validate_geometric(*g);
  } else {
    const auto& axes = std::get<std::vector<Axis1D>>(dist.value);
    if (axes.empty()) {
      throw Error(Errc::InvalidParams, "product distribution needs >= 1 axis");
    }
    for (const Axis1D& a : axes) {
      if (const auto* f = std::get_if<Finite1D>(&a)) {
        validate_finite(*f);
      } else {
        validate_geometric(std::get<GeometricLaplace>(a));
      }
    }
  }
  return dist;
}

double cost_value(const CostFn& cost, std::span<const std::int64_t> point) {
  NeumaierSum s;
  for (std::int64_t k : point) s.add(cost.axis(k));
  return s.value();
}

namespace {

double expected_cost_finite(const Finite1D& f, const CostFn& cost) {
  NeumaierSum s;
  for (std::size_t i = 0; i < f.probs.size(); ++i) {
    std::int64_t k = f.offset + static_cast<std::int64_t>(i);
    if (f.probs[i] != 0.0) s.add(cost.axis(k) * f.probs[i]);
  }
  return s.value();
}

double expected_cost_geometric(const GeometricLaplace& g, const CostFn& cost) {
  double l = g.lambda;
  switch (cost.kind) {
    case CostFn::Kind::L1:
      return 2.0 * l / (1.0 - l * l);
    case CostFn::Kind::L2:
      return 2.0 * l / ((1.0 - l) * (1.0 - l));
    default:
      break;
  }
  // Truncated series; terms L(k) p_k with polynomial L always converge for
  // lambda < 1. Stop once the cost-weighted tail is below 1e-12.
  NeumaierSum s;
  double p0 = g.mass_at_zero();
  // Conservative cap: tail mass past R is < 1e-13 and the polynomial factor
  // is dominated by an extra (1 - lambda)^{-degree} margin.
  std::int64_t cap =
      g.truncation_radius(1e-15) * (cost.degree() + 2) + 64;
  for (std::int64_t k = 1; k <= cap; ++k) {
    double term = 2.0 * p0 * std::pow(l, static_cast<double>(k)) *
                  cost.axis(k);
    s.add(term);
    if (term < 1e-13 * std::max(1.0, s.value()) && k > 8) break;
  }
  return s.value();
}

}  // namespace

double expected_cost_axis(const Axis1D& axis, const CostFn& cost) {
  if (const auto* f = std::get_if<Finite1D>(&axis)) {
    return expected_cost_finite(*f, cost);
  }
  return expected_cost_geometric(std::get<GeometricLaplace>(axis), cost);
}

double expected_cost(const NoiseDistribution& dist, const CostFn& cost) {
  if (const auto* f = std::get_if<Finite1D>(&dist.value)) {
    return expected_cost_finite(*f, cost);
  }
  if (const auto* g = std::get_if<GeometricLaplace>(&dist.value)) {
    return expected_cost_geometric(*g, cost);
  }
  // Coordinate-additive costs make the product expectation a sum of per-axis
  // expectations.
  const auto& axes = std::get<std::vector<Axis1D>>(dist.value);
  NeumaierSum s;
  for (const Axis1D& a : axes) s.add(expected_cost_axis(a, cost));
  return s.value();
}

}  // namespace dpnoise
