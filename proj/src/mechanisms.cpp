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

#include "dpnoise/mechanisms.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>

namespace dpnoise {

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double SplitMix64::next_double() {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

namespace {

// Half width D/(2 delta) as an exact positive integer, or a hard error with
// the nearest delta that would make it one.
std::int64_t uniform_half_width(std::int64_t sensitivity, double delta) {
  double hw = static_cast<double>(sensitivity) / (2.0 * delta);
  double r = std::round(hw);
  if (r < 1.0 || std::abs(hw - r) > 1e-9 * std::max(1.0, hw)) {
    std::ostringstream os;
    os << "sensitivity/(2*delta) = " << hw
       << " is not a positive integer; nearest admissible delta = "
       << static_cast<double>(sensitivity) / (2.0 * std::max(1.0, r));
    throw Error(Errc::IntegralityViolated, os.str());
  }
  return static_cast<std::int64_t>(r);
}

Finite1D uniform_axis(std::int64_t sensitivity, double delta) {
  std::int64_t half = uniform_half_width(sensitivity, delta);
  Finite1D f;
  f.offset = -half;
  // 1/(2*half) equals delta/sensitivity exactly in exact arithmetic and sums
  // to exactly 1 in floats up to one rounding of the division.
  f.probs.assign(static_cast<std::size_t>(2 * half),
                 1.0 / static_cast<double>(2 * half));
  return f;
}

}  // namespace

NoiseDistribution uniform_mechanism_1d(const PrivacyParams& params) {
  params.validate();
  if (!(params.delta > 0.0)) {
    throw Error(Errc::InvalidParams, "uniform mechanism needs delta > 0");
  }
  return {uniform_axis(params.sensitivity, params.delta)};
}

NoiseDistribution uniform_mechanism_multi(const PrivacyParams& params) {
  params.validate();
  if (!(params.delta > 0.0)) {
    throw Error(Errc::InvalidParams, "uniform mechanism needs delta > 0");
  }
  Finite1D axis = uniform_axis(params.sensitivity, params.delta);
  std::vector<Axis1D> axes(static_cast<std::size_t>(params.dims), axis);
  return {std::move(axes)};
}

NoiseDistribution discrete_laplace(const PrivacyParams& params) {
  if (!(params.epsilon > 0.0)) {
    throw Error(Errc::EpsilonZero,
                "discrete Laplacian needs epsilon > 0 (lambda would be 1)");
  }
  params.validate();
  GeometricLaplace g{std::exp(-params.epsilon /
                              static_cast<double>(params.sensitivity))};
  if (params.dims == 1) return {g};
  std::vector<Axis1D> axes(static_cast<std::size_t>(params.dims), Axis1D{g});
  return {std::move(axes)};
}

namespace {

struct FiniteSampler {
  std::int64_t offset;
  std::vector<double> cdf;

  explicit FiniteSampler(const Finite1D& f) : offset(f.offset) {
    cdf.reserve(f.probs.size());
    NeumaierSum acc;
    for (double p : f.probs) {
      acc.add(p);
      cdf.push_back(acc.value());
    }
    if (!cdf.empty()) cdf.back() = std::max(cdf.back(), 1.0);
  }

  std::int64_t draw(double u) const {
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    if (it == cdf.end()) --it;
    return offset + static_cast<std::int64_t>(it - cdf.begin());
  }
};

std::int64_t draw_geometric(const GeometricLaplace& g, SplitMix64& rng) {
  double p0 = g.mass_at_zero();
  double u = rng.next_double();
  if (u < p0) return 0;
  // Conditioned on N != 0, |N| is geometric on {1, 2, ...} with ratio lambda
  // and the sign is a fair coin.
  double v = (u - p0) / (1.0 - p0);
  v = std::min(v, 0x1.fffffffffffffp-1);
  // P(|N| > m | N != 0) = lambda^m, so |N| = floor(log(1-v)/log(lambda)) + 1.
  std::int64_t mag = 1 + static_cast<std::int64_t>(std::floor(
                             std::log1p(-v) / std::log(g.lambda)));
  mag = std::max<std::int64_t>(mag, 1);
  bool negative = rng.next_double() < 0.5;
  return negative ? -mag : mag;
}

class AxisSampler {
 public:
  explicit AxisSampler(const Axis1D& axis) {
    if (const auto* f = std::get_if<Finite1D>(&axis)) {
      finite_.emplace(*f);
    } else {
      geom_ = std::get<GeometricLaplace>(axis);
    }
  }

  std::int64_t draw(SplitMix64& rng) const {
    if (finite_) return finite_->draw(rng.next_double());
    return draw_geometric(geom_, rng);
  }

 private:
  std::optional<FiniteSampler> finite_;
  GeometricLaplace geom_;
};

}  // namespace

SampleBatch sample(const NoiseDistribution& dist, std::uint64_t seed,
                   std::size_t n) {
  validate_distribution(dist);
  std::vector<AxisSampler> samplers;
  if (const auto* axes = std::get_if<std::vector<Axis1D>>(&dist.value)) {
    for (const Axis1D& a : *axes) samplers.emplace_back(a);
  } else if (const auto* f = std::get_if<Finite1D>(&dist.value)) {
    samplers.emplace_back(Axis1D{*f});
  } else {
    samplers.emplace_back(Axis1D{std::get<GeometricLaplace>(dist.value)});
  }

  SplitMix64 rng(seed);
  SampleBatch batch;
  batch.seed = seed;
  batch.draws.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::int64_t> point;
    point.reserve(samplers.size());
    for (const AxisSampler& s : samplers) point.push_back(s.draw(rng));
    batch.draws.push_back(std::move(point));
  }
  return batch;
}

}  // namespace dpnoise
