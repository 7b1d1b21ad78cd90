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

#include "dpnoise/privacy.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

namespace dpnoise {

namespace {

constexpr double kGeomTail = 1e-14;

Finite1D as_table(const Axis1D& axis, double tail) {
  if (const auto* f = std::get_if<Finite1D>(&axis)) return *f;
  return std::get<GeometricLaplace>(axis).truncate(tail);
}

double shift_margin(const Finite1D& f, double e_eps, std::int64_t s) {
  NeumaierSum acc;
  for (std::int64_t k = f.lo(); k <= f.hi(); ++k) {
    double m = f.prob_at(k) - e_eps * f.prob_at(k + s);
    if (m > 0.0) acc.add(m);
  }
  return acc.value();
}

double clamp01(double x) { return std::min(1.0, std::max(0.0, x)); }

}  // namespace

PrivacyReport tightest_delta_1d(const NoiseDistribution& dist, double epsilon,
                                std::int64_t sensitivity) {
  if (dist.is_product()) {
    throw Error(Errc::InvalidParams, "tightest_delta_1d needs a 1-D pmf");
  }
  if (sensitivity < 1) {
    throw Error(Errc::InvalidParams, "sensitivity must be >= 1");
  }
  Finite1D table;
  if (const auto* f = std::get_if<Finite1D>(&dist.value)) {
    table = *f;
  } else {
    // Truncated tail mass < 1e-14, well inside every tolerance used here.
    table = std::get<GeometricLaplace>(dist.value).truncate(kGeomTail);
  }
  double e_eps = std::exp(epsilon);
  PrivacyReport report;
  report.tightest_delta = -1.0;
  for (std::int64_t s = -sensitivity; s <= sensitivity; ++s) {
    if (s == 0) continue;
    double m = shift_margin(table, e_eps, s);
    if (m > report.tightest_delta) {
      report.tightest_delta = m;
      report.worst_shift = {s};
    }
  }
  report.tightest_delta = clamp01(report.tightest_delta);
  return report;
}

namespace {

// Shift vectors with 1 <= |v|_1 <= budget, emitted in lexicographic order.
void enumerate_shifts(
    std::int64_t d, std::int64_t budget,
    const std::function<void(const std::vector<std::int64_t>&)>& fn) {
  std::vector<std::int64_t> v(static_cast<std::size_t>(d), 0);
  std::function<void(std::int64_t, std::int64_t)> rec =
      [&](std::int64_t axis, std::int64_t used) {
        if (axis == d) {
          if (used > 0) fn(v);
          return;
        }
        std::int64_t room = budget - used;
        for (std::int64_t c = -room; c <= room; ++c) {
          v[static_cast<std::size_t>(axis)] = c;
          rec(axis + 1, used + std::abs(c));
        }
        v[static_cast<std::size_t>(axis)] = 0;
      };
  rec(0, 0);
}

std::int64_t count_shifts(std::int64_t d, std::int64_t budget) {
  // Number of integer vectors with 0 < |v|_1 <= budget.
  std::vector<std::int64_t> counts(static_cast<std::size_t>(budget) + 1, 0);
  counts[0] = 1;
  for (std::int64_t axis = 0; axis < d; ++axis) {
    std::vector<std::int64_t> next(counts.size(), 0);
    for (std::int64_t used = 0; used <= budget; ++used) {
      if (counts[static_cast<std::size_t>(used)] == 0) continue;
      for (std::int64_t c = -(budget - used); c <= budget - used; ++c) {
        next[static_cast<std::size_t>(used + std::abs(c))] +=
            counts[static_cast<std::size_t>(used)];
      }
    }
    counts.swap(next);
  }
  std::int64_t total = -1;  // drop the zero vector
  for (std::int64_t c : counts) total += c;
  return total;
}

}  // namespace

PrivacyReport tightest_delta_multi(const NoiseDistribution& dist,
                                   double epsilon, std::int64_t sensitivity) {
  std::vector<Axis1D> axes;
  if (const auto* p = std::get_if<std::vector<Axis1D>>(&dist.value)) {
    axes = *p;
  } else if (const auto* f = std::get_if<Finite1D>(&dist.value)) {
    axes = {Axis1D{*f}};
  } else {
    axes = {Axis1D{std::get<GeometricLaplace>(dist.value)}};
  }
  std::int64_t d = static_cast<std::int64_t>(axes.size());

  std::vector<Finite1D> tables;
  tables.reserve(axes.size());
  std::int64_t cells = 1;
  for (const Axis1D& a : axes) {
    tables.push_back(as_table(a, kGeomTail / static_cast<double>(d)));
    std::int64_t size = static_cast<std::int64_t>(tables.back().probs.size());
    cells = (cells > 2000000 / size) ? 2000001 : cells * size;
  }
  std::int64_t shifts = count_shifts(d, sensitivity);
  if (cells > 1000000 || shifts > 1000000) {
    std::ostringstream os;
    os << "joint support " << cells << " cells, " << shifts
       << " shift vectors; limit is 1e6 each";
    throw Error(Errc::SupportTooLarge, os.str());
  }

  // Expand the joint pmf into a flat row-major table.
  std::vector<std::int64_t> sizes, los;
  for (const Finite1D& t : tables) {
    sizes.push_back(static_cast<std::int64_t>(t.probs.size()));
    los.push_back(t.lo());
  }
  std::vector<double> joint(static_cast<std::size_t>(cells), 1.0);
  std::int64_t stride = cells;
  for (std::int64_t m = 0; m < d; ++m) {
    stride /= sizes[static_cast<std::size_t>(m)];
    for (std::int64_t idx = 0; idx < cells; ++idx) {
      std::int64_t coord = (idx / stride) % sizes[static_cast<std::size_t>(m)];
      joint[static_cast<std::size_t>(idx)] *=
          tables[static_cast<std::size_t>(m)]
              .probs[static_cast<std::size_t>(coord)];
    }
  }

  double e_eps = std::exp(epsilon);
  PrivacyReport report;
  report.tightest_delta = -1.0;
  std::vector<std::int64_t> coords(static_cast<std::size_t>(d));
  enumerate_shifts(d, sensitivity, [&](const std::vector<std::int64_t>& v) {
    NeumaierSum acc;
    for (std::int64_t idx = 0; idx < cells; ++idx) {
      // Decode coordinates and apply the shift; out-of-table means prob 0.
      std::int64_t rem = idx;
      std::int64_t shifted = 0;
      bool inside = true;
      std::int64_t st = cells;
      for (std::int64_t m = 0; m < d; ++m) {
        st /= sizes[static_cast<std::size_t>(m)];
        std::int64_t c = rem / st;
        rem %= st;
        std::int64_t cs = c + v[static_cast<std::size_t>(m)];
        if (cs < 0 || cs >= sizes[static_cast<std::size_t>(m)]) {
          inside = false;
          break;
        }
        shifted = shifted * sizes[static_cast<std::size_t>(m)] + cs;
      }
      double q = inside ? joint[static_cast<std::size_t>(shifted)] : 0.0;
      double margin = joint[static_cast<std::size_t>(idx)] - e_eps * q;
      if (margin > 0.0) acc.add(margin);
    }
    double m = acc.value();
    if (m > report.tightest_delta) {
      report.tightest_delta = m;
      report.worst_shift = v;
    }
  });
  report.tightest_delta = clamp01(report.tightest_delta);
  return report;
}

PrivacyReport check_dp(const NoiseDistribution& dist,
                       const PrivacyParams& params) {
  params.validate();
  if (dist.dims() != params.dims) {
    std::ostringstream os;
    os << "distribution has " << dist.dims() << " dims, params say "
       << params.dims;
    throw Error(Errc::InvalidParams, os.str());
  }
  PrivacyReport report;
  if (!dist.is_product()) {
    report = tightest_delta_1d(dist, params.epsilon, params.sensitivity);
  } else {
    report = tightest_delta_multi(dist, params.epsilon, params.sensitivity);
  }
  report.satisfies = report.tightest_delta <= params.delta + 1e-12;
  return report;
}

}  // namespace dpnoise
