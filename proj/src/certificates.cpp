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

#include "dpnoise/certificates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace dpnoise {

const char* regime_name(Regime r) {
  switch (r) {
    case Regime::ZeroDelta1D: return "zero-delta-1d";
    case Regime::EpsDelta1D: return "eps-delta-1d";
    case Regime::MultiZeroDeltaL1: return "multi-zero-delta-l1";
    case Regime::MultiZeroDeltaL2: return "multi-zero-delta-l2";
    case Regime::MultiEpsDeltaL1: return "multi-eps-delta-l1";
    case Regime::MultiEpsDeltaL2: return "multi-eps-delta-l2";
  }
  return "?";
}

double gamma_root(double alpha) {
  auto f = [alpha](double g) {
    return g * alpha * (std::log(alpha) - 1.0) + 1.0 + std::log(g);
  };
  double lo = 1.0, hi = 3.0;
  for (int i = 0; i < 200; ++i) {
    double mid = 0.5 * (lo + hi);
    if (f(lo) * f(mid) <= 0.0) {
      hi = mid;
    } else {
      lo = mid;
    }
    if (hi - lo < 1e-12) break;
  }
  return 0.5 * (lo + hi);
}

DualCertificate build_cert_zero_delta_1d(const CostFn& cost,
                                         std::int64_t sensitivity,
                                         double delta) {
  if (!(delta > 0.0)) {
    throw Error(Errc::InvalidParams, "delta must be positive");
  }
  std::int64_t n = require_integer(1.0 / (2.0 * delta), "1/(2*delta)");
  std::int64_t D = sensitivity;
  auto L = [&](std::int64_t k) { return cost.axis(k); };

  DualCertificate cert;
  cert.regime = Regime::ZeroDelta1D;
  cert.mu = L(1 + n * D);
  std::map<std::int64_t, double>& y = cert.axes.emplace_back();
  // Backward recursion down to index 2, then the two boundary weights.
  for (std::int64_t k = (n - 1) * D + 1; k >= 2; --k) {
    auto it = y.find(k + D);
    double next = it == y.end() ? 0.0 : it->second;
    y[k] = L(k + D) - L(k + D - 1) + next;
  }
  NeumaierSum y1;
  for (std::int64_t i = 1; i <= n; ++i) y1.add(L(1 + i * D) - L(i * D));
  y[1] = y1.value();
  // y0 can come out negative when the closed form is not a certified bound;
  // kept as-is so the verifier reports the failure.
  y[0] = cert.mu - L(1) - y1.value();
  return cert;
}

DualCertificate build_cert_eps_delta_1d(const CostFn& cost,
                                        std::int64_t sensitivity,
                                        double epsilon, double delta,
                                        std::int64_t n) {
  if (n < 2) {
    throw Error(Errc::InvalidParams,
                "series length n must be >= 2, got " + std::to_string(n));
  }
  if (epsilon < 0.0) {
    throw Error(Errc::InvalidParams, "epsilon must be >= 0");
  }
  std::int64_t D = sensitivity;
  double b = std::exp(-epsilon);
  auto L = [&](std::int64_t k) { return cost.axis(k); };

  DualCertificate cert;
  cert.regime = Regime::EpsDelta1D;
  cert.beta = std::max(epsilon, delta);
  cert.mu = L(1 + (n - 1) * D);
  std::map<std::int64_t, double>& y = cert.axes.emplace_back();
  for (std::int64_t k = 1 + (n - 2) * D; k >= 2; --k) {
    auto it = y.find(k + D);
    double next = it == y.end() ? 0.0 : it->second;
    y[k] = b * (next + L(k + D) - L(k + D - 1));
  }
  NeumaierSum y1, y0;
  double bi = 1.0;
  for (std::int64_t i = 1; i <= n - 1; ++i) {
    bi *= b;
    y1.add(bi * (L(1 + i * D) - L(i * D)));
    y0.add(bi * (L(i * D) - L(1 + (i - 1) * D)));
  }
  if (y0.value() < -1e-12 || y1.value() < -1e-12) {
    std::ostringstream os;
    os << (y0.value() < -1e-12 ? "y0" : "y1") << " = "
       << std::min(y0.value(), y1.value()) << " is negative";
    throw Error(Errc::NegativeWeight, os.str());
  }
  y[1] = y1.value();
  y[0] = y0.value();
  return cert;
}

DualCertificate build_cert_multi_l1_zero_delta(std::int64_t dims,
                                               std::int64_t sensitivity,
                                               double delta) {
  if (!(delta > 0.0)) {
    throw Error(Errc::InvalidParams, "delta must be positive");
  }
  std::int64_t half = require_integer(1.0 / (2.0 * delta), "1/(2*delta)");
  std::int64_t D = sensitivity;
  DualCertificate cert;
  cert.regime = Regime::MultiZeroDeltaL1;
  double per_axis = static_cast<double>(half) * static_cast<double>(D);
  cert.mu = static_cast<double>(dims) * per_axis;

  std::map<std::int64_t, double> y;
  y[0] = per_axis;
  for (std::int64_t k = 1;; ++k) {
    double v = per_axis - static_cast<double>(k * D);
    if (v <= 0.0) break;
    y[k * D] = v;
  }
  for (std::int64_t k = 1;; ++k) {
    double v = per_axis - static_cast<double>((k - 1) * D) - 1.0;
    if (v <= 0.0) break;
    y[-k * D] = v;
  }
  cert.axes.assign(static_cast<std::size_t>(dims), y);
  return cert;
}

DualCertificate build_cert_multi_l2_zero_delta(std::int64_t dims,
                                               std::int64_t sensitivity,
                                               double delta) {
  if (!(delta > 0.0)) {
    throw Error(Errc::InvalidParams, "delta must be positive");
  }
  std::int64_t n = require_integer(1.0 / (2.0 * delta), "1/(2*delta)");
  std::int64_t D = sensitivity;
  DualCertificate cert;
  cert.regime = Regime::MultiZeroDeltaL2;
  double per_axis = static_cast<double>(n * D) * static_cast<double>(n * D);
  cert.mu = static_cast<double>(dims) * per_axis;

  std::map<std::int64_t, double> y;
  y[0] = per_axis;
  for (std::int64_t k = 1; k <= n; ++k) {
    double v = per_axis - static_cast<double>(k * D) * static_cast<double>(k * D);
    y[k * D] = v;
  }
  for (std::int64_t k = 1; k <= n; ++k) {
    double e = static_cast<double>((k - 1) * D) + 1.0;
    y[-k * D] = per_axis - e * e;
  }
  cert.axes.assign(static_cast<std::size_t>(dims), y);
  return cert;
}

namespace {

// Sorted support plus compensated prefix sums, for O(log) window and tail
// queries in long double.
struct AxisSums {
  std::vector<std::int64_t> keys;
  std::vector<long double> prefix;  // prefix[i] = sum of values up to keys[i]
  long double total = 0.0L;
  double min_weight = 0.0;
  std::int64_t lo = 0, hi = 0;

  explicit AxisSums(const std::map<std::int64_t, double>& y) {
    keys.reserve(y.size());
    prefix.reserve(y.size());
    NeumaierSumL acc;
    min_weight = 0.0;
    for (const auto& [k, v] : y) {
      keys.push_back(k);
      acc.add(static_cast<long double>(v));
      prefix.push_back(acc.value());
      min_weight = std::min(min_weight, v);
    }
    total = keys.empty() ? 0.0L : prefix.back();
    lo = keys.empty() ? 0 : keys.front();
    hi = keys.empty() ? 0 : keys.back();
  }

  // Sum of weights at indices <= x.
  long double cum_le(std::int64_t x) const {
    auto it = std::upper_bound(keys.begin(), keys.end(), x);
    if (it == keys.begin()) return 0.0L;
    return prefix[static_cast<std::size_t>(it - keys.begin()) - 1];
  }
  long double window(std::int64_t k, std::int64_t D) const {
    return cum_le(k) - cum_le(k - D);
  }
  long double tail_ge(std::int64_t x) const { return total - cum_le(x - 1); }
};

struct AxisScan {
  long double min_g = 0.0L;
  std::int64_t argmin = 0;
  std::int64_t binding = 0;
};

// min over k of L(k) + window(k) - (e^beta - 1) * cum(<= k - D). Beyond the
// scan window the weight terms are constant and L dominates, so g is
// nondecreasing there.
AxisScan scan_axis(const AxisSums& s, const CostFn& cost, std::int64_t D,
                   long double slack_scale, std::int64_t reach) {
  AxisScan out;
  bool first = true;
  std::int64_t from = s.lo - D - reach;
  std::int64_t to = s.hi + D + reach;
  for (std::int64_t k = from; k <= to; ++k) {
    long double g = static_cast<long double>(cost.axis(k)) + s.window(k, D) -
                    slack_scale * s.cum_le(k - D);
    if (first || g < out.min_g) {
      out.min_g = g;
      out.argmin = k;
      first = false;
    }
  }
  for (std::int64_t k = from; k <= to; ++k) {
    long double g = static_cast<long double>(cost.axis(k)) + s.window(k, D) -
                    slack_scale * s.cum_le(k - D);
    if (g <= out.min_g + 1e-9L) ++out.binding;
  }
  return out;
}

std::int64_t search_reach(double mu, long double extra, std::int64_t degree) {
  double bound = std::max(0.0, mu + static_cast<double>(extra)) + 1.0;
  return static_cast<std::int64_t>(
             std::ceil(std::pow(bound, 1.0 / static_cast<double>(degree)))) +
         2;
}

// Shared construction for the beta regimes. Weights live on the sublattice
// of multiples of the sensitivity: a window of length D then covers exactly
// one weight, which reduces the analysis to the unit-sensitivity case with
// the per-step loss increments below. The mass multiplier is set to the
// exact certified level min_k g(k) per axis, so the certificate is feasible
// by construction whenever the weights are nonnegative.
DualCertificate build_beta_cert(std::int64_t dims, std::int64_t sensitivity,
                                double beta, const CostFn& axis_cost,
                                Regime regime) {
  if (!(beta > 0.0)) {
    throw Error(Errc::InvalidParams, "beta must be positive");
  }
  std::int64_t D = sensitivity;
  std::int64_t steps = static_cast<std::int64_t>(
      std::llround(std::log(1.5) / beta));
  if (steps < 1) steps = 1;
  double eb = std::exp(beta);
  auto L = [&](std::int64_t i) { return axis_cost.axis(i); };

  DualCertificate cert;
  cert.regime = regime;
  cert.beta = beta;

  std::map<std::int64_t, double> y;
  auto get = [&](std::int64_t i) {
    auto it = y.find(i);
    return it == y.end() ? 0.0 : it->second;
  };
  for (std::int64_t j = -steps + 1; j <= 0; ++j) {
    std::int64_t i = j * D;
    // Loss increase when stepping D further into the negative tail.
    y[i] = eb * get(i - D) + (L(i - D) - L(i));
  }
  for (std::int64_t j = 1;; ++j) {
    std::int64_t i = j * D;
    double v = eb * get(i - D) - (L(i) - L(i - D));
    if (!(v > 0.0)) break;
    y[i] = v;
  }
  cert.axes.assign(static_cast<std::size_t>(dims), y);

  // Certified level: the verifier's own per-axis minimum with mu left out.
  AxisSums sums(y);
  long double slack_scale = std::exp(static_cast<long double>(beta)) - 1.0L;
  double mu_cap = regime == Regime::MultiEpsDeltaL1
                      ? static_cast<double>(steps * D)
                      : static_cast<double>(steps * D) *
                            static_cast<double>(steps * D);
  std::int64_t reach =
      search_reach(mu_cap, slack_scale * sums.total, axis_cost.degree());
  AxisScan scan = scan_axis(sums, axis_cost, D, slack_scale, reach);
  long double level = static_cast<long double>(dims) * scan.min_g;
  double mu = static_cast<double>(level);
  // Round toward feasibility: mu must not exceed the exact level.
  while (static_cast<long double>(mu) > level) {
    mu = std::nextafter(mu, -std::numeric_limits<double>::infinity());
  }
  cert.mu = mu;
  return cert;
}

}  // namespace

DualCertificate build_cert_multi_eps_delta_l1(std::int64_t dims,
                                              std::int64_t sensitivity,
                                              double beta) {
  return build_beta_cert(dims, sensitivity, beta, CostFn::l1(),
                         Regime::MultiEpsDeltaL1);
}

DualCertificate build_cert_multi_eps_delta_l2(std::int64_t dims,
                                              std::int64_t sensitivity,
                                              double beta) {
  return build_beta_cert(dims, sensitivity, beta, CostFn::l2(),
                         Regime::MultiEpsDeltaL2);
}

CertificateReport verify_certificate(const DualCertificate& cert,
                                     const CostFn& cost,
                                     const PrivacyParams& params) {
  params.validate();
  std::int64_t d = static_cast<std::int64_t>(cert.axes.size());
  bool multi_regime = cert.regime != Regime::ZeroDelta1D &&
                      cert.regime != Regime::EpsDelta1D;
  if (!multi_regime && d != 1) {
    throw Error(Errc::RegimeMismatch, "1-D regime with multiple axes");
  }
  if (d != params.dims) {
    throw Error(Errc::RegimeMismatch,
                "certificate has " + std::to_string(d) + " axes, params say " +
                    std::to_string(params.dims));
  }
  if ((cert.regime == Regime::MultiZeroDeltaL1 ||
       cert.regime == Regime::MultiEpsDeltaL1) &&
      cost.kind != CostFn::Kind::L1) {
    throw Error(Errc::RegimeMismatch, "regime is specific to the l1 cost");
  }
  if ((cert.regime == Regime::MultiZeroDeltaL2 ||
       cert.regime == Regime::MultiEpsDeltaL2) &&
      cost.kind != CostFn::Kind::L2) {
    throw Error(Errc::RegimeMismatch, "regime is specific to the l2 cost");
  }

  std::int64_t D = params.sensitivity;
  double eps = params.epsilon;
  double delta = params.delta;
  double beta = std::max(eps, delta);

  CertificateReport report;
  long double worst = 0.0L;  // violation; positive = infeasible
  std::int64_t worst_index = 0;
  std::int64_t binding = 0;

  std::vector<AxisSums> sums;
  sums.reserve(cert.axes.size());
  long double total_weight = 0.0L;
  double min_weight = 0.0;
  for (const auto& axis : cert.axes) {
    sums.emplace_back(axis);
    total_weight += sums.back().total;
    min_weight = std::min(min_weight, sums.back().min_weight);
  }
  if (min_weight < 0.0) {
    worst = std::max(worst, static_cast<long double>(-min_weight));
  }
  if (cert.mu < 0.0) {
    worst = std::max(worst, static_cast<long double>(-cert.mu));
  }

  long double penalty = 0.0L;
  switch (cert.regime) {
    case Regime::ZeroDelta1D: {
      penalty = 2.0L * static_cast<long double>(delta);
      const AxisSums& s = sums[0];
      long double mu = cert.mu;
      // Origin row: mu/2 <= y_0.
      long double c0 = mu / 2.0L - s.window(0, 1);
      if (c0 > worst) {
        worst = c0;
        worst_index = 0;
      }
      if (std::abs(static_cast<double>(c0)) <= 1e-9) ++binding;
      std::int64_t reach = search_reach(cert.mu, 0.0L, cost.degree());
      std::int64_t to = s.hi + D + reach;
      long double min_slack = 1e30L;
      for (std::int64_t k = 1; k <= to; ++k) {
        long double w = s.cum_le(k) - s.cum_le(std::max<std::int64_t>(
                                          0, k - D + 1) -
                                      1);
        long double v = mu - w - static_cast<long double>(cost.axis(k));
        if (v > worst) {
          worst = v;
          worst_index = k;
        }
        long double slack = -v;
        if (slack <= 1e-9L) ++binding;
        min_slack = std::min(min_slack, slack);
      }
      break;
    }
    case Regime::EpsDelta1D: {
      long double ee = std::exp(static_cast<long double>(eps));
      penalty = 2.0L * static_cast<long double>(delta) + (ee - 1.0L);
      const AxisSums& s = sums[0];
      long double mu = cert.mu;
      long double y0 = s.window(0, 1);
      long double y1 = s.cum_le(1) - s.cum_le(0);
      long double tail2 = s.tail_ge(2);
      long double c0 = mu / 2.0L - (1.0L + ee) / 2.0L * y0 -
                       (ee - 1.0L) / 2.0L * y1 - (ee - 1.0L) / 2.0L * tail2;
      if (c0 > worst) {
        worst = c0;
        worst_index = 0;
      }
      if (std::abs(static_cast<double>(c0)) <= 1e-9) ++binding;
      long double c1 = mu - ee * y0 - ee * y1 - (ee - 1.0L) * tail2 -
                       static_cast<long double>(cost.axis(1));
      if (c1 > worst) {
        worst = c1;
        worst_index = 1;
      }
      if (c1 >= -1e-9L) ++binding;
      std::int64_t reach =
          search_reach(cert.mu, (ee - 1.0L) * s.total, cost.degree());
      std::int64_t to = s.hi + D + reach;
      for (std::int64_t k = 2; k <= to; ++k) {
        long double w = s.cum_le(k) - s.cum_le(std::max<std::int64_t>(
                                          0, k - D + 1) -
                                      1);
        long double v = mu - ee * w - (ee - 1.0L) * s.tail_ge(k + 1) -
                        static_cast<long double>(cost.axis(k));
        if (v > worst) {
          worst = v;
          worst_index = k;
        }
        if (v >= -1e-9L) ++binding;
      }
      break;
    }
    case Regime::MultiZeroDeltaL1:
    case Regime::MultiZeroDeltaL2:
    case Regime::MultiEpsDeltaL1:
    case Regime::MultiEpsDeltaL2: {
      bool beta_regime = cert.regime == Regime::MultiEpsDeltaL1 ||
                         cert.regime == Regime::MultiEpsDeltaL2;
      long double slack_scale =
          beta_regime ? std::exp(static_cast<long double>(beta)) - 1.0L : 0.0L;
      penalty = beta_regime ? static_cast<long double>(beta)
                            : static_cast<long double>(delta);
      // The joint constraint mu <= sum_m g_m(k_m) splits into independent
      // per-axis minimizations.
      NeumaierSumL min_total;
      for (std::size_t m = 0; m < sums.size(); ++m) {
        std::int64_t reach = search_reach(
            cert.mu, slack_scale * total_weight, cost.degree());
        AxisScan scan = scan_axis(sums[m], cost, D, slack_scale, reach);
        min_total.add(scan.min_g);
        binding += scan.binding;
        if (m == 0) worst_index = scan.argmin;
      }
      long double v = static_cast<long double>(cert.mu) - min_total.value();
      if (v > worst) worst = v;
      break;
    }
  }

  NeumaierSumL obj;
  obj.add(static_cast<long double>(cert.mu));
  obj.add(-penalty * total_weight);
  report.objective = static_cast<double>(obj.value());
  report.worst_violation = static_cast<double>(worst);
  report.feasible = report.worst_violation <= 1e-9;
  report.binding_constraints = binding;
  report.worst_index = worst_index;
  return report;
}

}  // namespace dpnoise
