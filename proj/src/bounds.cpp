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

#include "dpnoise/bounds.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <sstream>

#include "dpnoise/certificates.hpp"
#include "dpnoise/lp.hpp"
#include "dpnoise/mechanisms.hpp"

namespace dpnoise {

namespace {

// Mean per-coordinate loss of the uniform pmf on [-M, M-1], in closed form
// for the absolute and quadratic losses so that mathematically identical
// bounds also compare equal in floating point. Returns -1 for other losses.
double uniform_closed_value(const CostFn& cost, std::int64_t M) {
  double m = static_cast<double>(M);
  if (cost.kind == CostFn::Kind::L1) return m / 2.0;
  if (cost.kind == CostFn::Kind::L2) return (2.0 * m * m + 1.0) / 6.0;
  return -1.0;
}

}  // namespace

EpsDeltaSeriesParams EpsDeltaSeriesParams::from(double epsilon, double delta) {
  PrivacyParams{epsilon, delta, 1, 1}.validate();
  EpsDeltaSeriesParams p;
  double ee = std::exp(epsilon);
  p.a = (delta + (ee - 1.0) / 2.0) / ee;
  p.b = 1.0 / ee;
  if (epsilon == 0.0) {
    p.n_star = 1.0 / (2.0 * delta);
  } else {
    double arg = 1.0 - (1.0 - p.b) / (2.0 * p.a);
    p.n_star = arg <= 0.0 ? std::numeric_limits<double>::infinity()
                          : std::log(arg) / std::log(p.b);
  }
  return p;
}

BoundReport lb_zero_delta(const CostFn& cost, std::int64_t sensitivity,
                          double delta) {
  if (!(delta > 0.0)) {
    throw Error(Errc::InvalidParams, "delta must be positive");
  }
  std::int64_t n = require_integer(1.0 / (2.0 * delta), "1/(2*delta)");
  std::int64_t D = sensitivity;

  NeumaierSum series;
  for (std::int64_t i = 0; i < n; ++i) series.add(cost.axis(1 + i * D));
  BoundReport report;
  report.value = 2.0 * delta * series.value();
  report.kind = BoundReport::Kind::Lower;
  report.method = "closed-form-zero-delta";

  // Certification condition: L(1 + n D) must dominate twice the boundary
  // terms, otherwise the formula value is not a lower bound.
  NeumaierSum cond;
  cond.add(cost.axis(1));
  for (std::int64_t i = 1; i <= n; ++i) {
    cond.add(cost.axis(1 + i * D) - cost.axis(i * D));
  }
  bool condition_ok = cost.axis(1 + n * D) >= 2.0 * cond.value() - 1e-12;
  report.preconditions_ok = condition_ok;
  if (!condition_ok) {
    report.notes.push_back(
        "dominance condition failed; formula value is NOT a certified lower "
        "bound");
  }
  return report;
}

BoundReport ub_uniform_1d(const CostFn& cost, std::int64_t sensitivity,
                          double delta) {
  if (!(delta > 0.0)) {
    throw Error(Errc::InvalidParams, "delta must be positive");
  }
  std::int64_t M = require_integer(
      static_cast<double>(sensitivity) / (2.0 * delta), "sensitivity/(2*delta)");
  BoundReport report;
  report.value = uniform_closed_value(cost, M);
  if (report.value < 0.0) {
    double w = 1.0 / (2.0 * static_cast<double>(M));  // = delta / sensitivity
    NeumaierSum s;
    for (std::int64_t i = 1; i < M; ++i) s.add(2.0 * w * cost.axis(i));
    s.add(w * cost.axis(M));
    report.value = s.value();
  }
  report.kind = BoundReport::Kind::Upper;
  report.method = "uniform-mechanism";
  return report;
}

BoundReport ub_laplace(const CostFn& cost, std::int64_t sensitivity,
                       double epsilon) {
  if (!(epsilon > 0.0)) {
    throw Error(Errc::EpsilonZero, "Laplacian mechanism needs epsilon > 0");
  }
  GeometricLaplace g{std::exp(-epsilon / static_cast<double>(sensitivity))};
  BoundReport report;
  report.value = expected_cost({g}, cost);
  report.kind = BoundReport::Kind::Upper;
  report.method = "laplace-mechanism";
  return report;
}

namespace {

std::optional<BoundReport> try_series_certificate(const CostFn& cost,
                                                  std::int64_t sensitivity,
                                                  double epsilon, double delta,
                                                  std::string* note) {
  EpsDeltaSeriesParams sp = EpsDeltaSeriesParams::from(epsilon, delta);
  std::vector<std::int64_t> candidates;
  if (std::isfinite(sp.n_star)) {
    std::int64_t f = static_cast<std::int64_t>(std::floor(sp.n_star));
    std::int64_t c = static_cast<std::int64_t>(std::ceil(sp.n_star));
    if (f >= 2) candidates.push_back(f);
    if (c >= 2 && c != f) candidates.push_back(c);
  } else {
    // delta = 0: the series is infinite; stop once b^n is far below the
    // verification tolerance.
    candidates.push_back(std::min<std::int64_t>(
        static_cast<std::int64_t>(std::ceil(30.0 / epsilon)), 200000));
  }

  PrivacyParams params{epsilon, delta, sensitivity, 1};
  std::optional<BoundReport> best;
  for (std::int64_t n : candidates) {
    DualCertificate cert;
    try {
      cert = build_cert_eps_delta_1d(cost, sensitivity, epsilon, delta, n);
    } catch (const Error& e) {
      if (e.code() == Errc::NegativeWeight) {
        *note = e.what();
        continue;
      }
      throw;
    }
    CertificateReport cr = verify_certificate(cert, cost, params);
    if (!cr.feasible) {
      std::ostringstream os;
      os << "series certificate (n=" << n << ") infeasible, violation "
         << cr.worst_violation;
      *note = os.str();
      continue;
    }
    if (!best || cr.objective > best->value) {
      BoundReport r;
      r.value = cr.objective;
      r.kind = BoundReport::Kind::Lower;
      r.method = "certificate:eps-delta-1d";
      r.preconditions_ok = true;
      r.notes.push_back("n=" + std::to_string(n));
      best = r;
    }
  }
  return best;
}

// Dense tableau memory cap for the fallback solve.
constexpr std::int64_t kLpFallbackMaxN = 2500;

}  // namespace

BoundReport lb_multi_eps_delta(const CostFn& cost, std::int64_t dims,
                               std::int64_t sensitivity, double epsilon,
                               double delta) {
  double beta = std::max(epsilon, delta);
  if (!(beta > 0.0)) {
    throw Error(Errc::InvalidParams, "max(epsilon, delta) must be positive");
  }
  DualCertificate cert;
  if (cost.kind == CostFn::Kind::L1) {
    cert = build_cert_multi_eps_delta_l1(dims, sensitivity, beta);
  } else if (cost.kind == CostFn::Kind::L2) {
    cert = build_cert_multi_eps_delta_l2(dims, sensitivity, beta);
  } else {
    throw Error(Errc::NoFeasibleCertificate,
                "beta-regime certificates exist for l1 and l2 costs only");
  }
  PrivacyParams params{epsilon, delta, sensitivity, dims};
  CertificateReport cr = verify_certificate(cert, cost, params);
  if (!cr.feasible) {
    std::ostringstream os;
    os << "certificate infeasible, violation " << cr.worst_violation;
    throw Error(Errc::NoFeasibleCertificate, os.str());
  }
  BoundReport report;
  report.value = cr.objective;
  report.kind = BoundReport::Kind::Lower;
  report.method = cost.kind == CostFn::Kind::L1
                      ? "certificate:multi-eps-delta-l1"
                      : "certificate:multi-eps-delta-l2";
  std::ostringstream os;
  os << "beta=" << beta;
  report.notes.push_back(os.str());
  return report;
}

BoundReport lb_eps_delta(const CostFn& cost, std::int64_t sensitivity,
                         double epsilon, double delta) {
  PrivacyParams params{epsilon, delta, sensitivity, 1};
  params.validate();

  std::string cert_note;
  if (auto best = try_series_certificate(cost, sensitivity, epsilon, delta,
                                         &cert_note)) {
    return *best;
  }

  // Fallback 1: the truncated relaxation, when a dense solve is tractable.
  std::int64_t N = default_truncation(epsilon, delta, sensitivity);
  if (N <= kLpFallbackMaxN) {
    try {
      LpSolution sol = lp_solve_for(cost, params, N);
      if (sol.status != LpSolution::Status::Infeasible) {
        BoundReport report;
        report.value = sol.optimal_value;
        report.kind = BoundReport::Kind::Lower;
        report.method = "lp";
        report.preconditions_ok = false;  // not a certificate-verified value
        if (!cert_note.empty()) report.notes.push_back(cert_note);
        std::ostringstream os;
        os << "no feasible series certificate; truncated-program optimum at N="
           << N << " (status " << lp_status_name(sol.status) << ")";
        report.notes.push_back(os.str());
        return report;
      }
    } catch (const Error&) {
      // fall through to the beta-regime certificate
    }
  }

  // Fallback 2: the beta-regime construction with d = 1 (weaker constant but
  // always certifiable for l1/l2).
  BoundReport report = lb_multi_eps_delta(cost, 1, sensitivity, epsilon, delta);
  if (!cert_note.empty()) report.notes.insert(report.notes.begin(), cert_note);
  return report;
}

BoundReport lb_multi_zero_delta(const CostFn& cost, std::int64_t dims,
                                std::int64_t sensitivity, double delta) {
  if (!(delta > 0.0)) {
    throw Error(Errc::InvalidParams, "delta must be positive");
  }
  double d = static_cast<double>(dims);
  double D = static_cast<double>(sensitivity);
  BoundReport report;
  report.kind = BoundReport::Kind::Lower;
  report.method = "closed-form-multi-zero-delta";
  double half = 1.0 / (2.0 * delta);
  if (sensitivity == 1 && std::abs(half - std::round(half)) < 1e-9 &&
      (cost.kind == CostFn::Kind::L1 || cost.kind == CostFn::Kind::L2)) {
    // At sensitivity 1 the bound coincides with the uniform mechanism cost;
    // evaluate it with the identical expression so the match is bit-exact.
    std::int64_t M = require_integer(half, "1/(2*delta)");
    report.value = uniform_closed_value(cost, M) * d;
    return report;
  }
  if (cost.kind == CostFn::Kind::L1) {
    report.value = d * D / (4.0 * delta) - (D - 1.0) * d / 2.0;
  } else if (cost.kind == CostFn::Kind::L2) {
    require_integer(1.0 / (2.0 * delta), "1/(2*delta)");
    NeumaierSum s;
    s.add(d * D * D / (12.0 * delta * delta));
    s.add((1.0 / D - 1.0) * d * D * D / (4.0 * delta));
    s.add((1.0 - D) * d / 2.0);
    s.add(d * D * D / 6.0);
    report.value = s.value();
  } else {
    throw Error(Errc::InvalidParams,
                "multi-dimensional closed forms exist for l1 and l2 only");
  }
  return report;
}

BoundReport ub_uniform_multi(const CostFn& cost, std::int64_t dims,
                             std::int64_t sensitivity, double delta) {
  BoundReport axis = ub_uniform_1d(cost, sensitivity, delta);
  axis.value *= static_cast<double>(dims);
  axis.method = "uniform-mechanism-multi";
  return axis;
}

BoundReport ub_laplace_multi(const CostFn& cost, std::int64_t dims,
                             std::int64_t sensitivity, double epsilon) {
  BoundReport axis = ub_laplace(cost, sensitivity, epsilon);
  axis.value *= static_cast<double>(dims);
  axis.method = "laplace-mechanism-multi";
  return axis;
}

GapReport gap_report(const CostFn& cost, const PrivacyParams& params) {
  params.validate();
  GapReport gap;

  std::vector<std::string> flags;
  std::optional<BoundReport> upper;
  try {
    BoundReport u = params.dims == 1
                        ? ub_uniform_1d(cost, params.sensitivity, params.delta)
                        : ub_uniform_multi(cost, params.dims,
                                           params.sensitivity, params.delta);
    upper = u;
  } catch (const Error& e) {
    flags.push_back(std::string("uniform skipped: ") + e.what());
  }
  if (params.epsilon > 0.0) {
    BoundReport lap =
        params.dims == 1
            ? ub_laplace(cost, params.sensitivity, params.epsilon)
            : ub_laplace_multi(cost, params.dims, params.sensitivity,
                               params.epsilon);
    if (!upper || lap.value < upper->value) upper = lap;
  }
  if (!upper) {
    throw Error(Errc::IntegralityViolated,
                "no mechanism available: uniform integrality fails and "
                "epsilon is 0");
  }
  gap.upper = *upper;
  for (const std::string& f : flags) gap.upper.notes.push_back(f);

  if (params.epsilon == 0.0) {
    if (params.dims == 1) {
      gap.lower = lb_zero_delta(cost, params.sensitivity, params.delta);
      if (!gap.lower.preconditions_ok) {
        BoundReport lp = lp_lower_bound(cost, params);
        lp.notes.insert(lp.notes.begin(),
                        "closed form not certified; using the truncated "
                        "program");
        gap.lower = lp;
      }
    } else {
      gap.lower =
          lb_multi_zero_delta(cost, params.dims, params.sensitivity,
                              params.delta);
    }
  } else {
    gap.lower =
        params.dims == 1
            ? lb_eps_delta(cost, params.sensitivity, params.epsilon,
                           params.delta)
            : lb_multi_eps_delta(cost, params.dims, params.sensitivity,
                                 params.epsilon, params.delta);
  }

  gap.ratio = gap.lower.value > 0.0 ? gap.upper.value / gap.lower.value
                                    : std::numeric_limits<double>::infinity();
  return gap;
}

}  // namespace dpnoise
