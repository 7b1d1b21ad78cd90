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

#ifndef DPNOISE_CERTIFICATES_HPP_
#define DPNOISE_CERTIFICATES_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "dpnoise/core.hpp"

namespace dpnoise {

enum class Regime {
  ZeroDelta1D,
  EpsDelta1D,
  MultiZeroDeltaL1,
  MultiZeroDeltaL2,
  MultiEpsDeltaL1,
  MultiEpsDeltaL2,
};

const char* regime_name(Regime r);

// Explicit dual-feasible point: a mass multiplier mu and per-axis weights.
// Weights may be stored negative when a construction degenerates; the
// verifier rejects such certificates rather than repairing them.
struct DualCertificate {
  double mu = 0.0;
  std::vector<std::map<std::int64_t, double>> axes;
  Regime regime = Regime::ZeroDelta1D;
  double beta = 0.0;  // max(epsilon, delta) for the beta regimes
};

struct CertificateReport {
  bool feasible = false;
  double worst_violation = 0.0;
  double objective = 0.0;
  std::int64_t binding_constraints = 0;
  std::int64_t worst_index = 0;  // constraint index k of the worst slack
};

DualCertificate build_cert_zero_delta_1d(const CostFn& cost,
                                         std::int64_t sensitivity,
                                         double delta);

// Requires n >= 2; the series length n is a free parameter here.
DualCertificate build_cert_eps_delta_1d(const CostFn& cost,
                                        std::int64_t sensitivity,
                                        double epsilon, double delta,
                                        std::int64_t n);

DualCertificate build_cert_multi_l1_zero_delta(std::int64_t dims,
                                               std::int64_t sensitivity,
                                               double delta);

DualCertificate build_cert_multi_l2_zero_delta(std::int64_t dims,
                                               std::int64_t sensitivity,
                                               double delta);

DualCertificate build_cert_multi_eps_delta_l1(std::int64_t dims,
                                              std::int64_t sensitivity,
                                              double beta);

DualCertificate build_cert_multi_eps_delta_l2(std::int64_t dims,
                                              std::int64_t sensitivity,
                                              double beta);

// Checks every dual constraint (1e-9 absolute tolerance) and reports the
// certified objective. Multi-dimensional constraint families reduce per
// axis; the finite search window carries a monotone-tail argument past the
// weight support.
CertificateReport verify_certificate(const DualCertificate& cert,
                                     const CostFn& cost,
                                     const PrivacyParams& params);

// Root of gamma * alpha * (log(alpha) - 1) = -(1 + log(gamma)), used as a
// diagnostic constant for the quadratic-cost beta regime.
double gamma_root(double alpha = 1.5);

}  // namespace dpnoise

#endif  // DPNOISE_CERTIFICATES_HPP_
