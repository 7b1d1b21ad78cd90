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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <string>
#include <vector>

#include "dpnoise/bounds.hpp"
#include "dpnoise/certificates.hpp"
#include "dpnoise/hypotest.hpp"
#include "dpnoise/lp.hpp"
#include "dpnoise/mechanisms.hpp"
#include "dpnoise/privacy.hpp"

namespace py = pybind11;
using namespace dpnoise;

namespace {

CostFn make_cost(const std::string& name) {
  if (name == "l1") return CostFn::l1();
  if (name == "l2") return CostFn::l2();
  if (name.rfind("power:", 0) == 0) {
    return CostFn::power(std::stoll(name.substr(6)));
  }
  throw Error(Errc::InvalidParams, "unknown cost '" + name + "'");
}

PrivacyParams make_params(double epsilon, double delta, std::int64_t sensitivity,
                          std::int64_t dims) {
  PrivacyParams p{epsilon, delta, sensitivity, dims};
  p.validate();
  return p;
}

py::dict bound_dict(const BoundReport& r) {
  py::dict d;
  d["value"] = r.value;
  d["kind"] = r.kind == BoundReport::Kind::Lower ? "lower" : "upper";
  d["method"] = r.method;
  d["preconditions_ok"] = r.preconditions_ok;
  d["notes"] = r.notes;
  return d;
}

Finite1D finite_from(std::int64_t offset, const std::vector<double>& probs) {
  NoiseDistribution d{Finite1D{offset, probs}};
  return std::get<Finite1D>(validate_distribution(d).value);
}

}  // namespace

PYBIND11_MODULE(_dpnoise, m) {
  m.doc() =
      "Bounds, mechanisms, and certificates for (epsilon, delta) "
      "differentially private integer noise";

  py::register_exception<Error>(m, "DpnoiseError");

  m.def(
      "gap_report",
      [](const std::string& cost, double epsilon, double delta,
         std::int64_t sensitivity, std::int64_t dims) {
        auto gap =
            gap_report(make_cost(cost), make_params(epsilon, delta, sensitivity, dims));
        py::dict d;
        d["v_lb"] = bound_dict(gap.lower);
        d["v_ub"] = bound_dict(gap.upper);
        d["ratio"] = gap.ratio;
        return d;
      },
      py::arg("cost"), py::arg("epsilon"), py::arg("delta"),
      py::arg("sensitivity") = 1, py::arg("dims") = 1,
      "Best verified lower bound, cheaper mechanism cost, and their ratio.");

  m.def(
      "lp_optimum",
      [](const std::string& cost, double epsilon, double delta,
         std::int64_t sensitivity, std::int64_t truncation) {
        auto sol = lp_solve_for(make_cost(cost),
                                make_params(epsilon, delta, sensitivity, 1),
                                truncation);
        py::dict d;
        d["optimal_value"] = sol.optimal_value;
        d["status"] = lp_status_name(sol.status);
        d["iterations"] = sol.iterations;
        d["boundary_mass"] = sol.boundary_mass;
        return d;
      },
      py::arg("cost"), py::arg("epsilon"), py::arg("delta"),
      py::arg("sensitivity") = 1, py::arg("truncation") = 0,
      "Optimum of the truncated cost-minimization program.");

  m.def(
      "tightest_delta",
      [](std::int64_t offset, const std::vector<double>& probs, double epsilon,
         std::int64_t sensitivity) {
        auto rep = tightest_delta_1d(NoiseDistribution{finite_from(offset, probs)},
                                     epsilon, sensitivity);
        py::dict d;
        d["tightest_delta"] = rep.tightest_delta;
        d["worst_shift"] = rep.worst_shift;
        return d;
      },
      py::arg("offset"), py::arg("probs"), py::arg("epsilon") = 0.0,
      py::arg("sensitivity") = 1,
      "Exact smallest delta for a finite pmf at the given epsilon.");

  m.def(
      "uniform_expected_cost",
      [](const std::string& cost, double delta, std::int64_t sensitivity) {
        auto d = uniform_mechanism_1d(make_params(0.0, delta, sensitivity, 1));
        return expected_cost(d, make_cost(cost));
      },
      py::arg("cost"), py::arg("delta"), py::arg("sensitivity") = 1);

  m.def(
      "laplace_expected_cost",
      [](const std::string& cost, double epsilon, std::int64_t sensitivity) {
        auto d = discrete_laplace(make_params(epsilon, 0.0, sensitivity, 1));
        return expected_cost(d, make_cost(cost));
      },
      py::arg("cost"), py::arg("epsilon"), py::arg("sensitivity") = 1);

  m.def(
      "sample_uniform",
      [](double delta, std::int64_t sensitivity, std::uint64_t seed,
         std::size_t n) {
        auto d = uniform_mechanism_1d(make_params(0.0, delta, sensitivity, 1));
        auto batch = sample(d, seed, n);
        std::vector<std::int64_t> flat(batch.draws.size());
        for (std::size_t i = 0; i < batch.draws.size(); ++i)
          flat[i] = batch.draws[i][0];
        return flat;
      },
      py::arg("delta"), py::arg("sensitivity") = 1, py::arg("seed") = 0,
      py::arg("n") = 1);

  m.def(
      "sample_laplace",
      [](double epsilon, std::int64_t sensitivity, std::uint64_t seed,
         std::size_t n) {
        auto d = discrete_laplace(make_params(epsilon, 0.0, sensitivity, 1));
        auto batch = sample(d, seed, n);
        std::vector<std::int64_t> flat(batch.draws.size());
        for (std::size_t i = 0; i < batch.draws.size(); ++i)
          flat[i] = batch.draws[i][0];
        return flat;
      },
      py::arg("epsilon"), py::arg("sensitivity") = 1, py::arg("seed") = 0,
      py::arg("n") = 1);

  m.def(
      "certificate",
      [](const std::string& regime, const std::string& cost, double epsilon,
         double delta, std::int64_t sensitivity, std::int64_t dims) {
        CostFn c = make_cost(cost);
        PrivacyParams p = make_params(epsilon, delta, sensitivity, dims);
        DualCertificate cert;
        if (regime == "zero-delta-1d") {
          cert = build_cert_zero_delta_1d(c, sensitivity, delta);
        } else if (regime == "multi-zero-delta-l1") {
          cert = build_cert_multi_l1_zero_delta(dims, sensitivity, delta);
        } else if (regime == "multi-zero-delta-l2") {
          cert = build_cert_multi_l2_zero_delta(dims, sensitivity, delta);
        } else if (regime == "multi-eps-delta-l1") {
          cert = build_cert_multi_eps_delta_l1(dims, sensitivity,
                                               std::max(epsilon, delta));
        } else if (regime == "multi-eps-delta-l2") {
          cert = build_cert_multi_eps_delta_l2(dims, sensitivity,
                                               std::max(epsilon, delta));
        } else {
          throw Error(Errc::InvalidParams, "unknown regime '" + regime + "'");
        }
        auto rep = verify_certificate(cert, c, p);
        py::dict d;
        d["feasible"] = rep.feasible;
        d["objective"] = rep.objective;
        d["worst_violation"] = rep.worst_violation;
        return d;
      },
      py::arg("regime"), py::arg("cost"), py::arg("epsilon"), py::arg("delta"),
      py::arg("sensitivity") = 1, py::arg("dims") = 1,
      "Build the named dual certificate and verify it.");

  m.def(
      "tradeoff_region",
      [](double epsilon, double delta) {
        auto r = tradeoff_region(epsilon, delta);
        return r.vertices;
      },
      py::arg("epsilon"), py::arg("delta"),
      "Vertices of the feasible error-pair region.");

  m.def("gamma_root", &gamma_root, py::arg("alpha") = 1.5);
}
