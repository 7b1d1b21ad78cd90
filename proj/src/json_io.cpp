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

#include "dpnoise/json_io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>

namespace dpnoise {

double round12(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return std::strtod(buf, nullptr);
}

namespace {

json probs_to_json(const std::vector<double>& probs) {
  json arr = json::array();
  for (double p : probs) arr.push_back(p);
  return arr;
}

json axis_to_json(const Axis1D& axis) {
  if (const auto* f = std::get_if<Finite1D>(&axis)) {
    return json{{"type", "finite"}, {"offset", f->offset},
                {"probs", probs_to_json(f->probs)}};
  }
  return json{{"type", "geometric"},
              {"lambda", std::get<GeometricLaplace>(axis).lambda}};
}

Axis1D axis_from_json(const json& j) {
  std::string type = j.at("type").get<std::string>();
  if (type == "finite") {
    Finite1D f;
    f.offset = j.at("offset").get<std::int64_t>();
    f.probs = j.at("probs").get<std::vector<double>>();
    return f;
  }
  if (type == "geometric") {
    return GeometricLaplace{j.at("lambda").get<double>()};
  }
  throw Error(Errc::InvalidParams, "unknown axis type '" + type + "'");
}

}  // namespace

json distribution_to_json(const NoiseDistribution& dist) {
  if (const auto* axes = std::get_if<std::vector<Axis1D>>(&dist.value)) {
    json arr = json::array();
    for (const Axis1D& a : *axes) arr.push_back(axis_to_json(a));
    return json{{"type", "product"}, {"axes", arr}};
  }
  if (const auto* f = std::get_if<Finite1D>(&dist.value)) {
    return axis_to_json(Axis1D{*f});
  }
  return axis_to_json(Axis1D{std::get<GeometricLaplace>(dist.value)});
}

NoiseDistribution distribution_from_json(const json& j) {
  std::string type = j.at("type").get<std::string>();
  if (type == "product") {
    std::vector<Axis1D> axes;
    for (const json& a : j.at("axes")) axes.push_back(axis_from_json(a));
    return validate_distribution({std::move(axes)});
  }
  Axis1D axis = axis_from_json(j);
  if (const auto* f = std::get_if<Finite1D>(&axis)) {
    return validate_distribution({*f});
  }
  return validate_distribution({std::get<GeometricLaplace>(axis)});
}

json cost_to_json(const CostFn& cost) {
  switch (cost.kind) {
    case CostFn::Kind::L1: return json{{"type", "l1"}};
    case CostFn::Kind::L2: return json{{"type", "l2"}};
    case CostFn::Kind::Power:
      return json{{"type", "power"}, {"m", cost.power_m}};
    case CostFn::Kind::Table:
      return json{{"type", "table"}, {"values", cost.table}};
  }
  return json{};
}

CostFn cost_from_json(const json& j) {
  std::string type = j.at("type").get<std::string>();
  if (type == "l1") return CostFn::l1();
  if (type == "l2") return CostFn::l2();
  if (type == "power") return CostFn::power(j.at("m").get<std::int64_t>());
  if (type == "table") {
    return CostFn::from_table(j.at("values").get<std::vector<double>>());
  }
  throw Error(Errc::InvalidParams, "unknown cost type '" + type + "'");
}

CostFn cost_from_spec(const std::string& spec) {
  if (spec == "l1") return CostFn::l1();
  if (spec == "l2") return CostFn::l2();
  if (spec.rfind("power:", 0) == 0) {
    return CostFn::power(std::strtoll(spec.c_str() + 6, nullptr, 10));
  }
  if (spec.rfind("table:", 0) == 0) {
    std::ifstream in(spec.substr(6));
    if (!in) {
      throw Error(Errc::InvalidParams,
                  "cannot open table file '" + spec.substr(6) + "'");
    }
    json j;
    in >> j;
    return cost_from_json(j);
  }
  throw Error(Errc::InvalidParams,
              "unknown cost spec '" + spec +
                  "' (expected l1 | l2 | power:m | table:file.json)");
}

json bound_report_to_json(const BoundReport& report) {
  return json{{"value", round12(report.value)},
              {"kind",
               report.kind == BoundReport::Kind::Lower ? "lower" : "upper"},
              {"method", report.method},
              {"preconditions_ok", report.preconditions_ok},
              {"notes", report.notes}};
}

json privacy_report_to_json(const PrivacyReport& report) {
  return json{{"tightest_delta", round12(report.tightest_delta)},
              {"worst_shift", report.worst_shift},
              {"satisfies", report.satisfies}};
}

json lp_solution_to_json(const LpSolution& sol, bool include_pmf) {
  json j{{"optimal_value", round12(sol.optimal_value)},
         {"status", lp_status_name(sol.status)},
         {"boundary_mass", round12(sol.boundary_mass)},
         {"iterations", sol.iterations}};
  if (include_pmf) {
    j["pmf"] = axis_to_json(Axis1D{sol.pmf});
  }
  return j;
}

json certificate_report_to_json(const CertificateReport& report,
                                const DualCertificate& cert) {
  return json{{"regime", regime_name(cert.regime)},
              {"feasible", report.feasible},
              {"objective", round12(report.objective)},
              {"worst_violation", round12(report.worst_violation)},
              {"worst_index", report.worst_index},
              {"binding_constraints", report.binding_constraints},
              {"mu", round12(cert.mu)},
              {"axis_support", cert.axes.empty()
                                   ? 0
                                   : static_cast<std::int64_t>(
                                         cert.axes.front().size())}};
}

json gap_report_to_json(const GapReport& gap) {
  return json{{"lower", bound_report_to_json(gap.lower)},
              {"upper", bound_report_to_json(gap.upper)},
              {"ratio", round12(gap.ratio)}};
}

json tradeoff_region_to_json(const TradeoffRegion& region) {
  json verts = json::array();
  for (const auto& [fa, md] : region.vertices) {
    verts.push_back(json::array({round12(fa), round12(md)}));
  }
  return json{{"epsilon", round12(region.epsilon)},
              {"delta", round12(region.delta)},
              {"vertices", verts}};
}

}  // namespace dpnoise
