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

#ifndef DPNOISE_JSON_IO_HPP_
#define DPNOISE_JSON_IO_HPP_

#include <string>

#include "json.hpp"

#include "dpnoise/bounds.hpp"
#include "dpnoise/certificates.hpp"
#include "dpnoise/core.hpp"
#include "dpnoise/hypotest.hpp"
#include "dpnoise/lp.hpp"
#include "dpnoise/privacy.hpp"

namespace dpnoise {

using json = nlohmann::ordered_json;

// All emitted doubles are rounded to 12 significant digits so repeated runs
// and the CSV writer agree byte for byte.
double round12(double x);

json distribution_to_json(const NoiseDistribution& dist);
NoiseDistribution distribution_from_json(const json& j);

json cost_to_json(const CostFn& cost);
CostFn cost_from_json(const json& j);
// "l1", "l2", "power:m", or "table:file.json".
CostFn cost_from_spec(const std::string& spec);

json bound_report_to_json(const BoundReport& report);
json privacy_report_to_json(const PrivacyReport& report);
json lp_solution_to_json(const LpSolution& sol, bool include_pmf);
json certificate_report_to_json(const CertificateReport& report,
                                const DualCertificate& cert);
json gap_report_to_json(const GapReport& gap);
json tradeoff_region_to_json(const TradeoffRegion& region);

}  // namespace dpnoise

#endif  // DPNOISE_JSON_IO_HPP_
