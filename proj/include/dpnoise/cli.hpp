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

#ifndef DPNOISE_CLI_HPP_
#define DPNOISE_CLI_HPP_

#include <ostream>
#include <string>
#include <vector>

namespace dpnoise {

// Parses "x" as a one-point grid or "start:stop:log:count" /
// "start:stop:lin:count" with inclusive endpoints.
std::vector<double> parse_grid(const std::string& spec);

// Full command dispatch. Exit code 0 on success, 1 on domain errors, 2 on
// usage errors. Normal output goes to `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace dpnoise

#endif  // DPNOISE_CLI_HPP_
