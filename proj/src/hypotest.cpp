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

#include "dpnoise/hypotest.hpp"

#include <cmath>

namespace dpnoise {

TradeoffRegion tradeoff_region(double epsilon, double delta) {
  if (!(epsilon >= 0.0) || !(delta >= 0.0 && delta <= 1.0)) {
    throw Error(Errc::InvalidParams, "need epsilon >= 0 and delta in [0, 1]");
  }
  TradeoffRegion region;
  region.epsilon = epsilon;
  region.delta = delta;
  double top = 1.0 - delta;
  double diag = top / (1.0 + std::exp(epsilon));
  region.vertices = {{0.0, top}, {diag, diag}, {top, 0.0}};
  return region;
}

bool point_feasible(const TradeoffRegion& region, double p_fa, double p_md) {
  if (!(p_fa >= 0.0 && p_fa <= 1.0 && p_md >= 0.0 && p_md <= 1.0)) {
    throw Error(Errc::InvalidParams, "probabilities must lie in [0, 1]");
  }
  double ee = std::exp(region.epsilon);
  double floor_level = 1.0 - region.delta;
  return p_fa + ee * p_md >= floor_level - 1e-12 &&
         ee * p_fa + p_md >= floor_level - 1e-12;
}

}  // namespace dpnoise
