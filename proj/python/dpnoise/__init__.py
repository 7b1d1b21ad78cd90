# Copyright 2026 The dpnoise Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Python interface to the dpnoise C++ core."""

from ._dpnoise import (  # noqa: F401
    DpnoiseError,
    certificate,
    gamma_root,
    gap_report,
    laplace_expected_cost,
    lp_optimum,
    sample_laplace,
    sample_uniform,
    tightest_delta,
    tradeoff_region,
    uniform_expected_cost,
)

__all__ = [
    "DpnoiseError",
    "certificate",
    "gamma_root",
    "gap_report",
    "laplace_expected_cost",
    "lp_optimum",
    "sample_laplace",
    "sample_uniform",
    "tightest_delta",
    "tradeoff_region",
    "uniform_expected_cost",
]
