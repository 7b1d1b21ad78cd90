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

"""Smoke tests for the _dpnoise extension module."""

import math

import _dpnoise as dp


def test_gap_report():
    gap = dp.gap_report("l1", epsilon=0.0, delta=0.05, sensitivity=3)
    assert abs(gap["v_lb"]["value"] - 14.5) < 1e-9
    assert abs(gap["v_ub"]["value"] - 15.0) < 1e-12
    assert abs(gap["ratio"] - 15.0 / 14.5) < 1e-9


def test_lp_optimum():
    sol = dp.lp_optimum("l1", epsilon=0.0, delta=0.05, sensitivity=3)
    assert sol["status"] == "optimal"
    assert abs(sol["optimal_value"] - 14.5) < 1e-9


def test_tightest_delta():
    probs = [0.025] * 40
    rep = dp.tightest_delta(-20, probs, epsilon=0.0, sensitivity=1)
    assert abs(rep["tightest_delta"] - 0.025) < 1e-12


def test_mechanism_costs():
    assert abs(dp.uniform_expected_cost("l1", delta=0.05, sensitivity=1) - 5.0) < 1e-12
    lam = math.exp(-1.0)
    expect = 2 * lam / (1 - lam * lam)
    assert abs(dp.laplace_expected_cost("l1", epsilon=1.0) - expect) < 1e-12


def test_sampling_deterministic():
    a = dp.sample_laplace(1.0, seed=7, n=100)
    b = dp.sample_laplace(1.0, seed=7, n=100)
    assert a == b
    c = dp.sample_uniform(0.05, seed=7, n=100)
    assert all(-10 <= x <= 9 for x in c)


def test_certificate():
    rep = dp.certificate("zero-delta-1d", "l1", epsilon=0.0, delta=0.05,
                         sensitivity=3)
    assert rep["feasible"]
    assert abs(rep["objective"] - 14.5) < 1e-12


def test_tradeoff_region():
    verts = dp.tradeoff_region(math.log(2.0), 0.1)
    assert verts == [(0.0, 0.9), (0.3, 0.3), (0.9, 0.0)]


def test_gamma_root():
    assert abs(dp.gamma_root() - 1.7468) < 1e-3


def main():
    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_")]
    for test in tests:
        test()
        print(f"ok {test.__name__}")
    print(f"{len(tests)} smoke tests passed")


if __name__ == "__main__":
    main()
