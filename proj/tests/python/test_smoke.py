# Copyright 2026 The Sectorsim Authors
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

import math

import numpy as np
import pytest

import sectorsim

UP = {"tail": {"kind": "constant", "vector": [1, 0]}}
PLUS = {"tail": {"kind": "constant", "vector": [math.sqrt(0.5), math.sqrt(0.5)]}}
MODEL = {
    "amplitudes": [math.sqrt(0.5), math.sqrt(0.5)],
    "devices": [UP, {"tail": {"kind": "constant", "vector": [0.9, math.sqrt(1 - 0.81)]}}],
}


def test_classify_product():
    v = sectorsim.classify_product(
        {"tail": {"kind": "closed_form", "family": "one_plus_power", "c": 1, "p": 2}})
    assert v["kind"] == "ConvergesTo"
    assert v["value"]["re"] == pytest.approx(math.sinh(math.pi) / math.pi, abs=1e-6)


def test_sectors_and_overlaps():
    assert sectorsim.same_sector(UP, UP)["kind"] == "SameSector"
    assert sectorsim.same_sector(UP, PLUS)["kind"] == "DifferentSector"
    assert abs(sectorsim.truncated_overlap(UP, PLUS, 10)) == pytest.approx(2 ** -5, rel=1e-12)
    rows = sectorsim.overlap_sweep(UP, PLUS, 4)
    assert [r[0] for r in rows] == [1, 2, 3, 4]


def test_spin_sweep_matches_closed_form():
    for n, overlap, log10_overlap, probability in sectorsim.spin_sweep("1", 50):
        assert overlap == pytest.approx(2 ** (-n / 2), rel=1e-12)
        assert probability == pytest.approx(2.0 ** -n, rel=1e-12)


def test_operator_helpers():
    sigma_x = {"terms": [{"coeff": 1, "prefix_ops": [[0, 1, 1, 0]], "tail": {"kind": "identity", "dim": 2}}]}
    kind, reason = sectorsim.sector_action(sigma_x, UP)
    assert kind == "PreservesSector"
    assert reason == "finite-support"
    rows = sectorsim.expectation_sweep(sigma_x, UP, 3)
    assert all(abs(r[1]) == 0 for r in rows)


def test_density_and_horizon():
    rho = np.asarray(sectorsim.truncated_density(MODEL, 10))
    assert rho.shape == (2, 2)
    assert np.allclose(rho, rho.conj().T)
    assert abs(rho[0, 1]) == pytest.approx(0.5 * 0.9 ** 10, rel=1e-12)
    assert sectorsim.decoherence_horizon(MODEL, 1e-6) == {(0, 1): 125}


def test_sampling_is_seeded():
    a = sectorsim.sample_counts(MODEL, 1000, 5)
    assert sum(a) == 1000
    assert a == sectorsim.sample_counts(MODEL, 1000, 5)


def test_cascade():
    run = sectorsim.run_cascade({"F": 10, "S": 100, "K": 50, "eta": 0.99}, 1)
    assert run["total_dofs"] == 51010
    assert run["off_diagonal_log10"] == pytest.approx(-222.9, abs=0.1)


def test_errors_carry_codes():
    with pytest.raises(sectorsim.SectorsimError) as info:
        sectorsim.same_sector({"prefix": []}, UP)
    assert info.value.code == "InvalidArgument"
    code, out, err = sectorsim.run_cli(["spin-sweep", "--xi", "3/2"])
    assert code == 2
    assert out == ""
    assert '"code"' in err
