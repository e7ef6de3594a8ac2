# Copyright 2026 The coordcert Authors
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

import pytest

import coordcert

RHS = 1.5 * math.sqrt(3.0)


def test_shared_random_bit_violates_chained_inequality():
    report = coordcert.ineq1(coordcert.fixture("shared-random-bit"))
    assert report["lhs"] == pytest.approx(3.0, abs=1e-12)
    assert report["rhs"] == pytest.approx(RHS, abs=1e-12)
    assert report["violated"]


def test_uniform_behavior_satisfies_chained_inequality():
    assert not coordcert.ineq1(coordcert.fixture("uniform"))["violated"]


def test_cli_report():
    code, report, _ = coordcert.run("ineq1", "--fixture", "shared-random-bit")
    assert code == 0
    assert report["schema_version"] == coordcert.SCHEMA_VERSION
    assert report["violation"] == pytest.approx(3 - RHS, abs=1e-11)


def test_cli_validation_exit_code():
    code, report, err = coordcert.run("ineq1", "--fixture", "nope")
    assert code == 2
    assert report is None
    assert "nope" in err


def test_moments_export_and_simulate_validation():
    circuit = coordcert.fixture("fig1")
    code, report, err = coordcert.run("moments", "--level", "1")
    assert code == 0, err
    assert len(report["index"]) == 5
    with pytest.raises(coordcert.ValidationError):
        coordcert.simulate(circuit, {"schema_version": 1, "sources": {}, "unitaries": {}, "measurements": {}})


def test_canonical_word():
    assert coordcert.canonical_word("D0 C0 B0 A0") == "C0 A0 D0 B0"
    assert coordcert.canonical_word("A0 A0") == "A0"


def test_witness_and_calibration():
    assert coordcert.witness_objective(1) == pytest.approx(RHS, abs=1e-9)
    assert coordcert.chsh_tsirelson_calibration() == pytest.approx(2 * math.sqrt(2.0), abs=1e-6)
