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
"""Python access to the coordcert library and command line."""

import json

from ._coordcert import (
    SCHEMA_VERSION,
    SolverError,
    ValidationError,
    canonical_word,
    chsh_tsirelson_calibration,
    witness_objective,
)
from . import _coordcert


def run(*args):
    """Runs a CLI command; returns (exit code, parsed report or None, stderr)."""
    code, out, err = _coordcert.run_cli([str(a) for a in args])
    report = json.loads(out) if code == 0 and out.startswith("{") else None
    return code, report, err


def fixture(name):
    """Built-in behavior or circuit as a dict."""
    return json.loads(_coordcert.fixture_json(name))


def simulate(circuit, realization):
    """Behavior dict of a circuit dict and realization dict."""
    return json.loads(_coordcert.simulate_json(json.dumps(circuit), json.dumps(realization)))


def ineq1(behavior, tol=1e-9):
    """Chained inequality report for a behavior dict."""
    return json.loads(_coordcert.ineq1_json(json.dumps(behavior), tol))


__all__ = [
    "SCHEMA_VERSION",
    "SolverError",
    "ValidationError",
    "canonical_word",
    "chsh_tsirelson_calibration",
    "fixture",
    "ineq1",
    "run",
    "simulate",
    "witness_objective",
]
