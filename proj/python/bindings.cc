// Copyright 2026 The coordcert Authors
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

#include <sstream>

#include "coordcert/bound.h"
#include "coordcert/cli.h"
#include "coordcert/errors.h"
#include "coordcert/inequalities.h"
#include "coordcert/json_io.h"
#include "coordcert/simulate.h"
#include "coordcert/words.h"

namespace py = pybind11;
using namespace coordcert;

namespace {

std::tuple<int, std::string, std::string> run(const std::vector<std::string> &args) {
    std::ostringstream out, err;
    int code;
    {
        py::gil_scoped_release release;
        code = run_cli(args, out, err);
    }
    return {code, out.str(), err.str()};
}

std::string simulate_json(const std::string &circuit_text, const std::string &realization_text) {
    const CausalCircuit circuit = circuit_from_json(Json::parse(circuit_text));
    require_valid(circuit);
    const QuantumRealization realization = realization_from_json(Json::parse(realization_text), circuit);
    return dump(to_json(simulate(circuit, realization)));
}

std::string ineq1_json(const std::string &behavior_text, double tol) {
    const Ineq1Report r = eval_ineq1(behavior_from_json(Json::parse(behavior_text)), tol);
    return dump(Json{{"lhs", r.lhs}, {"rhs", r.rhs}, {"violation", r.violation}, {"violated", r.violated}});
}

std::string fixture_json(const std::string &name) {
    if (name == "shared-random-bit") {
        return dump(to_json(shared_random_bit()));
    }
    if (name == "deterministic-zero") {
        return dump(to_json(deterministic_zero()));
    }
    if (name == "uniform") {
        return dump(to_json(uniform_binary()));
    }
    if (name == "fig1") {
        return dump(to_json(fig1_circuit()));
    }
    throw ValidationError("unknown fixture '" + name + "'");
}

std::string canonical(const std::string &word) {
    const auto c = canonical_word(parse_word(word), inflation_compatibility());
    return c ? to_string(*c) : "0";
}

}  // namespace

PYBIND11_MODULE(_coordcert, m) {
    m.doc() = "Bindings for the coordcert common-cause certification toolkit.";
    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<SolverError>(m, "SolverError", PyExc_RuntimeError);

    m.def("run_cli", &run, py::arg("args"), "Runs the command line; returns (exit code, stdout, stderr).");
    m.def("simulate_json", &simulate_json, py::arg("circuit"), py::arg("realization"),
          "Behavior JSON of a circuit and realization given as JSON text.");
    m.def("ineq1_json", &ineq1_json, py::arg("behavior"), py::arg("tol") = 1e-9,
          "Chained inequality report for a behavior given as JSON text.");
    m.def("fixture_json", &fixture_json, py::arg("name"), "Built-in behavior or circuit as JSON text.");
    m.def("canonical_word", &canonical, py::arg("word"),
          "Canonical form of an operator word under the inflation commutation rules; \"0\" if it vanishes.");
    m.def("chsh_tsirelson_calibration", [] { return chsh_tsirelson_calibration(); },
          "Largest CHSH value found by the optimizer for a two-qubit state.");
    m.def("witness_objective", [](int level) { return coordination_witness(level).feasibility.objective; },
          py::arg("level") = 2, "Objective of the explicit qubit witness in the relaxation.");
    m.attr("SCHEMA_VERSION") = kSchemaVersion;
}
