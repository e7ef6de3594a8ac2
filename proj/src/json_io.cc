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

#include "coordcert/json_io.h"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "coordcert/errors.h"

namespace coordcert {

double round_sig(double x, int digits) {
    if (!std::isfinite(x) || x == 0.0) {
        return x == 0.0 ? 0.0 : x;
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", digits, x);
    return std::strtod(buf, nullptr);
}

Json number(double x) {
    if (!std::isfinite(x)) {
        throw ValidationError("cannot serialize a non-finite number");
    }
    return round_sig(x);
}

namespace {

void require(bool ok, const std::string &where, const std::string &what) {
    if (!ok) {
        throw ValidationError(where + ": " + what);
    }
}

void reject_unknown_keys(const Json &j, const std::set<std::string> &allowed, const std::string &where) {
    require(j.is_object(), where, "expected an object");
    for (const auto &[key, _] : j.items()) {
        require(allowed.contains(key), where, "unknown key '" + key + "'");
    }
}

const Json &field(const Json &j, const std::string &key, const std::string &where) {
    require(j.contains(key), where, "missing field '" + key + "'");
    return j.at(key);
}

void check_schema(const Json &j, const std::string &where) {
    if (j.contains("schema_version")) {
        require(j.at("schema_version") == kSchemaVersion, where, "unsupported schema_version");
    }
}

Complex complex_from_json(const Json &j, const std::string &where) {
    require(j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number(), where,
            "expected a [re, im] pair");
    return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

Json matrix_to_json(const ComplexMatrix &m) {
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index k = 0; k < m.cols(); ++k) {
            row.push_back(Json::array({number(m(i, k).real()), number(m(i, k).imag())}));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

ComplexMatrix matrix_from_json(const Json &j, const std::string &where) {
    require(j.is_array() && !j.empty(), where, "expected a non-empty array of rows");
    const size_t cols = j[0].is_array() ? j[0].size() : 0;
    require(cols > 0, where, "expected rows of [re, im] pairs");
    ComplexMatrix m(static_cast<Eigen::Index>(j.size()), static_cast<Eigen::Index>(cols));
    for (size_t i = 0; i < j.size(); ++i) {
        require(j[i].is_array() && j[i].size() == cols, where, "ragged matrix rows");
        for (size_t k = 0; k < cols; ++k) {
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = complex_from_json(j[i][k], where);
        }
    }
    return m;
}

Json vector_to_json(const ComplexVector &v) {
    Json out = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        out.push_back(Json::array({number(v(i).real()), number(v(i).imag())}));
    }
    return out;
}

ComplexVector vector_from_json(const Json &j, const std::string &where) {
    require(j.is_array() && !j.empty(), where, "expected a non-empty array of [re, im] pairs");
    ComplexVector v(static_cast<Eigen::Index>(j.size()));
    for (size_t i = 0; i < j.size(); ++i) {
        v(static_cast<Eigen::Index>(i)) = complex_from_json(j[i], where);
    }
    return v;
}

Json real_matrix_to_json(const RealMatrix &m) {
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index k = 0; k < m.cols(); ++k) {
            row.push_back(number(m(i, k)));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

RealMatrix real_matrix_from_json(const Json &j, const std::string &where) {
    require(j.is_array(), where, "expected an array of rows");
    if (j.empty()) {
        return RealMatrix(0, 0);
    }
    const size_t cols = j[0].size();
    RealMatrix m(static_cast<Eigen::Index>(j.size()), static_cast<Eigen::Index>(cols));
    for (size_t i = 0; i < j.size(); ++i) {
        require(j[i].is_array() && j[i].size() == cols, where, "ragged matrix rows");
        for (size_t k = 0; k < cols; ++k) {
            require(j[i][k].is_number(), where, "expected numbers");
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = j[i][k].get<double>();
        }
    }
    return m;
}

Json to_json(const CausalCircuit &circuit) {
    const CausalCircuit c = circuit.sorted();
    Json nodes = Json::array();
    for (const Node &n : c.nodes()) {
        Json node{{"id", n.id}, {"kind", std::string(to_string(n.kind))}};
        if (n.kind == NodeKind::measurement) {
            node["outcomes"] = n.outcomes;
        }
        nodes.push_back(std::move(node));
    }
    Json edges = Json::array();
    for (const Wire &w : c.wires()) {
        edges.push_back(Json{{"id", w.id}, {"from", w.from}, {"to", w.to}, {"dim", w.dim}});
    }
    return Json{{"schema_version", kSchemaVersion}, {"nodes", nodes}, {"edges", edges}};
}

CausalCircuit circuit_from_json(const Json &j) {
    reject_unknown_keys(j, {"schema_version", "nodes", "edges"}, "circuit");
    check_schema(j, "circuit");
    CausalCircuit c;
    const Json &nodes = field(j, "nodes", "circuit");
    require(nodes.is_array(), "circuit.nodes", "expected an array");
    for (size_t i = 0; i < nodes.size(); ++i) {
        const std::string where = "circuit.nodes[" + std::to_string(i) + "]";
        const Json &n = nodes[i];
        reject_unknown_keys(n, {"id", "kind", "outcomes"}, where);
        require(field(n, "id", where).is_string(), where, "id must be a string");
        require(field(n, "kind", where).is_string(), where, "kind must be a string");
        int outcomes = 2;
        if (n.contains("outcomes")) {
            require(n.at("outcomes").is_number_integer(), where, "outcomes must be an integer");
            outcomes = n.at("outcomes").get<int>();
        }
        c.add_node(n.at("id").get<std::string>(), node_kind_from_string(n.at("kind").get<std::string>()), outcomes);
    }
    const Json &edges = field(j, "edges", "circuit");
    require(edges.is_array(), "circuit.edges", "expected an array");
    for (size_t i = 0; i < edges.size(); ++i) {
        const std::string where = "circuit.edges[" + std::to_string(i) + "]";
        const Json &e = edges[i];
        reject_unknown_keys(e, {"id", "from", "to", "dim"}, where);
        require(field(e, "from", where).is_string() && field(e, "to", where).is_string(), where,
                "from/to must be strings");
        int dim = 2;
        if (e.contains("dim")) {
            require(e.at("dim").is_number_integer(), where, "dim must be an integer");
            dim = e.at("dim").get<int>();
        }
        std::string id;
        if (e.contains("id")) {
            require(e.at("id").is_string(), where, "id must be a string");
            id = e.at("id").get<std::string>();
        }
        c.add_wire(e.at("from").get<std::string>(), e.at("to").get<std::string>(), dim, id);
    }
    return c;
}

Json to_json(const QuantumRealization &r) {
    Json sources = Json::object();
    for (const auto &[id, s] : r.sources) {
        if (s.pure) {
            sources[id] = Json{{"state", vector_to_json(*s.pure)}};
        } else if (s.density) {
            sources[id] = Json{{"density", matrix_to_json(*s.density)}};
        }
    }
    Json unitaries = Json::object();
    for (const auto &[id, u] : r.unitaries) {
        unitaries[id] = matrix_to_json(u);
    }
    Json measurements = Json::object();
    for (const auto &[id, fam] : r.measurements) {
        Json list = Json::array();
        for (const auto &p : fam) {
            list.push_back(matrix_to_json(p));
        }
        measurements[id] = std::move(list);
    }
    Json out{{"schema_version", kSchemaVersion},
             {"sources", sources},
             {"unitaries", unitaries},
             {"measurements", measurements}};
    if (!r.wire_dims.empty()) {
        out["wire_dims"] = r.wire_dims;
    }
    return out;
}

QuantumRealization realization_from_json(const Json &j, const CausalCircuit &circuit) {
    reject_unknown_keys(j, {"schema_version", "wire_dims", "sources", "unitaries", "measurements"}, "realization");
    check_schema(j, "realization");
    QuantumRealization r;
    if (j.contains("wire_dims")) {
        require(j.at("wire_dims").is_object(), "realization.wire_dims", "expected an object");
        for (const auto &[wire, d] : j.at("wire_dims").items()) {
            require(d.is_number_integer(), "realization.wire_dims", "dimension must be an integer");
            r.wire_dims[wire] = d.get<int>();
        }
    }
    const Json &sources = field(j, "sources", "realization");
    require(sources.is_object(), "realization.sources", "expected an object");
    for (const auto &[id, s] : sources.items()) {
        const std::string where = "node '" + id + "'";
        reject_unknown_keys(s, {"state", "density"}, where);
        if (s.contains("state")) {
            r.sources[id].pure = vector_from_json(s.at("state"), where);
        }
        if (s.contains("density")) {
            r.sources[id].density = matrix_from_json(s.at("density"), where);
        }
    }
    const Json &unitaries = field(j, "unitaries", "realization");
    require(unitaries.is_object(), "realization.unitaries", "expected an object");
    for (const auto &[id, u] : unitaries.items()) {
        r.unitaries[id] = matrix_from_json(u, "node '" + id + "'");
    }
    const Json &measurements = field(j, "measurements", "realization");
    require(measurements.is_object(), "realization.measurements", "expected an object");
    for (const auto &[id, fam] : measurements.items()) {
        const std::string where = "node '" + id + "'";
        require(fam.is_array(), where, "expected a list of projectors");
        for (const auto &p : fam) {
            r.measurements[id].push_back(matrix_from_json(p, where));
        }
    }
    validate_realization(circuit, r);
    return r;
}

Json to_json(const Behavior &b) {
    Json probs = Json::array();
    for (double p : b.probabilities()) {
        probs.push_back(number(p));
    }
    return Json{{"schema_version", kSchemaVersion},
                {"parties", b.parties()},
                {"arities", b.arities()},
                {"probabilities", probs}};
}

Behavior behavior_from_json(const Json &j) {
    reject_unknown_keys(j, {"schema_version", "parties", "arities", "probabilities"}, "behavior");
    check_schema(j, "behavior");
    const Json &parties = field(j, "parties", "behavior");
    const Json &arities = field(j, "arities", "behavior");
    const Json &probs = field(j, "probabilities", "behavior");
    require(parties.is_array() && arities.is_array() && probs.is_array(), "behavior", "expected arrays");
    std::vector<std::string> ps;
    for (const auto &p : parties) {
        require(p.is_string(), "behavior.parties", "expected strings");
        ps.push_back(p.get<std::string>());
    }
    std::vector<int> as;
    for (const auto &a : arities) {
        require(a.is_number_integer(), "behavior.arities", "expected integers");
        as.push_back(a.get<int>());
    }
    std::vector<double> xs;
    for (const auto &p : probs) {
        require(p.is_number(), "behavior.probabilities", "expected numbers");
        xs.push_back(p.get<double>());
    }
    Behavior b(ps, as, xs);
    b.check();
    return b;
}

Json to_json(const SettingsBehavior &sb) {
    Json table = Json::array();
    for (const auto &b : sb.table()) {
        Json entry = to_json(b);
        entry.erase("schema_version");
        table.push_back(std::move(entry));
    }
    return Json{{"schema_version", kSchemaVersion},
                {"parties", sb.parties()},
                {"setting_arities", sb.setting_arities()},
                {"table", table}};
}

SettingsBehavior settings_behavior_from_json(const Json &j) {
    reject_unknown_keys(j, {"schema_version", "parties", "setting_arities", "table"}, "settings behavior");
    check_schema(j, "settings behavior");
    std::vector<std::string> ps = field(j, "parties", "settings behavior").get<std::vector<std::string>>();
    std::vector<int> as = field(j, "setting_arities", "settings behavior").get<std::vector<int>>();
    std::vector<Behavior> table;
    for (const auto &entry : field(j, "table", "settings behavior")) {
        table.push_back(behavior_from_json(entry));
    }
    return SettingsBehavior(ps, as, table);
}

std::string dump(const Json &j) {
    return j.dump(2) + "\n";
}

Json read_json_file(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw ValidationError("cannot open '" + path.string() + "'");
    }
    try {
        return Json::parse(in);
    } catch (const Json::parse_error &e) {
        throw ValidationError("'" + path.string() + "' is not valid JSON: " + e.what());
    }
}

void write_text_file(const std::filesystem::path &path, const std::string &text) {
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path());
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ValidationError("cannot write '" + path.string() + "'");
    }
    out << text;
}

}  // namespace coordcert
