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

#include "coordcert/inflation.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "coordcert/errors.h"

namespace coordcert {

std::string InflationSpec::original_wire(const std::string &wire_id) const {
    const Wire *w = graph.find_wire(wire_id);
    if (!w) {
        throw ValidationError("unknown inflated wire '" + wire_id + "'");
    }
    return original.at(w->from) + "->" + original.at(w->to);
}

Compatibility InflationSpec::compatibility() const {
    Compatibility c;
    for (const auto &[x, y] : incompatible) {
        c.incompatible.insert(std::minmax(x.at(0) - 'A', y.at(0) - 'A'));
    }
    return c;
}

namespace {

std::set<std::string> ancestors_of(const CausalCircuit &c, const std::string &node) {
    std::set<std::string> seen;
    std::vector<std::string> stack{node};
    while (!stack.empty()) {
        const std::string cur = stack.back();
        stack.pop_back();
        for (const Wire *w : c.in_wires(cur)) {
            if (seen.insert(w->from).second) {
                stack.push_back(w->from);
            }
        }
    }
    return seen;
}

CausalCircuit without_wires(const CausalCircuit &c, const std::set<std::string> &drop) {
    CausalCircuit out;
    for (const auto &n : c.nodes()) {
        out.add_node(n.id, n.kind, n.outcomes);
    }
    for (const auto &w : c.wires()) {
        if (!drop.count(w.id)) {
            out.add_wire(w.from, w.to, w.dim, w.id);
        }
    }
    return out;
}

/// Ancestral subgraph of a party pair: node set and edge set.
std::pair<std::set<std::string>, std::set<std::pair<std::string, std::string>>> ancestral(
    const CausalCircuit &c, const std::string &x, const std::string &y,
    const std::map<std::string, std::string> *rename) {
    std::set<std::string> nodes = ancestors_of(c, x);
    const auto ay = ancestors_of(c, y);
    nodes.insert(ay.begin(), ay.end());
    nodes.insert(x);
    nodes.insert(y);
    auto name = [&](const std::string &id) { return rename ? rename->at(id) : id; };
    std::set<std::string> mapped;
    for (const auto &n : nodes) {
        mapped.insert(name(n));
    }
    if (mapped.size() != nodes.size()) {
        return {};
    }
    std::set<std::pair<std::string, std::string>> edges;
    for (const auto &w : c.wires()) {
        if (nodes.count(w.from) && nodes.count(w.to)) {
            edges.insert({name(w.from), name(w.to)});
        }
    }
    return {mapped, edges};
}

int wire_dim_of(const InflationRealization &r, const std::string &fig1_wire) {
    auto it = r.wire_dims.find(fig1_wire);
    return it == r.wire_dims.end() ? 2 : it->second;
}

int product_dim(const InflationRealization &r, const std::vector<const Wire *> &wires) {
    int d = 1;
    for (const Wire *w : wires) {
        d *= wire_dim_of(r, w->id);
    }
    return d;
}

}  // namespace

InflationSpec fig2_inflation() {
    InflationSpec spec;
    CausalCircuit &g = spec.graph;
    for (const char *s : {"ACD1", "ABD1", "ABC", "BCD", "ACD2", "ABD2"}) {
        g.add_node(s, NodeKind::source);
    }
    for (const char *t : {"AD1", "AC1", "AB", "BD1", "BC", "AC2", "CD", "BD2", "AD2"}) {
        g.add_node(t, NodeKind::transformation);
    }
    for (const char *m : {"A", "B", "C", "D"}) {
        g.add_node(m, NodeKind::measurement, 2);
    }
    const std::vector<std::pair<std::string, std::vector<std::string>>> links{
        {"ACD1", {"AD1", "AC1"}},      {"ABD1", {"AD1", "AB", "BD1"}},       {"ABC", {"AB", "BC", "AC1", "AC2"}},
        {"BCD", {"BC", "CD", "BD1", "BD2"}}, {"ACD2", {"AC2", "CD", "AD2"}}, {"ABD2", {"BD2", "AD2"}},
    };
    for (const auto &[s, targets] : links) {
        for (const auto &t : targets) {
            g.add_wire(s, t, 2);
        }
    }
    const std::vector<std::pair<std::string, std::string>> reads{
        {"AD1", "A"}, {"AC1", "A"}, {"AB", "A"}, {"AB", "B"}, {"BC", "B"}, {"BD1", "B"},
        {"AC2", "C"}, {"BC", "C"},  {"CD", "C"}, {"AD2", "D"}, {"BD2", "D"}, {"CD", "D"},
    };
    for (const auto &[t, m] : reads) {
        g.add_wire(t, m, 2);
    }
    g = g.sorted();
    for (const auto &n : g.nodes()) {
        std::string o = n.id;
        while (!o.empty() && std::isdigit(static_cast<unsigned char>(o.back()))) {
            o.pop_back();
        }
        spec.original[n.id] = o;
    }
    spec.dots = {BlackDot{"ABC", {"ABC->AC1", "ABC->AC2"}}, BlackDot{"BCD", {"BCD->BD1", "BCD->BD2"}}};
    spec.incompatible = derived_incompatible_pairs(spec);
    return spec;
}

std::vector<std::pair<std::string, std::string>> derived_incompatible_pairs(const InflationSpec &spec) {
    std::set<std::pair<std::string, std::string>> out;
    for (const auto &dot : spec.dots) {
        const Wire *w0 = spec.graph.find_wire(dot.links[0]);
        const Wire *w1 = spec.graph.find_wire(dot.links[1]);
        if (!w0 || !w1) {
            throw ValidationError("dot on '" + dot.source + "' references an unknown link");
        }
        for (const auto &x : measurement_future(spec.graph, w0->to)) {
            for (const auto &y : measurement_future(spec.graph, w1->to)) {
                if (x != y) {
                    out.insert(std::minmax(x, y));
                }
            }
        }
    }
    return {out.begin(), out.end()};
}

std::set<std::string> source_ancestors(const InflationSpec &spec, const std::string &node) {
    std::set<std::string> out;
    for (const auto &a : ancestors_of(spec.graph, node)) {
        if (spec.graph.node(a).kind == NodeKind::source) {
            out.insert(a);
        }
    }
    return out;
}

void validate_inflation(const InflationSpec &spec) {
    require_valid(spec.graph);
    for (const auto &dot : spec.dots) {
        std::string target_original;
        for (const auto &l : dot.links) {
            const Wire *w = spec.graph.find_wire(l);
            if (!w || w->from != dot.source) {
                throw ValidationError("dot on '" + dot.source + "': link '" + l + "' does not leave the source");
            }
            const std::string o = spec.original.at(w->to);
            if (!target_original.empty() && o != target_original) {
                throw ValidationError("dot on '" + dot.source + "' feeds copies of different transformations");
            }
            target_original = o;
        }
        if (dot.links[0] == dot.links[1]) {
            throw ValidationError("dot on '" + dot.source + "' needs two distinct links");
        }
    }
    for (const auto &sub : valid_subcircuits(spec)) {
        require_valid(sub.circuit);
    }
    if (derived_incompatible_pairs(spec) != spec.incompatible) {
        throw ValidationError("incompatible pairs differ from the pairs downstream of the dots");
    }
}

std::vector<Subcircuit> valid_subcircuits(const InflationSpec &spec) {
    const CausalCircuit fig1 = fig1_circuit();
    const auto parties = spec.graph.measurement_ids();
    std::vector<Subcircuit> out;
    const size_t count = size_t{1} << spec.dots.size();
    for (size_t mask = 0; mask < count; ++mask) {
        Subcircuit sub;
        std::set<std::string> drop;
        for (size_t d = 0; d < spec.dots.size(); ++d) {
            const size_t keep = (mask >> (spec.dots.size() - 1 - d)) & 1u;
            sub.links.push_back(spec.dots[d].links[keep]);
            drop.insert(spec.dots[d].links[1 - keep]);
        }
        sub.circuit = without_wires(spec.graph, drop);
        for (size_t i = 0; i < parties.size(); ++i) {
            for (size_t j = i + 1; j < parties.size(); ++j) {
                const auto inflated = ancestral(sub.circuit, parties[i], parties[j], &spec.original);
                const auto reference = ancestral(fig1, parties[i], parties[j], nullptr);
                if (!inflated.first.empty() && inflated == reference) {
                    sub.reproduced_pairs.push_back({parties[i], parties[j]});
                }
            }
        }
        out.push_back(std::move(sub));
    }
    return out;
}

InflationRealization inflate(const InflationSpec &spec, const CausalCircuit &fig1,
                             const QuantumRealization &realization) {
    validate_realization(fig1, realization);
    InflationRealization r;
    for (const auto &w : fig1.wires()) {
        r.wire_dims[w.id] = wire_dim(realization, w);
    }
    for (const auto &n : spec.graph.nodes()) {
        const std::string &o = spec.original.at(n.id);
        switch (n.kind) {
            case NodeKind::source: {
                const SourceState &s = realization.sources.at(o);
                if (!s.pure) {
                    throw ValidationError("node '" + o + "': inflation needs pure source states");
                }
                r.sources[n.id] = *s.pure;
                break;
            }
            case NodeKind::transformation:
                r.unitaries[n.id] = realization.unitaries.at(o);
                break;
            case NodeKind::measurement: {
                const auto &family = realization.measurements.at(o);
                if (family.size() != 2) {
                    throw ValidationError("node '" + o + "': inflation needs binary measurements");
                }
                r.projectors[n.id] = family[0];
                break;
            }
        }
    }
    return r;
}

namespace {

template <typename MakeState, typename MakeUnitary, typename MakeProjector>
InflationRealization build_realization(const InflationSpec &spec, MakeState state, MakeUnitary unitary,
                                       MakeProjector projector) {
    const CausalCircuit fig1 = fig1_circuit();
    InflationRealization r;
    for (const auto &w : fig1.wires()) {
        r.wire_dims[w.id] = w.dim;
    }
    for (const auto &n : spec.graph.nodes()) {
        const std::string &o = spec.original.at(n.id);
        switch (n.kind) {
            case NodeKind::source:
                r.sources[n.id] = state(product_dim(r, fig1.out_wires(o)));
                break;
            case NodeKind::transformation:
                r.unitaries[n.id] = unitary(product_dim(r, fig1.in_wires(o)));
                break;
            case NodeKind::measurement:
                r.projectors[n.id] = projector(product_dim(r, fig1.in_wires(o)));
                break;
        }
    }
    return r;
}

}  // namespace

InflationRealization random_inflation_realization(const InflationSpec &spec, Rng &rng) {
    return build_realization(
        spec, [&](int d) { return random_state(d, rng); }, [&](int d) { return random_unitary(d, rng); },
        [&](int d) {
            std::uniform_int_distribution<int> rank(1, std::max(1, d - 1));
            return random_binary_measurement(d, rank(rng), rng)[0];
        });
}

InflationRealization random_classical_inflation_realization(const InflationSpec &spec, Rng &rng) {
    return build_realization(
        spec,
        [&](int d) {
            std::uniform_int_distribution<int> pick(0, d - 1);
            return ComplexVector(ComplexVector::Unit(d, pick(rng)));
        },
        [&](int d) {
            std::vector<int> perm(static_cast<size_t>(d));
            std::iota(perm.begin(), perm.end(), 0);
            std::shuffle(perm.begin(), perm.end(), rng);
            ComplexMatrix u = ComplexMatrix::Zero(d, d);
            for (int i = 0; i < d; ++i) {
                u(perm[static_cast<size_t>(i)], i) = 1;
            }
            return u;
        },
        [&](int d) {
            std::bernoulli_distribution coin(0.5);
            ComplexMatrix p = ComplexMatrix::Zero(d, d);
            for (int i = 0; i < d; ++i) {
                p(i, i) = coin(rng) ? 1.0 : 0.0;
            }
            return p;
        });
}

InflationHeisenberg::InflationHeisenberg(const InflationSpec &spec, const InflationRealization &realization) {
    const CausalCircuit fig1 = fig1_circuit();
    const CausalCircuit &g = spec.graph;
    auto mode_name = [](const std::string &copy, const std::string &fig1_wire) { return copy + ":" + fig1_wire; };
    auto feeder = [&](const std::string &node, const std::string &original_from) -> std::string {
        for (const Wire *w : g.in_wires(node)) {
            if (spec.original.at(w->from) == original_from) {
                return w->from;
            }
        }
        throw ValidationError("node '" + node + "' has no input from a copy of '" + original_from + "'");
    };

    state_ = ComplexVector::Ones(1);
    for (const auto &s : g.ids_of_kind(NodeKind::source)) {
        const std::string &o = spec.original.at(s);
        int d = 1;
        for (const Wire *w : fig1.out_wires(o)) {
            modes_.push_back({mode_name(s, w->id), wire_dim_of(realization, w->id)});
            d *= modes_.back().dim;
        }
        auto it = realization.sources.find(s);
        if (it == realization.sources.end()) {
            throw ValidationError("node '" + s + "': missing source state");
        }
        if (it->second.size() != d) {
            throw ValidationError("node '" + s + "': state has dimension " + std::to_string(it->second.size()) +
                                  ", expected " + std::to_string(d));
        }
        if (std::abs(it->second.norm() - 1) > kConstructionTol) {
            throw ValidationError("node '" + s + "': state is not normalized");
        }
        state_ = kron(state_, it->second);
    }

    std::map<std::string, TransformStep> steps;
    for (const auto &t : g.ids_of_kind(NodeKind::transformation)) {
        const std::string &o = spec.original.at(t);
        TransformStep step;
        step.node = t;
        int din = 1, dout = 1;
        for (const Wire *w : fig1.in_wires(o)) {
            step.inputs.push_back(mode_name(feeder(t, w->from), w->id));
            step.input_modes.push_back({step.inputs.back(), wire_dim_of(realization, w->id)});
            din *= step.input_modes.back().dim;
        }
        for (const Wire *w : fig1.out_wires(o)) {
            step.outputs.push_back({mode_name(t, w->id), wire_dim_of(realization, w->id)});
            dout *= step.outputs.back().dim;
        }
        auto it = realization.unitaries.find(t);
        if (it == realization.unitaries.end()) {
            throw ValidationError("node '" + t + "': missing unitary");
        }
        if (it->second.rows() != dout || it->second.cols() != din || din != dout) {
            throw ValidationError("node '" + t + "': unitary has the wrong dimension");
        }
        if (!is_unitary(it->second)) {
            throw ValidationError("node '" + t + "': matrix is not unitary");
        }
        step.unitary = it->second;
        steps[t] = std::move(step);
    }

    for (const auto &p : g.measurement_ids()) {
        PartyData data;
        int d = 1;
        for (const Wire *w : fig1.in_wires(p)) {
            data.inputs.push_back(mode_name(feeder(p, w->from), w->id));
            d *= wire_dim_of(realization, w->id);
        }
        std::vector<TransformStep> chain;
        for (const auto &a : ancestors_of(g, p)) {
            if (g.node(a).kind == NodeKind::transformation) {
                chain.push_back(steps.at(a));
            }
        }
        data.propagator = Propagator(std::move(chain));
        auto it = realization.projectors.find(p);
        if (it == realization.projectors.end()) {
            throw ValidationError("node '" + p + "': missing projector");
        }
        if (it->second.rows() != d || it->second.cols() != d) {
            throw ValidationError("node '" + p + "': projector has the wrong dimension");
        }
        if (!is_projector(it->second)) {
            throw ValidationError("node '" + p + "': matrix is not a projector");
        }
        data.projector = it->second;
        parties_[p] = std::move(data);
        party_names_.push_back(p);
    }
}

ComplexVector InflationHeisenberg::apply(const std::string &party, int outcome, const ComplexVector &v) const {
    auto it = parties_.find(party);
    if (it == parties_.end()) {
        throw ValidationError("unknown party '" + party + "'");
    }
    if (outcome != 0 && outcome != 1) {
        throw ValidationError("inflation outcomes are binary");
    }
    const PartyData &data = it->second;
    StateTensor st(modes_, v);
    std::vector<std::string> order;
    for (const auto &m : modes_) {
        order.push_back(m.wire);
    }
    data.propagator.forward(st);
    if (outcome == 0) {
        st.apply(data.inputs, data.projector);
    } else {
        const auto d = data.projector.rows();
        st.apply(data.inputs, ComplexMatrix::Identity(d, d) - data.projector);
    }
    data.propagator.backward(st);
    st.reorder(order);
    return std::move(st.amplitudes());
}

ComplexVector InflationHeisenberg::apply(const Word &word, const ComplexVector &v) const {
    ComplexVector out = v;
    for (auto it = word.rbegin(); it != word.rend(); ++it) {
        const std::string party(1, static_cast<char>('A' + it->party));
        out = apply(party, it->outcome, out);
    }
    return out;
}

Json to_json(const InflationRealization &realization) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["wire_dims"] = realization.wire_dims;
    Json sources = Json::object();
    for (const auto &[id, v] : realization.sources) {
        sources[id] = vector_to_json(v);
    }
    Json unitaries = Json::object();
    for (const auto &[id, u] : realization.unitaries) {
        unitaries[id] = matrix_to_json(u);
    }
    Json projectors = Json::object();
    for (const auto &[id, p] : realization.projectors) {
        projectors[id] = matrix_to_json(p);
    }
    j["sources"] = sources;
    j["unitaries"] = unitaries;
    j["projectors"] = projectors;
    return j;
}

InflationRealization inflation_realization_from_json(const Json &j) {
    if (!j.is_object()) {
        throw ValidationError("inflation realization must be a JSON object");
    }
    for (const auto &[key, value] : j.items()) {
        if (key != "schema_version" && key != "wire_dims" && key != "sources" && key != "unitaries" &&
            key != "projectors") {
            throw ValidationError("inflation realization: unknown key '" + key + "'");
        }
    }
    if (j.value("schema_version", 0) != kSchemaVersion) {
        throw ValidationError("inflation realization: unsupported schema_version");
    }
    InflationRealization r;
    if (j.contains("wire_dims")) {
        for (const auto &[wire, d] : j.at("wire_dims").items()) {
            if (!d.is_number_integer() || d.get<int>() < 1) {
                throw ValidationError("inflation realization: wire '" + wire + "' needs a positive dimension");
            }
            r.wire_dims[wire] = d.get<int>();
        }
    }
    for (const char *key : {"sources", "unitaries", "projectors"}) {
        if (!j.contains(key) || !j.at(key).is_object()) {
            throw ValidationError(std::string("inflation realization: '") + key + "' must be an object");
        }
    }
    for (const auto &[id, v] : j.at("sources").items()) {
        r.sources[id] = vector_from_json(v, "node '" + id + "'");
    }
    for (const auto &[id, u] : j.at("unitaries").items()) {
        r.unitaries[id] = matrix_from_json(u, "node '" + id + "'");
    }
    for (const auto &[id, p] : j.at("projectors").items()) {
        r.projectors[id] = matrix_from_json(p, "node '" + id + "'");
    }
    return r;
}

SosChainReport sos_chain_check(const InflationSpec &spec, const InflationRealization &realization, double tol) {
    const InflationHeisenberg h(spec, realization);
    const ComplexVector &phi = h.state();
    const ComplexVector a = h.apply("A", 0, phi);
    const ComplexVector b = h.apply("B", 0, phi);
    const ComplexVector c = h.apply("C", 0, phi);
    const ComplexVector d = h.apply("D", 0, phi);
    SosChainReport r;
    r.r_ab = (a - b).squaredNorm();
    r.r_bc = (b - c).squaredNorm();
    r.r_cd = (c - d).squaredNorm();
    r.r_ad = (a - d).squaredNorm();
    const double t = std::sqrt(r.r_ab) + std::sqrt(r.r_bc) + std::sqrt(r.r_cd);
    r.triangle_bound = t * t;
    r.p_a = phi.dot(a).real();
    r.p_d = phi.dot(d).real();
    r.p_ad = a.dot(d).real();
    r.independence_gap = std::abs(r.p_ad - r.p_a * r.p_d);
    r.pairs_within_tol = r.r_ab <= tol && r.r_bc <= tol && r.r_cd <= tol;
    return r;
}

}  // namespace coordcert
