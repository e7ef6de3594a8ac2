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

#include "coordcert/simulate.h"

#include <algorithm>
#include <cmath>
#include <deque>

#include "coordcert/errors.h"

namespace coordcert {

namespace {

/// sqrt(lambda_k) e_k for every eigenpair of a mixed state with lambda_k above
/// 1e-14; a pure state is its own single component.
std::vector<ComplexVector> weighted_components(const SourceState &s) {
    if (s.pure) {
        return {*s.pure};
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(*s.density);
    std::vector<ComplexVector> out;
    for (Eigen::Index k = es.eigenvalues().size(); k-- > 0;) {
        const double lambda = es.eigenvalues()(k);
        if (lambda > 1e-14) {
            out.push_back(std::sqrt(lambda) * es.eigenvectors().col(k));
        }
    }
    return out;
}

}  // namespace

std::vector<Mode> global_modes(const CausalCircuit &circuit, const QuantumRealization &realization) {
    std::vector<Mode> modes;
    for (const auto &source : circuit.ids_of_kind(NodeKind::source)) {
        for (const Wire *w : circuit.out_wires(source)) {
            modes.push_back({w->id, wire_dim(realization, *w)});
        }
    }
    return modes;
}

std::string ancilla_mode(const std::string &source) {
    return "~" + source;
}

StateTensor initial_state(const CausalCircuit &circuit, const QuantumRealization &realization) {
    StateTensor state;
    std::vector<Mode> ancillas;
    ComplexVector ancilla_amps = ComplexVector::Ones(1);
    for (const auto &source : circuit.ids_of_kind(NodeKind::source)) {
        std::vector<Mode> modes;
        for (const Wire *w : circuit.out_wires(source)) {
            modes.push_back({w->id, wire_dim(realization, *w)});
        }
        const SourceState &s = realization.sources.at(source);
        if (s.pure) {
            state.append(modes, *s.pure);
            continue;
        }
        const auto comps = weighted_components(s);
        const Eigen::Index d = s.density->rows();
        const Eigen::Index r = static_cast<Eigen::Index>(comps.size());
        // Joint amplitudes with the system index first and the ancilla second.
        ComplexVector joint(d * r);
        for (Eigen::Index j = 0; j < r; ++j) {
            for (Eigen::Index i = 0; i < d; ++i) {
                joint(i * r + j) = comps[j](i);
            }
        }
        modes.push_back({ancilla_mode(source), static_cast<int>(r)});
        state.append(modes, joint);
        ancillas.push_back(modes.back());
    }
    if (!ancillas.empty()) {
        std::vector<std::string> order;
        for (const auto &m : state.modes()) {
            if (m.wire.front() != '~') {
                order.push_back(m.wire);
            }
        }
        for (const auto &a : ancillas) {
            order.push_back(a.wire);
        }
        state.reorder(order);
    }
    return state;
}

Propagator build_propagator(const CausalCircuit &circuit, const QuantumRealization &realization,
                            const std::set<std::string> *only) {
    std::vector<TransformStep> steps;
    for (const auto &id : circuit.topological_order()) {
        const Node &node = circuit.node(id);
        if (node.kind != NodeKind::transformation || (only && !only->contains(id))) {
            continue;
        }
        TransformStep step;
        step.node = id;
        for (const Wire *w : circuit.in_wires(id)) {
            step.inputs.push_back(w->id);
            step.input_modes.push_back({w->id, wire_dim(realization, *w)});
        }
        for (const Wire *w : circuit.out_wires(id)) {
            step.outputs.push_back({w->id, wire_dim(realization, *w)});
        }
        step.unitary = realization.unitaries.at(id);
        steps.push_back(std::move(step));
    }
    return Propagator(std::move(steps));
}

std::set<std::string> ancestors(const CausalCircuit &circuit, const std::string &node) {
    circuit.node(node);
    std::set<std::string> seen;
    std::deque<std::string> queue{node};
    while (!queue.empty()) {
        const std::string cur = queue.front();
        queue.pop_front();
        for (const Wire *w : circuit.in_wires(cur)) {
            if (seen.insert(w->from).second) {
                queue.push_back(w->from);
            }
        }
    }
    return seen;
}

namespace {

std::vector<std::string> input_wires(const CausalCircuit &circuit, const std::string &node) {
    std::vector<std::string> out;
    for (const Wire *w : circuit.in_wires(node)) {
        out.push_back(w->id);
    }
    return out;
}

void apply_family_member(StateTensor &state, const std::vector<std::string> &wires, const ComplexMatrix &p) {
    if (wires.empty()) {
        // A measurement without inputs: the projector is a 1x1 scalar.
        state.amplitudes() *= p(0, 0);
        return;
    }
    state.apply(wires, p);
}

/// Branches `state` on every (setting, outcome) combination of `parties`,
/// first party most significant, settings before outcomes within a party.
std::vector<ComplexVector> branch(const StateTensor &state, const std::vector<std::string> &parties,
                                  const std::vector<std::vector<std::string>> &wires,
                                  const std::vector<const std::vector<std::vector<ComplexMatrix>> *> &families) {
    std::vector<StateTensor> current{state};
    for (size_t k = 0; k < parties.size(); ++k) {
        std::vector<StateTensor> next;
        for (const auto &s : current) {
            for (const auto &family : *families[k]) {
                for (const auto &p : family) {
                    StateTensor copy = s;
                    apply_family_member(copy, wires[k], p);
                    next.push_back(std::move(copy));
                }
            }
        }
        current = std::move(next);
    }
    std::vector<ComplexVector> out;
    out.reserve(current.size());
    for (auto &s : current) {
        out.push_back(std::move(s.amplitudes()));
    }
    return out;
}

struct Split {
    std::vector<std::string> parties;
    std::vector<std::vector<std::string>> wires;
    std::vector<const std::vector<std::vector<ComplexMatrix>> *> families;
    std::vector<int> setting_arities;
    std::vector<int> outcome_arities;
};

}  // namespace

SettingsBehavior simulate_settings(const CausalCircuit &circuit, const QuantumRealization &realization,
                                   const SettingsMap &settings) {
    const auto parties = circuit.measurement_ids();
    for (const auto &[party, _] : settings) {
        const Node *n = circuit.find_node(party);
        if (!n || n->kind != NodeKind::measurement) {
            throw ValidationError("settings given for unknown party '" + party + "'");
        }
    }
    for (const auto &party : parties) {
        auto it = settings.find(party);
        if (it == settings.end() || it->second.empty()) {
            throw ValidationError("missing setting for party '" + party + "'");
        }
        for (const auto &family : it->second) {
            for (const auto &p : family) {
                const int d = input_dim(circuit, realization, party);
                if (p.rows() != d || p.cols() != d) {
                    throw ValidationError("node '" + party + "': projector has the wrong dimension");
                }
            }
            if (static_cast<int>(family.size()) != circuit.node(party).outcomes || !is_projector_family(family)) {
                throw ValidationError("node '" + party + "': invalid projector family");
            }
        }
    }
    QuantumRealization base = realization;
    for (const auto &party : parties) {
        base.measurements[party] = settings.at(party).front();
    }
    validate_realization(circuit, base);

    const Propagator propagator = build_propagator(circuit, base);

    const size_t half = parties.size() / 2;
    Split left, right;
    for (size_t k = 0; k < parties.size(); ++k) {
        Split &s = k < half ? left : right;
        s.parties.push_back(parties[k]);
        s.wires.push_back(input_wires(circuit, parties[k]));
        s.families.push_back(&settings.at(parties[k]));
        s.setting_arities.push_back(static_cast<int>(settings.at(parties[k]).size()));
        s.outcome_arities.push_back(circuit.node(parties[k]).outcomes);
    }

    // Mixed sources are expanded into their eigencomponents; the behavior is
    // the sum over every product of components. The left/right overlaps are
    // accumulated per component so only one pure state is alive at a time.
    const auto sources = circuit.ids_of_kind(NodeKind::source);
    std::vector<std::vector<ComplexVector>> components;
    std::vector<std::vector<Mode>> source_modes;
    for (const auto &id : sources) {
        components.push_back(weighted_components(base.sources.at(id)));
        std::vector<Mode> modes;
        for (const Wire *w : circuit.out_wires(id)) {
            modes.push_back({w->id, wire_dim(base, *w)});
        }
        source_modes.push_back(std::move(modes));
    }
    std::vector<std::vector<Complex>> overlaps;
    std::vector<size_t> pick(sources.size(), 0);
    while (true) {
        StateTensor state;
        for (size_t k = 0; k < sources.size(); ++k) {
            state.append(source_modes[k], components[k][pick[k]]);
        }
        propagator.forward(state);
        const auto lv = branch(state, left.parties, left.wires, left.families);
        const auto rv = branch(state, right.parties, right.wires, right.families);
        if (overlaps.empty()) {
            overlaps.assign(lv.size(), std::vector<Complex>(rv.size(), 0.0));
        }
        for (size_t i = 0; i < lv.size(); ++i) {
            for (size_t j = 0; j < rv.size(); ++j) {
                overlaps[i][j] += lv[i].dot(rv[j]);
            }
        }
        size_t k = 0;
        for (; k < pick.size(); ++k) {
            if (++pick[k] < components[k].size()) {
                break;
            }
            pick[k] = 0;
        }
        if (k == pick.size()) {
            break;
        }
    }

    std::vector<int> setting_arities = left.setting_arities;
    setting_arities.insert(setting_arities.end(), right.setting_arities.begin(), right.setting_arities.end());
    std::vector<int> outcome_arities = left.outcome_arities;
    outcome_arities.insert(outcome_arities.end(), right.outcome_arities.begin(), right.outcome_arities.end());

    size_t n_settings = 1;
    for (int a : setting_arities) {
        n_settings *= static_cast<size_t>(a);
    }
    size_t n_outcomes = 1;
    for (int a : outcome_arities) {
        n_outcomes *= static_cast<size_t>(a);
    }

    std::vector<Behavior> table;
    table.reserve(n_settings);
    const size_t n = parties.size();
    std::vector<int> s(n), o(n);
    for (size_t si = 0; si < n_settings; ++si) {
        size_t rem = si;
        for (size_t k = n; k-- > 0;) {
            s[k] = static_cast<int>(rem % static_cast<size_t>(setting_arities[k]));
            rem /= static_cast<size_t>(setting_arities[k]);
        }
        std::vector<double> probs(n_outcomes);
        for (size_t oi = 0; oi < n_outcomes; ++oi) {
            rem = oi;
            for (size_t k = n; k-- > 0;) {
                o[k] = static_cast<int>(rem % static_cast<size_t>(outcome_arities[k]));
                rem /= static_cast<size_t>(outcome_arities[k]);
            }
            size_t li = 0, ri = 0;
            for (size_t k = 0; k < n; ++k) {
                size_t &idx = k < half ? li : ri;
                idx = (idx * static_cast<size_t>(setting_arities[k]) + static_cast<size_t>(s[k])) *
                          static_cast<size_t>(outcome_arities[k]) +
                      static_cast<size_t>(o[k]);
            }
            probs[oi] = overlaps[li][ri].real();
        }
        table.emplace_back(parties, outcome_arities, std::move(probs));
    }
    return SettingsBehavior(parties, setting_arities, std::move(table));
}

Behavior simulate(const CausalCircuit &circuit, const QuantumRealization &realization) {
    validate_realization(circuit, realization);
    SettingsMap settings;
    for (const auto &party : circuit.measurement_ids()) {
        settings[party] = {realization.measurements.at(party)};
    }
    return simulate_settings(circuit, realization, settings).table().front();
}

HeisenbergPicture::HeisenbergPicture(const CausalCircuit &circuit, const QuantumRealization &realization)
    : modes_(global_modes(circuit, realization)) {
    validate_realization(circuit, realization);
    for (const auto &party : circuit.measurement_ids()) {
        const auto anc = ancestors(circuit, party);
        PartyData data;
        data.propagator = build_propagator(circuit, realization, &anc);
        data.inputs = input_wires(circuit, party);
        data.family = realization.measurements.at(party);
        parties_.emplace(party, std::move(data));
    }
}

size_t HeisenbergPicture::dim() const {
    size_t d = 1;
    for (const auto &m : modes_) {
        d *= static_cast<size_t>(m.dim);
    }
    return d;
}

void HeisenbergPicture::apply(const std::string &party, int outcome, StateTensor &state) const {
    auto it = parties_.find(party);
    if (it == parties_.end()) {
        throw ValidationError("unknown party '" + party + "'");
    }
    const PartyData &data = it->second;
    if (outcome < 0 || outcome >= static_cast<int>(data.family.size())) {
        throw ValidationError("outcome out of range for party '" + party + "'");
    }
    std::vector<std::string> order;
    for (const auto &m : state.modes()) {
        order.push_back(m.wire);
    }
    data.propagator.forward(state);
    apply_family_member(state, data.inputs, data.family[outcome]);
    data.propagator.backward(state);
    state.reorder(order);
}

ComplexVector HeisenbergPicture::apply(const std::string &party, int outcome, const ComplexVector &global) const {
    StateTensor state(modes_, global);
    apply(party, outcome, state);
    return std::move(state.amplitudes());
}

std::vector<ComplexMatrix> HeisenbergPicture::projectors(const std::string &party, size_t max_dim) const {
    const size_t d = dim();
    if (d > max_dim) {
        throw ValidationError("global dimension " + std::to_string(d) + " is too large for explicit projectors");
    }
    auto it = parties_.find(party);
    if (it == parties_.end()) {
        throw ValidationError("unknown party '" + party + "'");
    }
    const Eigen::Index n = static_cast<Eigen::Index>(d);
    std::vector<ComplexMatrix> out;
    for (int o = 0; o < static_cast<int>(it->second.family.size()); ++o) {
        ComplexMatrix m(n, n);
        for (Eigen::Index j = 0; j < n; ++j) {
            m.col(j) = apply(party, o, ComplexVector(ComplexVector::Unit(n, j)));
        }
        out.push_back(std::move(m));
    }
    return out;
}

std::vector<ComplexMatrix> heisenberg_projectors(const CausalCircuit &circuit, const QuantumRealization &realization,
                                                 const std::string &party) {
    return HeisenbergPicture(circuit, realization).projectors(party);
}

ComplexVector ghz4() {
    ComplexVector v = ComplexVector::Zero(16);
    v(0) = v(15) = 1.0 / std::sqrt(2.0);
    return v;
}

ComplexMatrix noisy_ghz4(double v) {
    if (!(v >= 0.0 && v <= 1.0)) {
        throw ValidationError("visibility must lie in [0, 1]");
    }
    const ComplexVector g = ghz4();
    return v * g * g.adjoint() + (1.0 - v) / 16.0 * ComplexMatrix::Identity(16, 16);
}

}  // namespace coordcert
