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

#include "coordcert/realization.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "coordcert/errors.h"

namespace coordcert {

int SourceState::dim() const {
    if (pure) {
        return static_cast<int>(pure->size());
    }
    if (density) {
        return static_cast<int>(density->rows());
    }
    return 0;
}

ComplexMatrix SourceState::density_matrix() const {
    if (pure) {
        return (*pure) * pure->adjoint();
    }
    if (density) {
        return *density;
    }
    throw ValidationError("empty source state");
}

int wire_dim(const QuantumRealization &realization, const Wire &wire) {
    auto it = realization.wire_dims.find(wire.id);
    return it == realization.wire_dims.end() ? wire.dim : it->second;
}

int input_dim(const CausalCircuit &circuit, const QuantumRealization &realization, const std::string &node) {
    int d = 1;
    for (const Wire *w : circuit.in_wires(node)) {
        d *= wire_dim(realization, *w);
    }
    return d;
}

int output_dim(const CausalCircuit &circuit, const QuantumRealization &realization, const std::string &node) {
    int d = 1;
    for (const Wire *w : circuit.out_wires(node)) {
        d *= wire_dim(realization, *w);
    }
    return d;
}

size_t global_dim(const CausalCircuit &circuit, const QuantumRealization &realization) {
    size_t d = 1;
    for (const auto &id : circuit.ids_of_kind(NodeKind::source)) {
        d *= static_cast<size_t>(output_dim(circuit, realization, id));
    }
    return d;
}

namespace {

[[noreturn]] void fail(const std::string &node, const std::string &what) {
    throw ValidationError("node '" + node + "': " + what);
}

std::string dims_text(Eigen::Index r, Eigen::Index c) {
    std::ostringstream os;
    os << r << "x" << c;
    return os.str();
}

}  // namespace

void validate_realization(const CausalCircuit &circuit, const QuantumRealization &realization) {
    for (const auto &[wire, d] : realization.wire_dims) {
        if (!circuit.find_wire(wire)) {
            throw ValidationError("wire '" + wire + "': not in circuit");
        }
        if (d < 1) {
            throw ValidationError("wire '" + wire + "': dimension must be positive");
        }
    }
    for (const auto &[id, _] : realization.sources) {
        const Node *n = circuit.find_node(id);
        if (!n || n->kind != NodeKind::source) {
            fail(id, "state given for a node that is not a source");
        }
    }
    for (const auto &[id, _] : realization.unitaries) {
        const Node *n = circuit.find_node(id);
        if (!n || n->kind != NodeKind::transformation) {
            fail(id, "unitary given for a node that is not a transformation");
        }
    }
    for (const auto &[id, _] : realization.measurements) {
        const Node *n = circuit.find_node(id);
        if (!n || n->kind != NodeKind::measurement) {
            fail(id, "projectors given for a node that is not a measurement");
        }
    }
    for (const Node &node : circuit.nodes()) {
        const int din = input_dim(circuit, realization, node.id);
        const int dout = output_dim(circuit, realization, node.id);
        switch (node.kind) {
            case NodeKind::source: {
                auto it = realization.sources.find(node.id);
                if (it == realization.sources.end()) {
                    fail(node.id, "missing source state");
                }
                const SourceState &s = it->second;
                if (s.pure.has_value() == s.density.has_value()) {
                    fail(node.id, "source needs exactly one of a state vector or a density matrix");
                }
                if (s.dim() != dout) {
                    fail(node.id, "state dimension " + std::to_string(s.dim()) + " does not match output dimension " +
                                      std::to_string(dout));
                }
                if (s.pure) {
                    if (!s.pure->allFinite() || std::abs(s.pure->norm() - 1.0) > kConstructionTol) {
                        fail(node.id, "state vector is not normalized");
                    }
                } else {
                    if (s.density->rows() != s.density->cols()) {
                        fail(node.id, "density matrix is not square");
                    }
                    if (!s.density->allFinite() || !is_density(*s.density)) {
                        fail(node.id, "density matrix is not a unit-trace positive Hermitian matrix");
                    }
                }
                break;
            }
            case NodeKind::transformation: {
                auto it = realization.unitaries.find(node.id);
                if (it == realization.unitaries.end()) {
                    fail(node.id, "missing unitary");
                }
                const ComplexMatrix &u = it->second;
                if (din != dout) {
                    fail(node.id, "input dimension " + std::to_string(din) + " differs from output dimension " +
                                      std::to_string(dout));
                }
                if (u.rows() != dout || u.cols() != din) {
                    fail(node.id, "unitary is " + dims_text(u.rows(), u.cols()) + ", expected " + dims_text(dout, din));
                }
                if (!u.allFinite() || !is_unitary(u)) {
                    fail(node.id, "matrix is not unitary");
                }
                break;
            }
            case NodeKind::measurement: {
                auto it = realization.measurements.find(node.id);
                if (it == realization.measurements.end()) {
                    fail(node.id, "missing projector family");
                }
                const auto &family = it->second;
                if (static_cast<int>(family.size()) != node.outcomes) {
                    fail(node.id, "expected " + std::to_string(node.outcomes) + " projectors, got " +
                                      std::to_string(family.size()));
                }
                for (const auto &p : family) {
                    if (p.rows() != din || p.cols() != din) {
                        fail(node.id, "projector is " + dims_text(p.rows(), p.cols()) + ", expected " +
                                          dims_text(din, din));
                    }
                    if (!p.allFinite()) {
                        fail(node.id, "projector has non-finite entries");
                    }
                }
                if (!is_projector_family(family)) {
                    fail(node.id, "not an orthogonal projector family summing to the identity");
                }
                break;
            }
        }
    }
}

namespace {

/// Measures the first input wire in the computational basis; basis states
/// beyond the outcome count fold into the last outcome.
std::vector<ComplexMatrix> first_wire_measurement(int first_dim, int rest_dim, int outcomes) {
    std::vector<ComplexMatrix> family;
    const int d = first_dim * rest_dim;
    for (int o = 0; o < outcomes; ++o) {
        family.push_back(ComplexMatrix::Zero(d, d));
    }
    for (int k = 0; k < first_dim; ++k) {
        const int o = std::min(k, outcomes - 1);
        for (int r = 0; r < rest_dim; ++r) {
            family[o](k * rest_dim + r, k * rest_dim + r) = 1.0;
        }
    }
    return family;
}

}  // namespace

QuantumRealization trivial_realization(const CausalCircuit &circuit) {
    QuantumRealization r;
    for (const Node &node : circuit.nodes()) {
        const int din = input_dim(circuit, r, node.id);
        const int dout = output_dim(circuit, r, node.id);
        switch (node.kind) {
            case NodeKind::source: {
                ComplexVector v = ComplexVector::Zero(dout);
                v(0) = 1.0;
                r.sources[node.id] = SourceState::from_vector(v);
                break;
            }
            case NodeKind::transformation:
                if (din != dout) {
                    fail(node.id, "no identity map between unequal dimensions");
                }
                r.unitaries[node.id] = ComplexMatrix::Identity(din, din);
                break;
            case NodeKind::measurement: {
                auto in = circuit.in_wires(node.id);
                const int first = in.empty() ? 1 : in.front()->dim;
                r.measurements[node.id] = first_wire_measurement(first, din / first, node.outcomes);
                break;
            }
        }
    }
    return r;
}

QuantumRealization random_realization(const CausalCircuit &circuit, Rng &rng) {
    QuantumRealization r;
    std::uniform_int_distribution<int> coin(0, 3);
    for (const Node &node : circuit.nodes()) {
        const int din = input_dim(circuit, r, node.id);
        const int dout = output_dim(circuit, r, node.id);
        switch (node.kind) {
            case NodeKind::source:
                if (coin(rng) == 0) {
                    std::uniform_int_distribution<int> rank_dist(1, std::min(dout, 2));
                    const int rank = rank_dist(rng);
                    ComplexMatrix rho = ComplexMatrix::Zero(dout, dout);
                    std::uniform_real_distribution<double> weight(0.05, 1.0);
                    double total = 0;
                    for (int k = 0; k < rank; ++k) {
                        const double w = weight(rng);
                        const ComplexVector v = random_state(dout, rng);
                        rho += w * v * v.adjoint();
                        total += w;
                    }
                    rho /= total;
                    rho = 0.5 * (rho + rho.adjoint()).eval();
                    r.sources[node.id] = SourceState::from_density(rho);
                } else {
                    r.sources[node.id] = SourceState::from_vector(random_state(dout, rng));
                }
                break;
            case NodeKind::transformation:
                if (din != dout) {
                    fail(node.id, "input and output dimensions differ");
                }
                r.unitaries[node.id] = random_unitary(din, rng);
                break;
            case NodeKind::measurement: {
                const ComplexMatrix u = random_unitary(din, rng);
                std::uniform_int_distribution<int> pick(0, node.outcomes - 1);
                std::vector<ComplexMatrix> family(node.outcomes, ComplexMatrix::Zero(din, din));
                for (int k = 0; k < din; ++k) {
                    family[pick(rng)] += u.col(k) * u.col(k).adjoint();
                }
                for (auto &p : family) {
                    p = 0.5 * (p + p.adjoint()).eval();
                }
                r.measurements[node.id] = std::move(family);
                break;
            }
        }
    }
    return r;
}

namespace {

std::vector<int> prime_factors(int n) {
    std::vector<int> out;
    for (int p = 2; p * p <= n; ++p) {
        while (n % p == 0) {
            out.push_back(p);
            n /= p;
        }
    }
    if (n > 1) {
        out.push_back(n);
    }
    return out;
}

}  // namespace

CausalCircuit with_random_dims(const CausalCircuit &circuit, int min_dim, int max_dim, Rng &rng, size_t max_total) {
    if (min_dim < 1 || max_dim < min_dim) {
        throw ValidationError("bad dimension range");
    }
    const auto order = circuit.topological_order();
    std::uniform_int_distribution<int> dim_dist(min_dim, max_dim);
    for (int attempt = 0; attempt < 10000; ++attempt) {
        std::map<std::string, int> dims;
        bool ok = true;
        size_t total = 1;
        for (const auto &id : order) {
            const Node &node = circuit.node(id);
            auto outs = circuit.out_wires(id);
            if (node.kind == NodeKind::source) {
                for (const Wire *w : outs) {
                    dims[w->id] = dim_dist(rng);
                    total *= static_cast<size_t>(dims[w->id]);
                }
            } else if (node.kind == NodeKind::transformation) {
                int din = 1;
                for (const Wire *w : circuit.in_wires(id)) {
                    din *= dims.at(w->id);
                }
                for (const Wire *w : outs) {
                    dims[w->id] = 1;
                }
                auto primes = prime_factors(din);
                std::shuffle(primes.begin(), primes.end(), rng);
                for (int p : primes) {
                    std::vector<const Wire *> fits;
                    for (const Wire *w : outs) {
                        if (dims[w->id] * p <= max_dim) {
                            fits.push_back(w);
                        }
                    }
                    if (fits.empty()) {
                        ok = false;
                        break;
                    }
                    std::uniform_int_distribution<size_t> pick(0, fits.size() - 1);
                    dims[fits[pick(rng)]->id] *= p;
                }
            }
            if (!ok) {
                break;
            }
        }
        if (!ok || (max_total != 0 && total > max_total)) {
            continue;
        }
        CausalCircuit out;
        for (const Node &n : circuit.nodes()) {
            out.add_node(n.id, n.kind, n.outcomes);
        }
        for (const Wire &w : circuit.wires()) {
            out.add_wire(w.from, w.to, dims.at(w.id), w.id);
        }
        return out;
    }
    throw ValidationError("could not draw wire dimensions compatible with the transformations");
}

}  // namespace coordcert
