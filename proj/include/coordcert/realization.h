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

#ifndef COORDCERT_REALIZATION_H
#define COORDCERT_REALIZATION_H

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "coordcert/circuit.h"
#include "coordcert/linalg.h"

namespace coordcert {

/// State prepared by a source: either a state vector or a density matrix on
/// the tensor product of the source's outgoing wires (ascending wire id).
struct SourceState {
    std::optional<ComplexVector> pure;
    std::optional<ComplexMatrix> density;

    static SourceState from_vector(ComplexVector v) {
        SourceState s;
        s.pure = std::move(v);
        return s;
    }
    static SourceState from_density(ComplexMatrix rho) {
        SourceState s;
        s.density = std::move(rho);
        return s;
    }

    int dim() const;
    ComplexMatrix density_matrix() const;
};

/// Concrete quantum model for every node of a circuit.
///
/// Local tensor order at every node is ascending wire id. A transformation's
/// unitary maps the joint space of its incoming wires onto the joint space
/// of its outgoing wires, so both must have the same total dimension.
struct QuantumRealization {
    /// Optional per-wire dimension overrides; wires not listed use the
    /// circuit's annotation.
    std::map<std::string, int> wire_dims;
    std::map<std::string, SourceState> sources;
    std::map<std::string, ComplexMatrix> unitaries;
    std::map<std::string, std::vector<ComplexMatrix>> measurements;
};

int wire_dim(const QuantumRealization &realization, const Wire &wire);
int input_dim(const CausalCircuit &circuit, const QuantumRealization &realization, const std::string &node);
int output_dim(const CausalCircuit &circuit, const QuantumRealization &realization, const std::string &node);

/// Checks every realization invariant against the circuit and throws
/// ValidationError naming the first offending node.
void validate_realization(const CausalCircuit &circuit, const QuantumRealization &realization);

/// All sources in |0...0>, identity unitaries, and each measurement reading
/// the first of its incoming wires in the computational basis.
QuantumRealization trivial_realization(const CausalCircuit &circuit);

/// Random pure sources, Haar unitaries and random binary measurements of
/// random rank, using the wire dimensions already annotated on the circuit.
/// Haar-random pure states (a quarter of the sources get a random mixed
/// state of rank at most 2 instead), Haar-random unitaries, and measurements that are random
/// rotations of a random partition of the computational basis.
QuantumRealization random_realization(const CausalCircuit &circuit, Rng &rng);

/// Copy of `circuit` with random wire dimensions in [min_dim, max_dim]:
/// source wires are drawn freely, and each transformation picks an output
/// factorization whose product matches its input dimension (retrying the
/// source draw if none exists).
/// Fresh random dimensions for every wire. Source outputs are drawn from
/// [min_dim, max_dim]; transformation outputs split the prime factors of the
/// input dimension, so a wire may end up with dimension 1. When `max_total`
/// is nonzero, draws are repeated until the product of all source-output
/// dimensions is at most `max_total`.
CausalCircuit with_random_dims(const CausalCircuit &circuit, int min_dim, int max_dim, Rng &rng,
                               size_t max_total = 0);

/// Product of the dimensions of all source output wires.
size_t global_dim(const CausalCircuit &circuit, const QuantumRealization &realization);

}  // namespace coordcert

#endif
