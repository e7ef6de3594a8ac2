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

#ifndef COORDCERT_TESTS_TEST_SUPPORT_H
#define COORDCERT_TESTS_TEST_SUPPORT_H

#include <string>
#include <vector>

#include "coordcert/behavior.h"
#include "coordcert/circuit.h"
#include "coordcert/linalg.h"
#include "coordcert/realization.h"

namespace coordcert::test_support {

/// Brute-force reference: evolves the full density matrix with explicitly
/// embedded operators. Only for small global dimensions.
struct Oracle {
    Oracle(const CausalCircuit &circuit, const QuantumRealization &realization);

    /// Global density matrix of the sources in (source id, wire id) order.
    ComplexMatrix initial_density;
    /// Full circuit unitary from the global source space onto the final wire
    /// space.
    ComplexMatrix total_unitary;
    /// Wire order of the final space.
    std::vector<std::string> final_wires;
    std::vector<int> final_dims;

    /// Measurement projector of `party` embedded in the final space.
    ComplexMatrix embedded_projector(const std::string &party, const ComplexMatrix &local) const;

    Behavior behavior() const;
    std::vector<ComplexMatrix> heisenberg(const std::string &party) const;

    const CausalCircuit &circuit;
    const QuantumRealization &realization;
};

/// Permutation matrix sending the factor order `dims` to the order given by
/// `order` (new k-th factor = old factor order[k]).
RealMatrix permutation_matrix(const std::vector<int> &dims, const std::vector<int> &order);

/// Random valid DAG with `parties` measurement nodes named from "A".
CausalCircuit random_dag(Rng &rng, int parties, int max_sources, int max_transformations);

}  // namespace coordcert::test_support

#endif
