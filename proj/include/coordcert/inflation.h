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

#ifndef COORDCERT_INFLATION_H
#define COORDCERT_INFLATION_H

#include <array>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "coordcert/circuit.h"
#include "coordcert/json_io.h"
#include "coordcert/propagator.h"
#include "coordcert/realization.h"
#include "coordcert/words.h"

namespace coordcert {

/// A source space fed to two copies of one transformation.
struct BlackDot {
    std::string source;
    /// The two outgoing link wire ids.
    std::array<std::string, 2> links;
};

struct InflationSpec {
    /// Inflated graph with both links of every dot present.
    CausalCircuit graph;
    /// Copy node id onto the fig1 node it copies.
    std::map<std::string, std::string> original;
    std::vector<BlackDot> dots;
    /// Measurement pairs whose Heisenberg operators need not commute.
    std::vector<std::pair<std::string, std::string>> incompatible;

    /// Fig1 wire id copied by an inflated wire.
    std::string original_wire(const std::string &wire_id) const;
    Compatibility compatibility() const;
};

InflationSpec fig2_inflation();

/// Checks the structural invariants; throws ValidationError naming the
/// first broken one.
void validate_inflation(const InflationSpec &spec);

/// Source nodes with a directed path to `node` in the inflated graph.
std::set<std::string> source_ancestors(const InflationSpec &spec, const std::string &node);

/// Measurement pairs downstream of the two links of some dot.
std::vector<std::pair<std::string, std::string>> derived_incompatible_pairs(const InflationSpec &spec);

struct Subcircuit {
    /// Link kept for each dot, in dot order.
    std::vector<std::string> links;
    CausalCircuit circuit;
    /// Party pairs whose ancestral subnetwork is a faithful copy of fig1's.
    std::vector<std::pair<std::string, std::string>> reproduced_pairs;
};

std::vector<Subcircuit> valid_subcircuits(const InflationSpec &spec);

/// Explicit realization of the inflation. Every copy carries its own data;
/// tensor factors follow the fig1 ordering of the copied node.
struct InflationRealization {
    /// Dimension of every fig1 wire; missing wires default to 2.
    std::map<std::string, int> wire_dims;
    /// Pure state per source copy over the copied source's fig1 outputs.
    std::map<std::string, ComplexVector> sources;
    /// Unitary per transformation copy, fig1 inputs onto fig1 outputs.
    std::map<std::string, ComplexMatrix> unitaries;
    /// Outcome-0 projector per party over its fig1 inputs.
    std::map<std::string, ComplexMatrix> projectors;
};

/// Copies a fig1 realization with pure sources and binary measurements into
/// every inflated node.
InflationRealization inflate(const InflationSpec &spec, const CausalCircuit &fig1,
                             const QuantumRealization &realization);

/// Haar-random states and unitaries per copy with random-rank projectors.
InflationRealization random_inflation_realization(const InflationSpec &spec, Rng &rng);

/// Deterministic classical realization: random basis states, random
/// permutation unitaries and computational-basis projectors.
InflationRealization random_classical_inflation_realization(const InflationSpec &spec, Rng &rng);

Json to_json(const InflationRealization &realization);
InflationRealization inflation_realization_from_json(const Json &j);

/// Heisenberg-picture outcome projectors acting on the product of all
/// inflated source states.
class InflationHeisenberg {
   public:
    InflationHeisenberg(const InflationSpec &spec, const InflationRealization &realization);

    const std::vector<Mode> &modes() const {
        return modes_;
    }
    const ComplexVector &state() const {
        return state_;
    }
    /// Applies the Heisenberg projector of (party, outcome) with outcome in
    /// {0, 1}.
    ComplexVector apply(const std::string &party, int outcome, const ComplexVector &v) const;
    /// Applies the operator product of a word, rightmost letter first.
    ComplexVector apply(const Word &word, const ComplexVector &v) const;

   private:
    struct PartyData {
        Propagator propagator;
        std::vector<std::string> inputs;
        ComplexMatrix projector;
    };
    std::vector<Mode> modes_;
    ComplexVector state_;
    std::map<std::string, PartyData> parties_;
    std::vector<std::string> party_names_;
};

struct SosChainReport {
    double r_ab = 0, r_bc = 0, r_cd = 0;
    double r_ad = 0;
    /// (sqrt r_ab + sqrt r_bc + sqrt r_cd)^2.
    double triangle_bound = 0;
    double p_a = 0, p_d = 0;
    double p_ad = 0;
    double independence_gap = 0;
    bool pairs_within_tol = false;
};

SosChainReport sos_chain_check(const InflationSpec &spec, const InflationRealization &realization, double tol = 1e-10);

}  // namespace coordcert

#endif
