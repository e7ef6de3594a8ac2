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

#ifndef COORDCERT_SIMULATE_H
#define COORDCERT_SIMULATE_H

#include <map>
#include <set>
#include <string>
#include <vector>

#include "coordcert/behavior.h"
#include "coordcert/circuit.h"
#include "coordcert/propagator.h"
#include "coordcert/realization.h"

namespace coordcert {

/// Global tensor order: source output wires sorted by (source id, wire id).
/// The first entry is the most significant factor.
std::vector<Mode> global_modes(const CausalCircuit &circuit, const QuantumRealization &realization);

/// Name of the purifying ancilla mode of a mixed source.
std::string ancilla_mode(const std::string &source);

/// Product of all source states in global order. Mixed sources are purified;
/// their ancilla modes follow the global modes, ordered by source id.
StateTensor initial_state(const CausalCircuit &circuit, const QuantumRealization &realization);

/// Transformation steps in topological order. When `only` is given, steps
/// for other transformations are skipped.
Propagator build_propagator(const CausalCircuit &circuit, const QuantumRealization &realization,
                            const std::set<std::string> *only = nullptr);

/// All nodes with a directed path into `node` (not including it).
std::set<std::string> ancestors(const CausalCircuit &circuit, const std::string &node);

/// P(o_1..o_n) = <psi| U^dagger (Pi_1 x .. x Pi_n) U |psi> over the
/// measurement nodes in id order.
Behavior simulate(const CausalCircuit &circuit, const QuantumRealization &realization);

/// Per party, one projector family for each setting.
using SettingsMap = std::map<std::string, std::vector<std::vector<ComplexMatrix>>>;

/// Shares states and unitaries of `realization`; its measurement entries are
/// ignored in favour of `settings`.
SettingsBehavior simulate_settings(const CausalCircuit &circuit, const QuantumRealization &realization,
                                   const SettingsMap &settings);

/// Heisenberg-picture projectors U_X^dagger Pi_X U_X on the global source
/// space, where U_X collects the transformations upstream of party X.
class HeisenbergPicture {
   public:
    HeisenbergPicture(const CausalCircuit &circuit, const QuantumRealization &realization);

    const std::vector<Mode> &modes() const {
        return modes_;
    }
    size_t dim() const;

    /// Applies the outcome-`outcome` projector of `party` in place. `state`
    /// must hold every global mode; extra modes are left alone and the mode
    /// order is restored afterwards.
    void apply(const std::string &party, int outcome, StateTensor &state) const;

    /// Same on a bare vector in global order.
    ComplexVector apply(const std::string &party, int outcome, const ComplexVector &global) const;

    /// Explicit matrices; refuses global dimensions above `max_dim`.
    std::vector<ComplexMatrix> projectors(const std::string &party, size_t max_dim = 1024) const;

   private:
    struct PartyData {
        Propagator propagator;
        std::vector<std::string> inputs;
        std::vector<ComplexMatrix> family;
    };
    std::vector<Mode> modes_;
    std::map<std::string, PartyData> parties_;
};

std::vector<ComplexMatrix> heisenberg_projectors(const CausalCircuit &circuit, const QuantumRealization &realization,
                                                 const std::string &party);

/// (|0000> + |1111>)/sqrt(2).
ComplexVector ghz4();

/// v |GHZ><GHZ| + (1 - v) I / 16.
ComplexMatrix noisy_ghz4(double v);

}  // namespace coordcert

#endif
