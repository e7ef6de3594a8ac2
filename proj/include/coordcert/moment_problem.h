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

#ifndef COORDCERT_MOMENT_PROBLEM_H
#define COORDCERT_MOMENT_PROBLEM_H

#include <complex>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "coordcert/inflation.h"
#include "coordcert/json_io.h"
#include "coordcert/sdp.h"
#include "coordcert/words.h"

namespace coordcert {

/// Moment relaxation over the outcome-0 projectors of A..D. The Hermitian
/// moment matrix M (m x m) is stored as the real symmetric doubling
/// X = [[Re M, -Im M], [Im M, Re M]] of size 2m.
struct MomentProblem {
    int level = 0;
    double alpha = 0;
    double delta = 0;
    Compatibility compatibility;
    std::vector<Word> index;
    /// Canonical representative of every distinct nonzero moment.
    std::vector<Word> moments;
    std::vector<bool> moment_real;
    /// Upper-triangle entry of M that carries each moment unconjugated.
    std::vector<std::pair<int, int>> moment_entry;
    SdpProblem sdp;

    int size() const {
        return static_cast<int>(index.size());
    }
    /// Moment id of an arbitrary word and whether it equals the conjugate
    /// of the stored representative; nullopt for the zero operator.
    std::optional<std::pair<int, bool>> lookup(const Word &word) const;
    /// Terms giving Re <word> as a linear functional of X.
    std::vector<SdpTerm> real_part(const Word &word) const;

    std::map<Word, int> moment_ids;
};

/// Builds the relaxation with <A> = alpha, <D> = delta fixed and the A-only
/// times D-only moments factorized. The objective is
/// <AB> + <BC> + <CD> - alpha delta / 2.
MomentProblem build_moment_problem(const InflationSpec &spec, int level, double alpha, double delta);

/// Adds <XY> = value for parties given as letters 'A'..'D'.
void add_correlator_constraint(MomentProblem &problem, char x, char y, double value);

/// The alpha = delta = 0 problem with <AB> = <BC> = <CD> = 1 added.
MomentProblem perfect_coordination_problem(const InflationSpec &spec, int level);

/// Doubled moment matrix from a moment oracle <word>.
RealMatrix moment_matrix(const MomentProblem &problem, const std::function<Complex(const Word &)> &moment);

/// Moments of an explicit inflation realization on the product state.
RealMatrix moment_matrix(const MomentProblem &problem, const InflationHeisenberg &heisenberg);

Json export_moment_problem(const MomentProblem &problem);

}  // namespace coordcert

#endif
