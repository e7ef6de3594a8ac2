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

#ifndef COORDCERT_BOUND_H
#define COORDCERT_BOUND_H

#include <vector>

#include "coordcert/moment_problem.h"
#include "coordcert/sdp.h"

namespace coordcert {

struct GridOptions {
    /// Points per axis of the coarse grid over [-1, 1].
    int points = 21;
    bool refine = true;
    double refine_step = 0.01;
    /// Half-width of the refinement window around the coarse incumbent.
    double refine_radius = 0.05;
    int jobs = 1;
    SdpOptions sdp;
};

struct BoundCell {
    double alpha = 0;
    double delta = 0;
    SdpStatus status = SdpStatus::max_iterations;
    double value = 0;
    bool ok = false;
    bool refined = false;
};

struct BoundReport {
    int level = 0;
    double bound = 0;
    double alpha = 0;
    double delta = 0;
    std::vector<BoundCell> cells;
    int failures = 0;
};

/// Maximum over the (alpha, delta) grid of the moment relaxation value.
BoundReport coordination_bound(int level, const GridOptions &options = {});

struct WitnessReport {
    RealMatrix moment_matrix;
    FeasibilityReport feasibility;
};

/// Explicit feasible point at alpha = delta = 0 from a two-qubit Bell pair
/// with A, C on the first qubit and B, D on the second, measured along
/// XZ-plane angles 0, pi/6, pi/3, pi/2.
WitnessReport coordination_witness(int level);

std::string bound_csv(const BoundReport &report);

}  // namespace coordcert

#endif
