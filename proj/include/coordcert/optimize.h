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

#ifndef COORDCERT_OPTIMIZE_H
#define COORDCERT_OPTIMIZE_H

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "coordcert/linalg.h"

namespace coordcert {

using Objective = std::function<double(std::span<const double>)>;
using Gradient = std::function<std::vector<double>(std::span<const double>)>;

struct OptimizerOptions {
    int restarts = 8;
    int iterations = 200;
    /// Central-difference step for numeric gradients.
    double fd_step = 1e-5;
    /// Stop once the gradient norm drops below this.
    double gradient_tol = 1e-10;
    uint64_t seed = 0;
    int jobs = 1;
};

struct OptimizationResult {
    std::vector<double> x;
    double value = 0;
    int restart = 0;
    int iterations = 0;
};

std::vector<double> numeric_gradient(const Objective &f, std::span<const double> x, double step);

/// Local maximization by BFGS with numeric gradients and a backtracking line
/// search. With zero iterations the start point is returned as is.
OptimizationResult maximize_bfgs(const Objective &f, std::vector<double> x0, int iterations, double fd_step,
                                 double gradient_tol = 1e-10);

/// Same with a caller-supplied gradient of f.
OptimizationResult maximize_bfgs(const Objective &f, const Gradient &gradient, std::vector<double> x0,
                                 int iterations, double gradient_tol = 1e-10);

/// Independent BFGS runs from `start(rng, restart)`. Restart k draws from its
/// own generator seeded by (seed, k), so the result does not depend on
/// `jobs`. The best value wins; ties go to the lowest restart index.
/// Without `gradient`, central differences with `options.fd_step` are used.
OptimizationResult multistart_maximize(const Objective &f,
                                       const std::function<std::vector<double>(Rng &, int)> &start,
                                       const OptimizerOptions &options, const Gradient &gradient = {});

/// Generator for restart `index` under `seed`.
Rng restart_rng(uint64_t seed, int index);

}  // namespace coordcert

#endif
