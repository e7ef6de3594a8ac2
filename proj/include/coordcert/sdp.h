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

#ifndef COORDCERT_SDP_H
#define COORDCERT_SDP_H

#include <optional>
#include <string>
#include <vector>

#include "coordcert/json_io.h"
#include "coordcert/linalg.h"

namespace coordcert {

/// Coefficient `coef` on entry (row, col) of a symmetric matrix variable,
/// contributing coef * X(row, col) to a linear functional.
struct SdpTerm {
    int row = 0;
    int col = 0;
    double coef = 0;
};

struct SdpConstraint {
    std::vector<SdpTerm> terms;
    double rhs = 0;
};

/// maximize <C, X> + offset subject to <A_k, X> = b_k and X symmetric PSD.
struct SdpProblem {
    int n = 0;
    std::vector<SdpConstraint> constraints;
    std::vector<SdpTerm> objective;
    double objective_offset = 0;
    /// Optional bound on trace(X) over the matrices of interest; used only
    /// when re-verifying infeasibility certificates. Zero means none.
    double trace_bound = 0;

    /// Throws ValidationError on out-of-range entries or non-finite values.
    void validate() const;
    /// Dense symmetric matrix of a term list.
    RealMatrix matrix_of(const std::vector<SdpTerm> &terms) const;
    double evaluate(const std::vector<SdpTerm> &terms, const RealMatrix &x) const;
};

struct SdpTolerances {
    double feasibility = 1e-8;
    double gap = 1e-7;
    double certificate_margin = 1e-9;
};

struct SdpOptions {
    SdpTolerances tol;
    int max_iterations = 100;
    uint64_t seed = 0;
};

enum class SdpStatus { optimal, infeasible, unbounded, max_iterations };

std::string_view to_string(SdpStatus status);

/// Farkas ray y with sum_k y_k A_k PSD and b^T y = -1, re-verified by direct
/// arithmetic.
struct InfeasibilityCertificate {
    std::vector<double> y;
    double min_eigenvalue = 0;
    /// Separation left after charging any negative eigenvalue against the
    /// trace bound: -b^T y - trace_bound * max(0, -min_eigenvalue).
    double margin = 0;
    bool verified = false;
};

struct SdpSolution {
    SdpStatus status = SdpStatus::max_iterations;
    double value = 0;
    double dual_value = 0;
    RealMatrix primal;
    std::vector<double> dual;
    std::optional<InfeasibilityCertificate> certificate;
    int iterations = 0;
    int regularizations = 0;
    // Largest absolute constraint violation of the primal matrix.
    double primal_residual = 0;
    // Dual residual norm relative to 1 + |C|.
    double dual_residual = 0;
    double gap = 0;
};

SdpSolution solve(const SdpProblem &problem, const SdpOptions &options = {});

struct FeasibilityReport {
    double max_violation = 0;
    double min_eigenvalue = 0;
    double objective = 0;
    bool feasible(double tol = 1e-9) const {
        return max_violation <= tol && min_eigenvalue >= -tol;
    }
};

FeasibilityReport check_feasible_point(const SdpProblem &problem, const RealMatrix &x);

/// Re-verifies a candidate Farkas ray against the problem data.
InfeasibilityCertificate verify_certificate(const SdpProblem &problem, const std::vector<double> &y);

/// Solves and returns the certificate only if it re-verifies with a margin
/// above the configured threshold.
std::optional<InfeasibilityCertificate> infeasibility_certificate(const SdpProblem &problem,
                                                                  const SdpOptions &options = {});

Json to_json(const SdpProblem &problem);
SdpProblem sdp_problem_from_json(const Json &j);
Json to_json(const SdpSolution &solution);

}  // namespace coordcert

#endif
