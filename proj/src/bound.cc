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

#include "coordcert/bound.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "coordcert/errors.h"
#include "coordcert/parallel.h"

namespace coordcert {

namespace {

BoundCell solve_cell(const InflationSpec &spec, int level, double alpha, double delta, const SdpOptions &options) {
    BoundCell cell;
    cell.alpha = alpha;
    cell.delta = delta;
    try {
        const SdpSolution s = solve(build_moment_problem(spec, level, alpha, delta).sdp, options);
        cell.status = s.status;
        cell.value = s.value;
        cell.ok = s.status == SdpStatus::optimal;
    } catch (const SolverError &) {
        cell.ok = false;
    }
    return cell;
}

/// Rounds grid coordinates so that coarse and refined points coincide.
double snap(double x) {
    return std::round(x * 1e9) / 1e9;
}

bool better(const BoundCell &a, const BoundCell &b) {
    if (!a.ok) {
        return false;
    }
    if (!b.ok) {
        return true;
    }
    // Values within solver accuracy tie; prefer the cell nearest the origin.
    if (std::abs(a.value - b.value) > 1e-7) {
        return a.value > b.value;
    }
    return std::hypot(a.alpha, a.delta) < std::hypot(b.alpha, b.delta) - 1e-12;
}

}  // namespace

BoundReport coordination_bound(int level, const GridOptions &options) {
    if (level < 1) {
        throw ValidationError("level must be at least 1");
    }
    if (options.points < 2 || options.refine_step <= 0 || options.refine_radius < 0) {
        throw ValidationError("bad grid options");
    }
    const InflationSpec spec = fig2_inflation();
    std::vector<std::pair<double, double>> coarse;
    for (int i = 0; i < options.points; ++i) {
        for (int j = 0; j < options.points; ++j) {
            coarse.push_back({snap(-1 + 2.0 * i / (options.points - 1)), snap(-1 + 2.0 * j / (options.points - 1))});
        }
    }
    BoundReport report;
    report.level = level;
    auto run = [&](const std::vector<std::pair<double, double>> &points, bool refined) {
        auto cells = parallel_map(points.size(), options.jobs, [&](size_t k) {
            BoundCell c = solve_cell(spec, level, points[k].first, points[k].second, options.sdp);
            c.refined = refined;
            return c;
        });
        report.cells.insert(report.cells.end(), cells.begin(), cells.end());
    };
    run(coarse, false);
    auto incumbent = [&] {
        const BoundCell *best = nullptr;
        for (const auto &c : report.cells) {
            if (!best || better(c, *best)) {
                best = &c;
            }
        }
        return best;
    };
    const BoundCell *best = incumbent();
    if (!best || !best->ok) {
        throw SolverError("no grid cell solved");
    }
    if (options.refine) {
        const int half = static_cast<int>(std::floor(options.refine_radius / options.refine_step + 1e-9));
        std::vector<std::pair<double, double>> fine;
        const double a0 = best->alpha, d0 = best->delta;
        for (int i = -half; i <= half; ++i) {
            for (int j = -half; j <= half; ++j) {
                const double a = snap(a0 + i * options.refine_step), d = snap(d0 + j * options.refine_step);
                if (a < -1 || a > 1 || d < -1 || d > 1) {
                    continue;
                }
                const bool seen = std::any_of(report.cells.begin(), report.cells.end(),
                                              [&](const BoundCell &c) { return c.alpha == a && c.delta == d; });
                if (!seen) {
                    fine.push_back({a, d});
                }
            }
        }
        run(fine, true);
        best = incumbent();
    }
    report.bound = best->value;
    report.alpha = best->alpha;
    report.delta = best->delta;
    report.failures = static_cast<int>(std::count_if(report.cells.begin(), report.cells.end(),
                                                     [](const BoundCell &c) { return !c.ok; }));
    return report;
}

WitnessReport coordination_witness(int level) {
    const MomentProblem problem = build_moment_problem(fig2_inflation(), level, 0, 0);
    const ComplexMatrix id = ComplexMatrix::Identity(2, 2);
    auto proj = [&](double theta) -> ComplexMatrix {
        return (id + std::cos(theta) * pauli_z() + std::sin(theta) * pauli_x()) / 2.0;
    };
    const std::array<ComplexMatrix, 4> letter{kron(proj(0), id), kron(id, proj(M_PI / 6)), kron(proj(M_PI / 3), id),
                                              kron(id, proj(M_PI / 2))};
    ComplexVector bell = ComplexVector::Zero(4);
    bell(0) = bell(3) = 1.0 / std::sqrt(2.0);
    auto moment = [&](const Word &w) -> Complex {
        ComplexMatrix op = ComplexMatrix::Identity(4, 4);
        for (const Letter &l : w) {
            const ComplexMatrix &p = letter[static_cast<size_t>(l.party)];
            op = op * (l.outcome == 0 ? p : ComplexMatrix(ComplexMatrix::Identity(4, 4) - p));
        }
        return bell.dot(op * bell);
    };
    WitnessReport r;
    r.moment_matrix = moment_matrix(problem, moment);
    r.feasibility = check_feasible_point(problem.sdp, r.moment_matrix);
    return r;
}

std::string bound_csv(const BoundReport &report) {
    std::ostringstream os;
    os << "alpha,delta,status,value,refined\n";
    for (const auto &c : report.cells) {
        os << number(c.alpha).dump() << ',' << number(c.delta).dump() << ',' << to_string(c.status) << ','
           << number(c.value).dump() << ',' << (c.refined ? "true" : "false") << '\n';
    }
    return os.str();
}

}  // namespace coordcert
