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

#include "coordcert/sdp.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "coordcert/errors.h"

namespace coordcert {

std::string_view to_string(SdpStatus status) {
    switch (status) {
        case SdpStatus::optimal:
            return "optimal";
        case SdpStatus::infeasible:
            return "infeasible";
        case SdpStatus::unbounded:
            return "unbounded";
        case SdpStatus::max_iterations:
            return "max-iterations";
    }
    return "unknown";
}

void SdpProblem::validate() const {
    if (n < 1) {
        throw ValidationError("SDP dimension must be positive");
    }
    auto check = [&](const std::vector<SdpTerm> &terms, const std::string &where) {
        for (const auto &t : terms) {
            if (t.row < 0 || t.col < 0 || t.row >= n || t.col >= n) {
                throw ValidationError(where + ": entry (" + std::to_string(t.row) + ", " + std::to_string(t.col) +
                                      ") outside the " + std::to_string(n) + "x" + std::to_string(n) + " matrix");
            }
            if (!std::isfinite(t.coef)) {
                throw ValidationError(where + ": non-finite coefficient");
            }
        }
    };
    for (size_t k = 0; k < constraints.size(); ++k) {
        check(constraints[k].terms, "constraint " + std::to_string(k));
        if (!std::isfinite(constraints[k].rhs)) {
            throw ValidationError("constraint " + std::to_string(k) + ": non-finite right-hand side");
        }
    }
    check(objective, "objective");
    if (!std::isfinite(objective_offset) || !std::isfinite(trace_bound) || trace_bound < 0) {
        throw ValidationError("objective offset and trace bound must be finite");
    }
}

RealMatrix SdpProblem::matrix_of(const std::vector<SdpTerm> &terms) const {
    RealMatrix m = RealMatrix::Zero(n, n);
    for (const auto &t : terms) {
        if (t.row == t.col) {
            m(t.row, t.row) += t.coef;
        } else {
            m(t.row, t.col) += t.coef / 2;
            m(t.col, t.row) += t.coef / 2;
        }
    }
    return m;
}

double SdpProblem::evaluate(const std::vector<SdpTerm> &terms, const RealMatrix &x) const {
    double s = 0;
    for (const auto &t : terms) {
        s += t.coef * x(t.row, t.col);
    }
    return s;
}

FeasibilityReport check_feasible_point(const SdpProblem &problem, const RealMatrix &x) {
    problem.validate();
    if (x.rows() != problem.n || x.cols() != problem.n) {
        throw ValidationError("point has the wrong dimension");
    }
    FeasibilityReport r;
    for (const auto &c : problem.constraints) {
        r.max_violation = std::max(r.max_violation, std::abs(problem.evaluate(c.terms, x) - c.rhs));
    }
    const RealMatrix sym = (x + x.transpose()) / 2;
    r.min_eigenvalue = min_eigenvalue(sym);
    r.objective = problem.evaluate(problem.objective, x) + problem.objective_offset;
    return r;
}

InfeasibilityCertificate verify_certificate(const SdpProblem &problem, const std::vector<double> &y) {
    if (y.size() != problem.constraints.size()) {
        throw ValidationError("certificate length does not match the constraint count");
    }
    InfeasibilityCertificate cert;
    cert.y = y;
    RealMatrix s = RealMatrix::Zero(problem.n, problem.n);
    double by = 0;
    for (size_t k = 0; k < y.size(); ++k) {
        if (y[k] == 0) {
            continue;
        }
        s += y[k] * problem.matrix_of(problem.constraints[k].terms);
        by += y[k] * problem.constraints[k].rhs;
    }
    cert.min_eigenvalue = min_eigenvalue(s);
    // For X feasible, 0 <= <S, X> = b^T y unless S has negative directions,
    // which can contribute at most trace(X) * |min eigenvalue|.
    const double leak = std::max(0.0, -cert.min_eigenvalue);
    if (problem.trace_bound > 0) {
        cert.margin = -by - problem.trace_bound * leak;
    } else {
        cert.margin = leak > 1e-14 ? -1.0 : -by;
    }
    cert.verified = cert.margin > 0;
    return cert;
}

namespace {

struct Entry {
    int i, j;
    double v;
};

/// Full symmetric sparse form: <A, X> = sum v X(i, j) over both triangles.
std::vector<Entry> full_entries(const std::vector<SdpTerm> &terms) {
    std::map<std::pair<int, int>, double> acc;
    for (const auto &t : terms) {
        if (t.row == t.col) {
            acc[{t.row, t.row}] += t.coef;
        } else {
            acc[{t.row, t.col}] += t.coef / 2;
            acc[{t.col, t.row}] += t.coef / 2;
        }
    }
    std::vector<Entry> out;
    for (const auto &[k, v] : acc) {
        if (v != 0) {
            out.push_back({k.first, k.second, v});
        }
    }
    return out;
}

double inner(const std::vector<Entry> &a, const RealMatrix &x) {
    double s = 0;
    for (const auto &e : a) {
        s += e.v * x(e.i, e.j);
    }
    return s;
}

void add_scaled(const std::vector<Entry> &a, double y, RealMatrix &out) {
    for (const auto &e : a) {
        out(e.i, e.j) += y * e.v;
    }
}

RealMatrix sym(const RealMatrix &m) {
    return (m + m.transpose()) / 2;
}

/// Largest step alpha in (0, 1] with lambda + alpha * d PSD, where lambda
/// is a positive diagonal.
double max_step(const RealVector &lambda, const RealMatrix &d) {
    const RealVector inv_sqrt = lambda.cwiseSqrt().cwiseInverse();
    const RealMatrix scaled = inv_sqrt.asDiagonal() * sym(d) * inv_sqrt.asDiagonal();
    const double lo = Eigen::SelfAdjointEigenSolver<RealMatrix>(scaled, Eigen::EigenvaluesOnly).eigenvalues()(0);
    return lo >= 0 ? std::numeric_limits<double>::infinity() : -1.0 / lo;
}

double scalar_step(double v, double dv) {
    return dv >= 0 ? std::numeric_limits<double>::infinity() : -v / dv;
}

struct Reduced {
    std::vector<int> kept;
    std::optional<std::vector<double>> inconsistency;
};

/// Drops linearly dependent constraints; returns a Farkas ray when the
/// affine system itself is inconsistent.
Reduced preprocess(const SdpProblem &p, const std::vector<std::vector<Entry>> &a) {
    const int n = p.n;
    const int m = static_cast<int>(a.size());
    Reduced out;
    if (m == 0) {
        return out;
    }
    const int cols = n * (n + 1) / 2;
    auto col_of = [n](int i, int j) {
        if (i > j) {
            std::swap(i, j);
        }
        return i * n - i * (i - 1) / 2 + (j - i);
    };
    // Rows in the orthonormal symmetric coordinates so that row dot products
    // equal trace inner products.
    RealMatrix k = RealMatrix::Zero(m, cols);
    for (int r = 0; r < m; ++r) {
        for (const auto &e : a[static_cast<size_t>(r)]) {
            if (e.i <= e.j) {
                k(r, col_of(e.i, e.j)) += e.i == e.j ? e.v : e.v * std::sqrt(2.0);
            }
        }
    }
    RealVector b(m);
    for (int r = 0; r < m; ++r) {
        b(r) = p.constraints[static_cast<size_t>(r)].rhs;
    }
    const double scale = std::max(1.0, k.cwiseAbs().maxCoeff());
    Eigen::ColPivHouseholderQR<RealMatrix> qr(k.transpose());
    qr.setThreshold(1e-10);
    const int rank = static_cast<int>(qr.rank());
    for (int c = 0; c < rank; ++c) {
        out.kept.push_back(static_cast<int>(qr.colsPermutation().indices()(c)));
    }
    std::sort(out.kept.begin(), out.kept.end());
    if (rank < m) {
        // The affine system is consistent iff b is orthogonal to the null
        // space of K K^T.
        const RealMatrix gram = k * k.transpose();
        Eigen::SelfAdjointEigenSolver<RealMatrix> eig(gram);
        RealVector ray = RealVector::Zero(m);
        const double cut = 1e-10 * scale * scale * std::max(1, m);
        for (int c = 0; c < m; ++c) {
            if (eig.eigenvalues()(c) <= cut) {
                const RealVector v = eig.eigenvectors().col(c);
                ray += v.dot(b) * v;
            }
        }
        const double by = ray.dot(b);
        if (by > 1e-9 * (1.0 + b.norm())) {
            std::vector<double> y(static_cast<size_t>(m));
            for (int r = 0; r < m; ++r) {
                y[static_cast<size_t>(r)] = -ray(r) / by;
            }
            out.inconsistency = y;
        }
    }
    return out;
}

}  // namespace

SdpSolution solve(const SdpProblem &problem, const SdpOptions &options) {
    problem.validate();
    const int n = problem.n;
    std::vector<std::vector<Entry>> all;
    for (const auto &c : problem.constraints) {
        all.push_back(full_entries(c.terms));
    }
    SdpSolution sol;
    sol.dual.assign(problem.constraints.size(), 0.0);
    sol.primal = RealMatrix::Zero(n, n);
    const Reduced red = preprocess(problem, all);
    if (red.inconsistency) {
        sol.status = SdpStatus::infeasible;
        sol.certificate = verify_certificate(problem, *red.inconsistency);
        return sol;
    }
    const int m = static_cast<int>(red.kept.size());
    std::vector<std::vector<Entry>> a;
    RealVector b(m);
    for (int k = 0; k < m; ++k) {
        a.push_back(all[static_cast<size_t>(red.kept[static_cast<size_t>(k)])]);
        b(k) = problem.constraints[static_cast<size_t>(red.kept[static_cast<size_t>(k)])].rhs;
    }
    // Internally: minimize <c, X> with c = -C.
    const RealMatrix c = -problem.matrix_of(problem.objective);
    auto a_op = [&](const RealMatrix &x) {
        RealVector out(m);
        for (int k = 0; k < m; ++k) {
            out(k) = inner(a[static_cast<size_t>(k)], x);
        }
        return out;
    };
    auto at_op = [&](const RealVector &y) {
        RealMatrix out = RealMatrix::Zero(n, n);
        for (int k = 0; k < m; ++k) {
            add_scaled(a[static_cast<size_t>(k)], y(k), out);
        }
        return out;
    };
    const double bnorm = b.norm();
    const double cnorm = c.norm();
    // Gram matrix of the kept constraints, well conditioned after preprocessing.
    RealMatrix gram(m, m);
    for (int l = 0; l < m; ++l) {
        RealVector e = RealVector::Zero(m);
        e(l) = 1;
        gram.col(l) = a_op(at_op(e));
    }
    const Eigen::LDLT<RealMatrix> gram_ldlt(gram);

    RealMatrix x = RealMatrix::Identity(n, n);
    RealMatrix s = RealMatrix::Identity(n, n);
    RealVector y = RealVector::Zero(m);
    double tau = 1, kappa = 1;
    const double nu = n + 1;

    auto finish_optimal = [&](int iter) {
        sol.status = SdpStatus::optimal;
        sol.primal = sym(x / tau);
        sol.value = -(c.cwiseProduct(x).sum()) / tau + problem.objective_offset;
        sol.dual_value = -b.dot(y) / tau + problem.objective_offset;
        for (int k = 0; k < m; ++k) {
            sol.dual[static_cast<size_t>(red.kept[static_cast<size_t>(k)])] = -y(k) / tau;
        }
        sol.iterations = iter;
    };

    // Near convergence, rounding in the Newton system can stall the residuals just above the
    // tolerance. Projecting X onto the affine constraints and rebuilding S from y gives a pair
    // whose remaining error is a small cone violation; accept it if that is within tolerance.
    auto polish = [&](int iter) {
        const RealMatrix xt = sym(x / tau);
        const RealMatrix xp = sym(xt + at_op(gram_ldlt.solve(b - a_op(xt))));
        const RealVector yt = y / tau;
        const RealMatrix sp = sym(c - at_op(yt));
        Eigen::SelfAdjointEigenSolver<RealMatrix> ex(xp, Eigen::EigenvaluesOnly), es(sp, Eigen::EigenvaluesOnly);
        const double pres = m == 0 ? 0.0 : (a_op(xp) - b).cwiseAbs().maxCoeff();
        const double pcone = std::max(0.0, -ex.eigenvalues()(0));
        const double dres = std::max(0.0, -es.eigenvalues()(0)) / (1 + cnorm);
        const double pv = -c.cwiseProduct(xp).sum(), dv = -b.dot(yt);
        const double gap = std::abs(pv - dv);
        if (!(pres <= options.tol.feasibility && pcone <= options.tol.feasibility &&
              dres <= options.tol.feasibility && gap <= options.tol.gap * (1 + std::abs(pv)))) {
            return false;
        }
        finish_optimal(iter);
        sol.primal = xp;
        sol.value = pv + problem.objective_offset;
        sol.primal_residual = pres;
        sol.dual_residual = dres;
        sol.gap = gap;
        return true;
    };

    struct Iterate {
        RealMatrix x, s;
        RealVector y;
        double tau = 1, kappa = 1, merit = std::numeric_limits<double>::infinity();
        double pres = 0, dres = 0, gap = 0;
    } best;

    for (int iter = 0; iter <= options.max_iterations; ++iter) {
        const RealVector rp = a_op(x) - b * tau;
        const RealMatrix rd = at_op(y) + s - c * tau;
        const double cx = c.cwiseProduct(x).sum();
        const double by = b.dot(y);
        const double rg = cx - by + kappa;
        const double mu = (x.cwiseProduct(s).sum() + tau * kappa) / nu;

        sol.primal_residual = m == 0 ? 0.0 : rp.cwiseAbs().maxCoeff() / tau;
        sol.dual_residual = rd.norm() / tau / (1 + cnorm);
        const double pval = -cx / tau, dval = -by / tau;
        sol.gap = std::abs(pval - dval);
        const double merit = std::max({sol.primal_residual, sol.dual_residual, sol.gap / (1 + std::abs(pval))});
        if (merit < best.merit) {
            best = {x, s, y, tau, kappa, merit, sol.primal_residual, sol.dual_residual, sol.gap};
        }
        if (sol.primal_residual <= options.tol.feasibility && sol.dual_residual <= options.tol.feasibility &&
            sol.gap <= options.tol.gap * (1 + std::abs(pval))) {
            finish_optimal(iter);
            return sol;
        }
        if (merit <= 1e3 * options.tol.feasibility && polish(iter)) {
            return sol;
        }
        if (by > 0) {
            const RealMatrix ray = at_op(y) + s;
            if (ray.norm() / by <= options.tol.feasibility * (1 + cnorm)) {
                std::vector<double> full(problem.constraints.size(), 0.0);
                for (int k = 0; k < m; ++k) {
                    full[static_cast<size_t>(red.kept[static_cast<size_t>(k)])] = -y(k) / by;
                }
                sol.status = SdpStatus::infeasible;
                sol.certificate = verify_certificate(problem, full);
                sol.iterations = iter;
                return sol;
            }
        }
        if (cx < 0) {
            if (a_op(x).norm() / (-cx) <= options.tol.feasibility * (1 + bnorm)) {
                sol.status = SdpStatus::unbounded;
                sol.iterations = iter;
                return sol;
            }
        }
        if (iter == options.max_iterations) {
            break;
        }

        // Nesterov-Todd scaling: W = R R^T with R^T S R = R^-1 X R^-T = diag(lambda).
        Eigen::SelfAdjointEigenSolver<RealMatrix> ex(sym(x)), es(sym(s));
        if (!(ex.eigenvalues()(0) > 0) || !(es.eigenvalues()(0) > 0)) {
            // Numerical breakdown at the cone boundary: report the last iterate.
            break;
        }
        const RealMatrix lx = ex.eigenvectors() * ex.eigenvalues().cwiseMax(0).cwiseSqrt().asDiagonal();
        const RealMatrix ls = es.eigenvectors() * es.eigenvalues().cwiseMax(0).cwiseSqrt().asDiagonal();
        Eigen::JacobiSVD<RealMatrix> svd(ls.transpose() * lx, Eigen::ComputeFullU | Eigen::ComputeFullV);
        RealVector lambda = svd.singularValues();
        if (lambda.minCoeff() <= 0) {
            // Numerical breakdown at the cone boundary: report the last iterate.
            break;
        }
        const RealMatrix r = lx * svd.matrixV() * lambda.cwiseSqrt().cwiseInverse().asDiagonal();
        const RealMatrix lx_inv = ex.eigenvalues().cwiseMax(0).cwiseSqrt().cwiseInverse().asDiagonal() *
                                  ex.eigenvectors().transpose();
        const RealMatrix rinv = lambda.cwiseSqrt().asDiagonal() * svd.matrixV().transpose() * lx_inv;
        const RealMatrix w = r * r.transpose();

        // Schur complement M_kl = <A_k, W A_l W>.
        RealMatrix schur(m, m);
        for (int k = 0; k < m; ++k) {
            for (int l = k; l < m; ++l) {
                double v = 0;
                for (const auto &e : a[static_cast<size_t>(k)]) {
                    for (const auto &f : a[static_cast<size_t>(l)]) {
                        v += e.v * f.v * w(e.j, f.i) * w(f.j, e.i);
                    }
                }
                schur(k, l) = schur(l, k) = v;
            }
        }
        Eigen::LLT<RealMatrix> llt(schur);
        double reg = 0;
        while (llt.info() != Eigen::Success) {
            reg = reg == 0 ? 1e-14 * std::max(1.0, schur.diagonal().maxCoeff()) : reg * 100;
            ++sol.regularizations;
            if (reg > 1e-2 * std::max(1.0, schur.diagonal().maxCoeff())) {
                throw SolverError("singular Schur complement after " + std::to_string(sol.regularizations) +
                                  " regularization retries");
            }
            llt.compute(schur + reg * RealMatrix::Identity(m, m));
        }
        const RealMatrix wcw = w * c * w;
        const RealVector awcw = a_op(wcw);
        const RealVector u = llt.solve(awcw + b);
        const RealVector g = awcw - b;
        // g^T u - h written as a negative sum of nonnegative terms to avoid cancellation.
        const RealMatrix c_res = c - at_op(llt.solve(awcw));
        const double denom = -(std::max(0.0, c_res.cwiseProduct(w * c_res * w).sum()) +
                               std::max(0.0, b.dot(llt.solve(b))) + kappa / tau);
        struct Direction {
            RealMatrix dx, ds;
            RealVector dy;
            double dtau, dkappa;
        };
        // Solves A dX - b dtau = t1, A^T dy + dS - c dtau = t2,
        // -b^T dy + <c, dX> + dkappa = t3, dX + W dS W = t4,
        // kappa dtau + tau dkappa = t5.
        auto newton = [&](const RealVector &t1, const RealMatrix &t2, double t3, const RealMatrix &t4, double t5) {
            const RealMatrix wt2w = w * t2 * w;
            const RealVector v = llt.solve(t1 - a_op(t4) + a_op(wt2w));
            const double r3 = t3 - c.cwiseProduct(t4).sum() + wcw.cwiseProduct(t2).sum() - t5 / tau;
            Direction d;
            d.dtau = (r3 - g.dot(v)) / denom;
            d.dy = v + d.dtau * u;
            d.ds = t2 - at_op(d.dy) + c * d.dtau;
            d.dx = t4 - w * d.ds * w;
            d.dkappa = (t5 - kappa * d.dtau) / tau;
            return d;
        };
        auto direction = [&](double eta, const RealMatrix &rhs_scaled, double rhs_tk) {
            // Z solves lambda o Z = rhs in the scaled space.
            RealMatrix z(n, n);
            for (int i = 0; i < n; ++i) {
                for (int j = 0; j < n; ++j) {
                    z(i, j) = 2 * rhs_scaled(i, j) / (lambda(i) + lambda(j));
                }
            }
            const RealVector t1 = -eta * rp;
            const RealMatrix t2 = -eta * rd;
            const double t3 = -eta * rg;
            const RealMatrix t4 = r * z * r.transpose();
            Direction d = newton(t1, t2, t3, t4, rhs_tk);
            // Iterative refinement recovers accuracy lost to ill-conditioned W.
            for (int pass = 0; pass < 2; ++pass) {
                const RealVector e1 = t1 - (a_op(d.dx) - b * d.dtau);
                const RealMatrix e2 = t2 - (at_op(d.dy) + d.ds - c * d.dtau);
                const double e3 = t3 - (-b.dot(d.dy) + c.cwiseProduct(d.dx).sum() + d.dkappa);
                const RealMatrix e4 = t4 - (d.dx + w * d.ds * w);
                const double e5 = rhs_tk - (kappa * d.dtau + tau * d.dkappa);
                const Direction fix = newton(e1, e2, e3, e4, e5);
                d.dx += fix.dx;
                d.ds += fix.ds;
                d.dy += fix.dy;
                d.dtau += fix.dtau;
                d.dkappa += fix.dkappa;
            }
            return d;
        };
        auto step_of = [&](const Direction &d) {
            const RealMatrix dxs = rinv * d.dx * rinv.transpose();
            const RealMatrix dss = r.transpose() * d.ds * r;
            double alpha = std::min({max_step(lambda, dxs), max_step(lambda, dss), scalar_step(tau, d.dtau),
                                     scalar_step(kappa, d.dkappa)});
            return std::make_pair(alpha, std::make_pair(dxs, dss));
        };

        const RealMatrix lam2 = (lambda.array() * lambda.array()).matrix().asDiagonal();
        const Direction aff = direction(1.0, -lam2, -tau * kappa);
        const auto [alpha_aff, scaled_aff] = step_of(aff);
        const double a_aff = std::min(1.0, alpha_aff);
        const double sigma = std::pow(1 - a_aff, 3);
        const RealMatrix &dxa = scaled_aff.first;
        const RealMatrix &dsa = scaled_aff.second;
        const RealMatrix corr = sym(dxa * dsa);
        RealMatrix rhs = -lam2 - corr;
        rhs.diagonal().array() += sigma * mu;
        // Projecting the primal direction onto the linearized constraints removes drift in
        // the primal residual; keep it unless it costs step length.
        Direction d = direction(1 - sigma, rhs, sigma * mu - tau * kappa - aff.dtau * aff.dkappa);
        Direction dp = d;
        dp.dx += at_op(gram_ldlt.solve(-(1 - sigma) * rp - (a_op(d.dx) - b * d.dtau)));
        const double alpha_raw = step_of(d).first;
        const double alpha_proj = step_of(dp).first;
        if (dp.dx.allFinite() && alpha_proj >= 0.9 * std::min(1.0, alpha_raw)) {
            d = dp;
        }
        const double alpha = std::min(1.0, 0.95 * (d.dx == dp.dx ? alpha_proj : alpha_raw));
        if (!std::isfinite(alpha) || !d.dx.allFinite() || !d.ds.allFinite() || !d.dy.allFinite() ||
            !std::isfinite(d.dtau) || !std::isfinite(d.dkappa)) {
            break;
        }

        x = sym(x + alpha * d.dx);
        s = sym(s + alpha * d.ds);
        y += alpha * d.dy;
        tau += alpha * d.dtau;
        kappa += alpha * d.dkappa;
        sol.iterations = iter + 1;
    }
    // Best iterate seen, with its residuals.
    x = best.x;
    s = best.s;
    y = best.y;
    tau = best.tau;
    kappa = best.kappa;
    const int iterations = sol.iterations;
    finish_optimal(iterations);
    sol.status = SdpStatus::max_iterations;
    sol.primal_residual = best.pres;
    sol.dual_residual = best.dres;
    sol.gap = best.gap;
    return sol;
}

std::optional<InfeasibilityCertificate> infeasibility_certificate(const SdpProblem &problem,
                                                                  const SdpOptions &options) {
    const SdpSolution sol = solve(problem, options);
    if (sol.status != SdpStatus::infeasible || !sol.certificate) {
        return std::nullopt;
    }
    if (sol.certificate->margin <= options.tol.certificate_margin) {
        return std::nullopt;
    }
    return sol.certificate;
}

namespace {

Json terms_to_json(const std::vector<SdpTerm> &terms) {
    Json out = Json::array();
    for (const auto &t : terms) {
        out.push_back({t.row, t.col, number(t.coef)});
    }
    return out;
}

std::vector<SdpTerm> terms_from_json(const Json &j, const std::string &where) {
    if (!j.is_array()) {
        throw ValidationError(where + ": expected an array of [row, col, coef] triples");
    }
    std::vector<SdpTerm> out;
    for (const auto &t : j) {
        if (!t.is_array() || t.size() != 3 || !t[0].is_number_integer() || !t[1].is_number_integer() ||
            !t[2].is_number()) {
            throw ValidationError(where + ": expected [row, col, coef]");
        }
        out.push_back({t[0].get<int>(), t[1].get<int>(), t[2].get<double>()});
    }
    return out;
}

}  // namespace

Json to_json(const SdpProblem &problem) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["n"] = problem.n;
    Json cons = Json::array();
    for (const auto &c : problem.constraints) {
        cons.push_back({{"terms", terms_to_json(c.terms)}, {"rhs", number(c.rhs)}});
    }
    j["constraints"] = cons;
    j["objective"] = {{"terms", terms_to_json(problem.objective)}, {"offset", number(problem.objective_offset)}};
    j["trace_bound"] = number(problem.trace_bound);
    return j;
}

SdpProblem sdp_problem_from_json(const Json &j) {
    if (!j.is_object()) {
        throw ValidationError("SDP problem must be a JSON object");
    }
    for (const auto &[key, value] : j.items()) {
        if (key != "schema_version" && key != "n" && key != "constraints" && key != "objective" &&
            key != "trace_bound") {
            throw ValidationError("SDP problem: unknown key '" + key + "'");
        }
    }
    SdpProblem p;
    p.n = j.at("n").get<int>();
    for (const auto &c : j.at("constraints")) {
        p.constraints.push_back({terms_from_json(c.at("terms"), "constraint"), c.at("rhs").get<double>()});
    }
    p.objective = terms_from_json(j.at("objective").at("terms"), "objective");
    p.objective_offset = j.at("objective").value("offset", 0.0);
    p.trace_bound = j.value("trace_bound", 0.0);
    p.validate();
    return p;
}

Json to_json(const SdpSolution &solution) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["status"] = std::string(to_string(solution.status));
    j["value"] = number(solution.value);
    j["dual_value"] = number(solution.dual_value);
    j["iterations"] = solution.iterations;
    j["primal"] = real_matrix_to_json(solution.primal);
    Json dual = Json::array();
    for (double v : solution.dual) {
        dual.push_back(number(v));
    }
    j["dual"] = dual;
    if (solution.certificate) {
        Json ray = Json::array();
        for (double v : solution.certificate->y) {
            ray.push_back(number(v));
        }
        j["certificate"] = {{"y", ray},
                            {"min_eigenvalue", number(solution.certificate->min_eigenvalue)},
                            {"margin", number(solution.certificate->margin)},
                            {"verified", solution.certificate->verified}};
    }
    return j;
}

}  // namespace coordcert
