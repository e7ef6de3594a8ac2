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

#include "coordcert/optimize.h"

#include <cmath>

#include "coordcert/parallel.h"

namespace coordcert {

std::vector<double> numeric_gradient(const Objective &f, std::span<const double> x, double step) {
    std::vector<double> work(x.begin(), x.end());
    std::vector<double> g(x.size());
    for (size_t i = 0; i < x.size(); ++i) {
        const double xi = work[i];
        work[i] = xi + step;
        const double up = f(work);
        work[i] = xi - step;
        const double down = f(work);
        work[i] = xi;
        g[i] = (up - down) / (2 * step);
    }
    return g;
}

OptimizationResult maximize_bfgs(const Objective &f, std::vector<double> x0, int iterations, double fd_step,
                                 double gradient_tol) {
    const Gradient numeric = [&](std::span<const double> x) { return numeric_gradient(f, x, fd_step); };
    return maximize_bfgs(f, numeric, std::move(x0), iterations, gradient_tol);
}

OptimizationResult maximize_bfgs(const Objective &f, const Gradient &gradient, std::vector<double> x0,
                                 int iterations, double gradient_tol) {
    const Eigen::Index n = static_cast<Eigen::Index>(x0.size());
    OptimizationResult res;
    res.x = std::move(x0);
    res.value = f(res.x);
    if (iterations <= 0 || n == 0) {
        return res;
    }
    auto to_vec = [](const std::vector<double> &v) {
        return RealVector(Eigen::Map<const RealVector>(v.data(), static_cast<Eigen::Index>(v.size())));
    };
    // Work on the minimization of -f.
    RealMatrix h = RealMatrix::Identity(n, n);
    RealVector g = -to_vec(gradient(res.x));
    std::vector<double> trial(res.x.size());
    for (int it = 0; it < iterations; ++it) {
        res.iterations = it + 1;
        if (g.norm() < gradient_tol) {
            break;
        }
        RealVector dir = -h * g;
        if (dir.dot(g) >= 0) {
            h.setIdentity();
            dir = -g;
        }
        double t = 1.0;
        double fx = -res.value;
        double ft = 0;
        bool moved = false;
        for (int ls = 0; ls < 40; ++ls) {
            for (Eigen::Index i = 0; i < n; ++i) {
                trial[static_cast<size_t>(i)] = res.x[static_cast<size_t>(i)] + t * dir(i);
            }
            ft = -f(trial);
            if (std::isfinite(ft) && ft <= fx + 1e-4 * t * dir.dot(g)) {
                moved = true;
                break;
            }
            t *= 0.5;
        }
        if (!moved) {
            if (h.isIdentity()) {
                break;
            }
            h.setIdentity();
            continue;
        }
        const RealVector s = t * dir;
        res.x = trial;
        res.value = -ft;
        const RealVector g_new = -to_vec(gradient(res.x));
        const RealVector y = g_new - g;
        g = g_new;
        const double sy = s.dot(y);
        if (sy > 1e-12 * s.norm() * y.norm()) {
            const double rho = 1.0 / sy;
            const RealVector hy = h * y;
            h += (rho * rho * y.dot(hy) + rho) * (s * s.transpose()) - rho * (hy * s.transpose() + s * hy.transpose());
        }
        if (fx - ft < 1e-15 * (1 + std::abs(fx)) && s.norm() < 1e-12) {
            break;
        }
    }
    return res;
}

Rng restart_rng(uint64_t seed, int index) {
    std::seed_seq seq{static_cast<uint32_t>(seed & 0xffffffffu), static_cast<uint32_t>(seed >> 32),
                      static_cast<uint32_t>(index)};
    return Rng(seq);
}

OptimizationResult multistart_maximize(const Objective &f,
                                       const std::function<std::vector<double>(Rng &, int)> &start,
                                       const OptimizerOptions &options, const Gradient &gradient) {
    const int restarts = std::max(1, options.restarts);
    auto runs = parallel_map(static_cast<size_t>(restarts), options.jobs, [&](size_t k) {
        Rng rng = restart_rng(options.seed, static_cast<int>(k));
        std::vector<double> x0 = start(rng, static_cast<int>(k));
        OptimizationResult r = gradient ? maximize_bfgs(f, gradient, std::move(x0), options.iterations,
                                                        options.gradient_tol)
                                        : maximize_bfgs(f, std::move(x0), options.iterations, options.fd_step,
                                                        options.gradient_tol);
        r.restart = static_cast<int>(k);
        return r;
    });
    size_t best = 0;
    for (size_t k = 1; k < runs.size(); ++k) {
        if (runs[k].value > runs[best].value) {
            best = k;
        }
    }
    return runs[best];
}

}  // namespace coordcert
