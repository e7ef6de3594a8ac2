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

// Runs the acceptance checks and prints one PASS/FAIL line per criterion.
// Usage: coordcert_acceptance [criterion ...]

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "coordcert/bound.h"
#include "coordcert/cli.h"
#include "coordcert/inequalities.h"
#include "coordcert/inflation.h"
#include "coordcert/json_io.h"
#include "coordcert/moment_problem.h"
#include "coordcert/simulate.h"
#include "test_support.h"

namespace coordcert {
namespace {

const double kRhs = 1.5 * std::sqrt(3.0);

struct Outcome {
    bool pass;
    std::string detail;
};

struct Criterion {
    int id;
    std::string name;
    double budget_seconds;
    std::function<Outcome()> run;
};

std::string fmt(const char *f, double a, double b = 0, double c = 0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

Json cli_json(const std::vector<std::string> &args, int *code) {
    std::ostringstream out, err;
    *code = run_cli(args, out, err);
    if (*code != 0) {
        std::cerr << err.str();
        return Json();
    }
    return Json::parse(out.str());
}

Outcome chained_violation() {
    int code;
    const Json j = cli_json({"ineq1", "--fixture", "shared-random-bit"}, &code);
    if (code != 0) {
        return {false, "exit " + std::to_string(code)};
    }
    // Reports carry 12 significant digits, so the file must hold the exactly
    // rounded value while the computed value meets the full tolerance.
    const Ineq1Report r = eval_ineq1(shared_random_bit(), 1e-9);
    const bool computed = std::abs(r.lhs - 3) <= 1e-12 && std::abs(r.rhs - kRhs) <= 1e-12 && r.violated;
    const bool reported = j["lhs"].get<double>() == round_sig(r.lhs) && j["rhs"].get<double>() == round_sig(r.rhs) &&
                          j["violated"].get<bool>();
    return {computed && reported, fmt("lhs=%.15f rhs=%.15f rhs_error=%.1e", r.lhs, r.rhs, std::abs(r.rhs - kRhs))};
}

Outcome sdp_bound() {
    int code;
    const Json j = cli_json({"bound", "--level", "2"}, &code);
    if (code != 0) {
        return {false, "exit " + std::to_string(code)};
    }
    const double bound = j["bound"];
    const WitnessReport w = coordination_witness(2);
    const bool ok = std::abs(bound - kRhs) <= 1e-3 && w.feasibility.feasible(1e-9) &&
                    w.feasibility.objective >= kRhs - 1e-9;
    return {ok, fmt("bound=%.7f witness=%.10f witness_violation=%.1e", bound, w.feasibility.objective,
                    std::max(w.feasibility.max_violation, -w.feasibility.min_eigenvalue))};
}

Outcome perfect_coordination() {
    const MomentProblem p = perfect_coordination_problem(fig2_inflation(), 2);
    const auto cert = infeasibility_certificate(p.sdp);
    if (!cert) {
        return {false, "no certificate"};
    }
    const InfeasibilityCertificate again = verify_certificate(p.sdp, cert->y);
    return {again.verified && again.margin > 1e-9, fmt("margin=%.3e", again.margin)};
}

Outcome ghz_value() {
    const Ineq2Report r = eval_ineq2(ghz4_settings_behavior(1.0, documented_ghz_settings()), default_variant_plus(),
                                     default_variant_minus());
    return {std::abs(r.lhs - 24) <= 1e-6, fmt("lhs=%.9f", r.lhs)};
}

Outcome visibility() {
    int code;
    const Json j = cli_json({"--seed", "0", "threshold"}, &code);
    if (code != 0) {
        return {false, "exit " + std::to_string(code)};
    }
    const double v = j["v_star"];
    return {std::abs(v - 0.9417) <= 0.005, fmt("v*=%.4f", v)};
}

Outcome theorem_suite() {
    Rng rng(2026);
    int violated = 0, perfect = 0;
    double worst = -1e9;
    for (int k = 0; k < 1000; ++k) {
        const CausalCircuit c = with_random_dims(fig1_circuit(), 1, 3, rng);
        const Behavior b = simulate(c, random_realization(c, rng));
        const Ineq1Report r = eval_ineq1(b, 1e-9);
        violated += r.violated;
        perfect += is_perfect_coordination(b, 1e-9);
        worst = std::max(worst, r.violation);
    }
    int code;
    const Json j = cli_json({"--seed", "0", "search", "--dim", "2", "--restarts", "32"}, &code);
    if (code != 0) {
        return {false, "search exit " + std::to_string(code)};
    }
    const double score = j["score"];
    const bool ok = violated == 0 && perfect == 0 && score < 1 - 1e-3;
    return {ok, "violated=" + std::to_string(violated) + " perfect=" + std::to_string(perfect) +
                    fmt(" max_violation=%.4f search_score=%.6f", worst, score)};
}

Outcome oracle_equivalence() {
    Rng rng(7);
    double worst = 0;
    for (int k = 0; k < 50; ++k) {
        const CausalCircuit c = with_random_dims(fig1_circuit(), 1, 4, rng, 64);
        const QuantumRealization r = random_realization(c, rng);
        const Behavior staged = simulate(c, r);
        const Behavior brute = test_support::Oracle(c, r).behavior();
        if (staged.probabilities().size() != brute.probabilities().size()) {
            return {false, "shape mismatch"};
        }
        for (size_t i = 0; i < staged.probabilities().size(); ++i) {
            worst = std::max(worst, std::abs(staged.probabilities()[i] - brute.probabilities()[i]));
        }
    }
    return {worst <= 1e-10, fmt("max_entry_diff=%.2e", worst)};
}

Outcome sos_chain() {
    const InflationSpec spec = fig2_inflation();
    Rng rng(11);
    int triangle_fail = 0, triggered = 0, gap_fail = 0;
    double slack = 1e9;
    for (int k = 0; k < 100; ++k) {
        const InflationRealization r = k % 2 == 0 ? random_inflation_realization(spec, rng)
                                                  : random_classical_inflation_realization(spec, rng);
        const SosChainReport s = sos_chain_check(spec, r, 1e-10);
        const double tb = std::pow(std::sqrt(s.r_ab) + std::sqrt(s.r_bc) + std::sqrt(s.r_cd), 2);
        slack = std::min(slack, tb + 1e-9 - s.r_ad);
        triangle_fail += s.r_ad > tb + 1e-9;
        if (s.r_ab <= 1e-10 && s.r_bc <= 1e-10 && s.r_cd <= 1e-10) {
            ++triggered;
            gap_fail += std::abs(s.independence_gap - std::abs(s.p_a - s.p_a * s.p_d)) > 1e-8;
        }
    }
    const bool ok = triangle_fail == 0 && gap_fail == 0;
    return {ok, "triangle_failures=" + std::to_string(triangle_fail) + " chains=" + std::to_string(triggered) +
                    " gap_failures=" + std::to_string(gap_fail) + fmt(" min_slack=%.2e", slack)};
}

Outcome calibration() {
    const double v = chsh_tsirelson_calibration();
    return {std::abs(v - 2 * std::sqrt(2.0)) <= 1e-6, fmt("chsh=%.9f", v)};
}

}  // namespace
}  // namespace coordcert

int main(int argc, char **argv) {
    using namespace coordcert;
    const std::vector<Criterion> criteria{
        {1, "chained inequality maximal violation", 1, chained_violation},
        {2, "relaxation bound and witness", 120, sdp_bound},
        {3, "perfect coordination infeasible", 5, perfect_coordination},
        {4, "ideal GHZ inequality value", 1, ghz_value},
        {5, "visibility threshold", 600, visibility},
        {6, "no-coordination property suite", 600, theorem_suite},
        {7, "staged simulation matches brute force", 60, oracle_equivalence},
        {8, "SOS chain property", 120, sos_chain},
        {9, "CHSH calibration", 30, calibration},
    };
    std::set<int> selected;
    for (int i = 1; i < argc; ++i) {
        selected.insert(std::stoi(argv[i]));
    }
    int failed = 0;
    for (const auto &c : criteria) {
        if (!selected.empty() && !selected.count(c.id)) {
            continue;
        }
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception &e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_time = secs <= c.budget_seconds;
        const bool pass = o.pass && in_time;
        failed += !pass;
        std::printf("[%s] %d %s: %s time=%.2fs budget=%.0fs%s\n", pass ? "PASS" : "FAIL", c.id, c.name.c_str(),
                    o.detail.c_str(), secs, c.budget_seconds, in_time ? "" : " (over budget)");
        std::fflush(stdout);
    }
    return failed == 0 ? 0 : 1;
}
