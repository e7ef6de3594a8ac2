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

#include "coordcert/cli.h"

#include <cmath>
#include <filesystem>
#include <map>
#include <optional>
#include <thread>

#include "CLI11.hpp"
#include "coordcert/bound.h"
#include "coordcert/errors.h"
#include "coordcert/inequalities.h"
#include "coordcert/inflation.h"
#include "coordcert/json_io.h"
#include "coordcert/moment_problem.h"
#include "coordcert/simulate.h"

namespace coordcert {

namespace {

struct RunConfig {
    std::string command;
    std::vector<std::string> inputs;
    std::string out_dir;
    uint64_t seed = 0;
    int jobs = 1;
    std::optional<double> tol;
    std::optional<int> restarts;
    std::optional<int> iterations;
    int level = 2;
    double grid_step = 0;
    std::string variant_plus;
    std::string variant_minus;
    std::string fixture;
    double v = 1;
    int dim = 2;
    double alpha = 0;
    double delta = 0;
};

struct Artifact {
    std::string file;
    std::string text;
};

class Emitter {
   public:
    Emitter(const RunConfig &config, std::ostream &out) : config_(config), out_(out) {
    }

    /// Prints the report and writes it, plus any extra artifacts, to the
    /// output directory.
    void emit(const Json &report, const std::vector<Artifact> &extra = {}) {
        const std::string text = dump(report);
        out_ << text;
        if (config_.out_dir.empty()) {
            return;
        }
        const std::filesystem::path dir(config_.out_dir);
        std::filesystem::create_directories(dir);
        write_text_file(dir / (config_.command + ".json"), text);
        for (const auto &a : extra) {
            write_text_file(dir / a.file, a.text);
        }
    }

   private:
    const RunConfig &config_;
    std::ostream &out_;
};

Json header(const std::string &command) {
    return Json{{"schema_version", kSchemaVersion}, {"command", command}};
}

Json correlators_json(const Correlators &c) {
    return Json{{"A", number(c.a)},   {"B", number(c.b)},   {"C", number(c.c)},   {"D", number(c.d)},
                {"AB", number(c.ab)}, {"AC", number(c.ac)}, {"AD", number(c.ad)}, {"BC", number(c.bc)},
                {"BD", number(c.bd)}, {"CD", number(c.cd)}};
}

bool is_four_party_binary(const Behavior &b) {
    return b.parties().size() == 4 && b.is_binary();
}

Behavior behavior_fixture(const std::string &name) {
    if (name == "shared-random-bit") {
        return shared_random_bit();
    }
    if (name == "deterministic-zero") {
        return deterministic_zero();
    }
    if (name == "uniform") {
        return uniform_binary();
    }
    if (name == "ghz4") {
        return simulate(ghz4_circuit(), ghz4_realization(1.0));
    }
    throw ValidationError("unknown behavior fixture '" + name +
                          "'; expected shared-random-bit, deterministic-zero, uniform or ghz4");
}

std::pair<CausalCircuit, QuantumRealization> load_circuit_and_realization(const std::string &circuit_path,
                                                                         const std::string &realization_path) {
    CausalCircuit circuit = circuit_from_json(read_json_file(circuit_path));
    require_valid(circuit);
    QuantumRealization realization = realization_from_json(read_json_file(realization_path), circuit);
    validate_realization(circuit, realization);
    return {std::move(circuit), std::move(realization)};
}

Behavior input_behavior(const RunConfig &c) {
    if (!c.fixture.empty()) {
        if (!c.inputs.empty()) {
            throw ValidationError("give either --fixture or input files, not both");
        }
        return behavior_fixture(c.fixture);
    }
    if (c.inputs.size() == 1) {
        return behavior_from_json(read_json_file(c.inputs[0]));
    }
    if (c.inputs.size() == 2) {
        const auto [circuit, realization] = load_circuit_and_realization(c.inputs[0], c.inputs[1]);
        return simulate(circuit, realization);
    }
    throw ValidationError("expected a behavior file, a circuit and realization, or --fixture");
}

ChshVariant variant(const std::string &text, const ChshVariant &fallback) {
    return text.empty() ? fallback : ChshVariant::parse(text);
}

Json ineq2_json(const Ineq2Report &r) {
    return Json{{"p_plus", number(r.p_plus)},
                {"p_minus", number(r.p_minus)},
                {"chsh_plus", number(r.chsh_plus)},
                {"chsh_minus", number(r.chsh_minus)},
                {"sigma", number(r.sigma)},
                {"lhs", number(r.lhs)},
                {"bound", number(r.bound)},
                {"precondition", r.precondition},
                {"violated", r.violated}};
}

Json settings_json(const MeasurementSettings &s) {
    Json j = Json::object();
    for (const auto &[party, list] : s.parties) {
        Json arr = Json::array();
        for (const auto &b : list) {
            arr.push_back({{"theta", number(b.theta)}, {"phi", number(b.phi)}});
        }
        j[party] = arr;
    }
    return j;
}

void run_simulate(const RunConfig &c, Emitter &e) {
    if (c.inputs.size() != 2) {
        throw ValidationError("simulate needs a circuit file and a realization file");
    }
    const auto [circuit, realization] = load_circuit_and_realization(c.inputs[0], c.inputs[1]);
    const Behavior b = simulate(circuit, realization);
    Json report = header("simulate");
    report["behavior"] = to_json(b);
    if (is_four_party_binary(b)) {
        report["correlators"] = correlators_json(correlators(b));
    }
    e.emit(report, {{"behavior.json", dump(to_json(b))}});
}

void run_ineq1(const RunConfig &c, Emitter &e) {
    const Behavior b = input_behavior(c);
    const Ineq1Report r = eval_ineq1(b, c.tol.value_or(1e-9));
    Json report = header("ineq1");
    report["lhs"] = number(r.lhs);
    report["rhs"] = number(r.rhs);
    report["violation"] = number(r.violation);
    report["violated"] = r.violated;
    report["correlators"] = correlators_json(r.correlators);
    e.emit(report);
}

void run_ineq2(const RunConfig &c, Emitter &e) {
    SettingsBehavior sb;
    const bool ghz_alias = c.fixture.empty() && c.inputs.size() == 1 && c.inputs[0] == "ghz";
    if (!c.fixture.empty() || ghz_alias) {
        if (!ghz_alias && c.fixture != "ghz4") {
            throw ValidationError("unknown settings fixture '" + c.fixture + "'; expected ghz4");
        }
        if (!(c.v >= 0 && c.v <= 1)) {
            throw ValidationError("--v must lie in [0, 1]");
        }
        sb = ghz4_settings_behavior(c.v, documented_ghz_settings());
    } else if (c.inputs.size() == 1) {
        sb = settings_behavior_from_json(read_json_file(c.inputs[0]));
    } else {
        throw ValidationError("expected a settings-behavior file or --fixture ghz4");
    }
    const ChshVariant plus = variant(c.variant_plus, default_variant_plus());
    const ChshVariant minus = variant(c.variant_minus, default_variant_minus());
    Json report = header("ineq2");
    if (!c.fixture.empty() || ghz_alias) {
        report["v"] = number(c.v);
    }
    report["variant_plus"] = plus.to_string();
    report["variant_minus"] = minus.to_string();
    report["report"] = ineq2_json(eval_ineq2(sb, plus, minus));
    e.emit(report);
}

void run_threshold(const RunConfig &c, Emitter &e) {
    ThresholdOptions o;
    o.optimizer.restarts = c.restarts.value_or(o.optimizer.restarts);
    o.optimizer.iterations = c.iterations.value_or(o.optimizer.iterations);
    o.optimizer.seed = c.seed;
    o.optimizer.jobs = c.jobs;
    if (c.grid_step > 0) {
        o.grid_step = c.grid_step;
    }
    o.plus = variant(c.variant_plus, o.plus);
    o.minus = variant(c.variant_minus, o.minus);
    const ThresholdReport r = visibility_threshold(o);
    Json report = header("threshold");
    report["v_star"] = number(r.v_star);
    report["bracket"] = {number(r.bracket_low), number(r.bracket_high)};
    report["window"] = {number(o.v_min), number(o.v_max)};
    report["variant_plus"] = o.plus.to_string();
    report["variant_minus"] = o.minus.to_string();
    report["settings"] = settings_json(r.settings);
    report["curve_points"] = r.curve.size();
    e.emit(report, {{"threshold.csv", threshold_csv(r.curve)}});
}

void run_bound(const RunConfig &c, Emitter &e) {
    GridOptions o;
    if (c.grid_step > 0) {
        const double cells = 2.0 / c.grid_step;
        if (std::abs(cells - std::round(cells)) > 1e-9 || cells < 1) {
            throw ValidationError("--grid-step must divide 2 into whole cells");
        }
        o.points = static_cast<int>(std::round(cells)) + 1;
    }
    o.jobs = c.jobs;
    if (c.tol) {
        o.sdp.tol.feasibility = *c.tol;
    }
    const BoundReport r = coordination_bound(c.level, o);
    const WitnessReport w = coordination_witness(c.level);
    Json report = header("bound");
    report["level"] = r.level;
    report["bound"] = number(r.bound);
    report["alpha"] = number(r.alpha);
    report["delta"] = number(r.delta);
    report["cells"] = r.cells.size();
    report["failures"] = r.failures;
    report["witness"] = {{"objective", number(w.feasibility.objective)},
                         {"max_violation", number(w.feasibility.max_violation)},
                         {"min_eigenvalue", number(w.feasibility.min_eigenvalue)}};
    e.emit(report, {{"bound.csv", bound_csv(r)}});
}

InflationRealization bell_ab_fixture(const InflationSpec &spec) {
    const CausalCircuit fig1 = fig1_circuit();
    QuantumRealization r = trivial_realization(fig1);
    ComplexMatrix h(2, 2);
    h << 1, 1, 1, -1;
    h /= std::sqrt(2.0);
    ComplexMatrix cnot = ComplexMatrix::Zero(4, 4);
    cnot(0, 0) = cnot(1, 1) = cnot(2, 3) = cnot(3, 2) = 1;
    r.unitaries["AB"] = cnot * kron(h, ComplexMatrix::Identity(2, 2));
    return inflate(spec, fig1, r);
}

void run_sos_check(const RunConfig &c, Emitter &e) {
    const InflationSpec spec = fig2_inflation();
    InflationRealization r;
    if (!c.fixture.empty()) {
        Rng rng(c.seed);
        if (c.fixture == "trivial") {
            const CausalCircuit fig1 = fig1_circuit();
            r = inflate(spec, fig1, trivial_realization(fig1));
        } else if (c.fixture == "bell-ab") {
            r = bell_ab_fixture(spec);
        } else if (c.fixture == "random") {
            r = random_inflation_realization(spec, rng);
        } else if (c.fixture == "random-classical") {
            r = random_classical_inflation_realization(spec, rng);
        } else {
            throw ValidationError("unknown inflation fixture '" + c.fixture +
                                  "'; expected trivial, bell-ab, random or random-classical");
        }
    } else if (c.inputs.size() == 1) {
        r = inflation_realization_from_json(read_json_file(c.inputs[0]));
    } else {
        throw ValidationError("expected an inflation realization file or --fixture");
    }
    const double tol = c.tol.value_or(1e-10);
    const SosChainReport s = sos_chain_check(spec, r, tol);
    Json report = header("sos-check");
    report["r_ab"] = number(s.r_ab);
    report["r_bc"] = number(s.r_bc);
    report["r_cd"] = number(s.r_cd);
    report["r_ad"] = number(s.r_ad);
    report["triangle_bound"] = number(s.triangle_bound);
    report["p_a"] = number(s.p_a);
    report["p_d"] = number(s.p_d);
    report["p_ad"] = number(s.p_ad);
    report["independence_gap"] = number(s.independence_gap);
    report["tol"] = number(tol);
    report["pairs_within_tol"] = s.pairs_within_tol;
    e.emit(report);
}

void run_canonicalize(const RunConfig &c, Emitter &e) {
    if (c.inputs.size() != 1) {
        throw ValidationError("canonicalize needs one circuit file");
    }
    const CausalCircuit circuit = circuit_from_json(read_json_file(c.inputs[0]));
    e.emit(to_json(canonicalize(circuit)));
}

void run_search(const RunConfig &c, Emitter &e) {
    SearchOptions o;
    o.wire_dim = c.dim;
    o.restarts = c.restarts.value_or(o.restarts);
    o.iterations = c.iterations.value_or(o.iterations);
    o.seed = c.seed;
    o.jobs = c.jobs;
    const SearchResult r = max_coordination_search(o);
    Json report = header("search");
    report["dim"] = o.wire_dim;
    report["restarts"] = o.restarts;
    report["iterations"] = o.iterations;
    report["seed"] = o.seed;
    report["score"] = number(r.score);
    report["restart"] = r.restart;
    report["behavior"] = to_json(r.behavior);
    e.emit(report, {{"search_realization.json", dump(to_json(r.realization))}});
}

void run_moments(const RunConfig &c, Emitter &e) {
    e.emit(export_moment_problem(build_moment_problem(fig2_inflation(), c.level, c.alpha, c.delta)));
}

}  // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    RunConfig c;
    c.jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));

    CLI::App app{"Common-cause certification toolkit for four-party coordination.", "coordcert"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--seed", c.seed, "Random seed (64-bit unsigned)");
    app.add_option("--jobs", c.jobs, "Worker threads for parallel maps")->check(CLI::PositiveNumber);
    app.add_option("--tol", c.tol, "Tolerance override for the chosen command")->check(CLI::PositiveNumber);
    app.add_option("--out", c.out_dir, "Output directory for report files")->envname("COORDCERT_OUT");

    auto *simulate_cmd = app.add_subcommand("simulate", "Simulate a circuit: behavior table and correlators");
    simulate_cmd->add_option("files", c.inputs, "Circuit file and realization file")->required();

    auto *ineq1_cmd = app.add_subcommand("ineq1", "Evaluate the chained coordination inequality on a behavior");
    ineq1_cmd->add_option("inputs", c.inputs, "Behavior file, or circuit and realization files");
    ineq1_cmd->add_option("--fixture", c.fixture,
                          "Built-in behavior: shared-random-bit, deterministic-zero, uniform, ghz4");

    auto *ineq2_cmd = app.add_subcommand("ineq2", "Evaluate the GHZ-type inequality on a settings behavior");
    ineq2_cmd->add_option("inputs", c.inputs, "Settings-behavior file, or ghz for the built-in GHZ state");
    ineq2_cmd->add_option("--fixture", c.fixture, "Built-in settings behavior: ghz4");
    ineq2_cmd->add_option("--v", c.v, "Visibility of the ghz4 fixture");
    ineq2_cmd->add_option("--variant-plus", c.variant_plus, "CHSH signs for the +1 branch, e.g. +++-");
    ineq2_cmd->add_option("--variant-minus", c.variant_minus, "CHSH signs for the -1 branch, e.g. ++-+");

    auto *threshold_cmd = app.add_subcommand("threshold", "Critical GHZ visibility and the plotted curve");
    threshold_cmd->add_option("--restarts", c.restarts, "Optimizer restarts per visibility")
        ->check(CLI::PositiveNumber);
    threshold_cmd->add_option("--iterations", c.iterations, "Optimizer iterations per restart")
        ->check(CLI::NonNegativeNumber);
    threshold_cmd->add_option("--grid-step", c.grid_step, "Spacing of the plotted curve")
        ->check(CLI::PositiveNumber);
    threshold_cmd->add_option("--variant-plus", c.variant_plus, "CHSH signs for the +1 branch");
    threshold_cmd->add_option("--variant-minus", c.variant_minus, "CHSH signs for the -1 branch");

    auto *bound_cmd = app.add_subcommand("bound", "Relaxation bound on the chained correlators");
    bound_cmd->add_option("--level", c.level, "Relaxation level (maximum word length)")
        ->check(CLI::PositiveNumber);
    bound_cmd->add_option("--grid-step", c.grid_step, "Spacing of the (alpha, delta) grid over [-1, 1]")
        ->check(CLI::PositiveNumber);

    auto *sos_cmd = app.add_subcommand("sos-check", "Sum-of-squares chain residuals on an inflation realization");
    sos_cmd->add_option("inputs", c.inputs, "Inflation realization file");
    sos_cmd->add_option("--fixture", c.fixture, "Built-in realization: trivial, bell-ab, random, random-classical");

    auto *canon_cmd = app.add_subcommand("canonicalize", "Rewrite a circuit into canonical form");
    canon_cmd->add_option("circuit", c.inputs, "Circuit file")->required();

    auto *search_cmd = app.add_subcommand("search", "Multi-start search for maximal coordination");
    search_cmd->add_option("--dim", c.dim, "Wire dimension")->check(CLI::PositiveNumber);
    search_cmd->add_option("--restarts", c.restarts, "Optimizer restarts")->check(CLI::PositiveNumber);
    search_cmd->add_option("--iterations", c.iterations, "Iterations per restart")->check(CLI::NonNegativeNumber);

    auto *moments_cmd = app.add_subcommand("moments", "Export the moment problem at fixed <A> and <D>");
    moments_cmd->add_option("--level", c.level, "Relaxation level")->check(CLI::PositiveNumber);
    moments_cmd->add_option("--alpha", c.alpha, "Fixed <A>")->check(CLI::Range(-1.0, 1.0));
    moments_cmd->add_option("--delta", c.delta, "Fixed <D>")->check(CLI::Range(-1.0, 1.0));

    std::vector<const char *> argv{"coordcert"};
    for (const auto &a : args) {
        argv.push_back(a.c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp &) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::CallForAllHelp &) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << "\n";
        return kExitInvalid;
    }

    const std::map<std::string, void (*)(const RunConfig &, Emitter &)> handlers{
        {"simulate", run_simulate}, {"ineq1", run_ineq1},   {"ineq2", run_ineq2},
        {"threshold", run_threshold}, {"bound", run_bound}, {"sos-check", run_sos_check},
        {"canonicalize", run_canonicalize}, {"search", run_search}, {"moments", run_moments},
    };
    c.command = app.get_subcommands().front()->get_name();
    Emitter emitter(c, out);
    try {
        handlers.at(c.command)(c, emitter);
    } catch (const ValidationError &e) {
        err << "error: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const SolverError &e) {
        err << "solver error: " << e.what() << "\n";
        return kExitSolver;
    } catch (const std::filesystem::filesystem_error &e) {
        err << "error: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const std::exception &e) {
        err << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitOk;
}

}  // namespace coordcert
