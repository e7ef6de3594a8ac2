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

#include "coordcert/inequalities.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "coordcert/errors.h"
#include "coordcert/json_io.h"

namespace coordcert {

double ineq1_constant() {
    return 3.0 * std::sqrt(3.0) / 2.0;
}

Ineq1Report eval_ineq1(const Behavior &behavior, double tol) {
    Ineq1Report r;
    r.correlators = correlators(behavior);
    const Correlators &c = r.correlators;
    r.lhs = c.ab + c.bc + c.cd;
    r.rhs = c.a * c.d / 2.0 + ineq1_constant();
    r.violation = r.lhs - r.rhs;
    r.violated = r.violation > tol;
    return r;
}

ChshVariant ChshVariant::parse(const std::string &text) {
    ChshVariant v;
    size_t k = 0;
    for (char ch : text) {
        if (ch == ',' || ch == ' ' || ch == '(' || ch == ')') {
            continue;
        }
        if ((ch != '+' && ch != '-') || k >= 4) {
            throw ValidationError("CHSH variant must be four signs such as \"+++-\", got \"" + text + "\"");
        }
        v.signs[k++] = ch == '+' ? 1 : -1;
    }
    if (k != 4) {
        throw ValidationError("CHSH variant must be four signs such as \"+++-\", got \"" + text + "\"");
    }
    if (!v.valid()) {
        throw ValidationError("CHSH variant needs one or three negative signs, got \"" + text + "\"");
    }
    return v;
}

std::string ChshVariant::to_string() const {
    std::string out;
    for (int s : signs) {
        out += s > 0 ? '+' : '-';
    }
    return out;
}

bool ChshVariant::valid() const {
    int negatives = 0;
    for (int s : signs) {
        if (s != 1 && s != -1) {
            return false;
        }
        negatives += s < 0;
    }
    return negatives == 1 || negatives == 3;
}

ChshVariant default_variant_plus() {
    return ChshVariant{{1, 1, 1, -1}};
}

ChshVariant default_variant_minus() {
    return ChshVariant{{1, 1, -1, 1}};
}

namespace {

void require_ineq2_shape(const SettingsBehavior &sb) {
    if (sb.parties().size() != 4) {
        throw ValidationError("the GHZ-type inequality needs four parties");
    }
    if (sb.setting_arities() != std::vector<int>{2, 3, 2, 2}) {
        throw ValidationError("the GHZ-type inequality needs setting arities (2, 3, 2, 2)");
    }
    for (const auto &b : sb.table()) {
        if (!b.is_binary()) {
            throw ValidationError("the GHZ-type inequality needs binary outcomes");
        }
    }
}

double chsh_of(const std::array<double, 4> &e, const ChshVariant &v) {
    double s = 0;
    for (size_t i = 0; i < 4; ++i) {
        s += v.signs[i] * e[i];
    }
    return s;
}

/// sum_o P(o) (-1)^(a+b) restricted to (-1)^(c+d) = branch, and the branch
/// weight, for the entry at the given settings.
std::pair<double, double> conditioned_ab(const Behavior &b, int branch) {
    double corr = 0, weight = 0;
    for (size_t i = 0; i < b.size(); ++i) {
        const auto o = b.outcomes_of(i);
        const int cd = ((o[2] + o[3]) % 2 == 0) ? 1 : -1;
        if (cd != branch) {
            continue;
        }
        const double p = b.probabilities()[i];
        weight += p;
        corr += ((o[0] + o[1]) % 2 == 0) ? p : -p;
    }
    return {corr, weight};
}

}  // namespace

double branch_probability(const SettingsBehavior &sb, int branch) {
    if (branch != 1 && branch != -1) {
        throw ValidationError("branch must be +1 or -1");
    }
    return conditioned_ab(sb.at({0, 0, 1, 1}), branch).second;
}

double conditioned_chsh(const SettingsBehavior &sb, int branch, const ChshVariant &variant) {
    if (branch != 1 && branch != -1) {
        throw ValidationError("branch must be +1 or -1");
    }
    if (sb.parties().size() != 4 || sb.setting_arities()[0] < 2 || sb.setting_arities()[1] < 2 ||
        sb.setting_arities()[2] < 2 || sb.setting_arities()[3] < 2) {
        throw ValidationError("conditioned CHSH needs settings 0 and 1 for A and B and setting 1 for C and D");
    }
    std::array<double, 4> e{};
    for (int x = 0; x < 2; ++x) {
        for (int y = 0; y < 2; ++y) {
            const auto [corr, weight] = conditioned_ab(sb.at({x, y, 1, 1}), branch);
            if (weight <= 1e-15) {
                throw ValidationError("branch C1*D1 = " + std::to_string(branch) + " has zero probability");
            }
            e[static_cast<size_t>(2 * x + y)] = corr / weight;
        }
    }
    return chsh_of(e, variant);
}

Ineq2Report ineq2_from_terms(const Ineq2Terms &t, const ChshVariant &plus, const ChshVariant &minus) {
    Ineq2Report r;
    r.p_plus = (1.0 + t.cd11) / 2.0;
    r.p_minus = (1.0 - t.cd11) / 2.0;
    if (r.p_plus <= 1e-15 || r.p_minus <= 1e-15) {
        throw ValidationError("a C1*D1 branch has zero probability");
    }
    std::array<double, 4> ep{}, em{};
    for (size_t i = 0; i < 4; ++i) {
        ep[i] = (t.ab[i] + t.abcd[i]) / (2.0 * r.p_plus);
        em[i] = (t.ab[i] - t.abcd[i]) / (2.0 * r.p_minus);
    }
    r.chsh_plus = chsh_of(ep, plus);
    r.chsh_minus = chsh_of(em, minus);
    r.sigma = t.a0b2 + t.b2c0 + t.c0d0;
    const double chain = 3.0 * r.sigma - 8.0;
    r.lhs = r.chsh_minus * r.chsh_minus + r.chsh_plus * r.chsh_plus + 8.0 * chain * chain;
    r.precondition = std::abs(r.p_plus - r.p_minus) <= 1e-6;
    r.violated = r.precondition && r.lhs > r.bound;
    return r;
}

Ineq2Report eval_ineq2(const SettingsBehavior &sb, const ChshVariant &plus, const ChshVariant &minus) {
    require_ineq2_shape(sb);
    if (!plus.valid() || !minus.valid()) {
        throw ValidationError("CHSH variants need one or three negative signs");
    }
    const auto &p = sb.parties();
    Ineq2Terms t;
    for (int x = 0; x < 2; ++x) {
        for (int y = 0; y < 2; ++y) {
            const Behavior &b = sb.at({x, y, 1, 1});
            t.ab[static_cast<size_t>(2 * x + y)] = b.correlator({p[0], p[1]});
            t.abcd[static_cast<size_t>(2 * x + y)] = b.correlator({p[0], p[1], p[2], p[3]});
        }
    }
    t.cd11 = sb.at({0, 0, 1, 1}).correlator({p[2], p[3]});
    t.a0b2 = sb.at({0, 2, 0, 0}).correlator({p[0], p[1]});
    t.b2c0 = sb.at({0, 2, 0, 0}).correlator({p[1], p[2]});
    t.c0d0 = sb.at({0, 0, 0, 0}).correlator({p[2], p[3]});
    return ineq2_from_terms(t, plus, minus);
}

namespace {

const std::vector<std::pair<std::string, int>> &ghz_layout() {
    static const std::vector<std::pair<std::string, int>> layout{{"A", 2}, {"B", 3}, {"C", 2}, {"D", 2}};
    return layout;
}

}  // namespace

SettingsMap MeasurementSettings::families() const {
    SettingsMap out;
    for (const auto &[party, list] : parties) {
        for (const auto &s : list) {
            if (!std::isfinite(s.theta) || !std::isfinite(s.phi)) {
                throw ValidationError("measurement angles must be finite");
            }
            out[party].push_back(bloch_measurement(s.theta, s.phi));
        }
    }
    return out;
}

std::vector<double> MeasurementSettings::to_params() const {
    std::vector<double> out;
    for (const auto &[party, count] : ghz_layout()) {
        const auto &list = parties.at(party);
        if (static_cast<int>(list.size()) != count) {
            throw ValidationError("settings layout must be A:2, B:3, C:2, D:2");
        }
        for (const auto &s : list) {
            out.push_back(s.theta);
            out.push_back(s.phi);
        }
    }
    return out;
}

MeasurementSettings MeasurementSettings::from_params(const std::vector<double> &params) {
    MeasurementSettings m;
    size_t k = 0;
    for (const auto &[party, count] : ghz_layout()) {
        for (int i = 0; i < count; ++i) {
            m.parties[party].push_back({params.at(k), params.at(k + 1)});
            k += 2;
        }
    }
    return m;
}

MeasurementSettings documented_ghz_settings() {
    const double q = M_PI / 4, h = M_PI / 2;
    MeasurementSettings m;
    m.parties["A"] = {{0, 0}, {h, 0}};
    m.parties["B"] = {{q, 0}, {-q, 0}, {0, 0}};
    m.parties["C"] = {{0, 0}, {h, 0}};
    m.parties["D"] = {{0, 0}, {h, 0}};
    return m;
}

QuantumRealization ghz4_realization(double v) {
    QuantumRealization r = trivial_realization(ghz4_circuit());
    if (v == 1.0) {
        r.sources["ABCD"] = SourceState::from_vector(ghz4());
    } else {
        r.sources["ABCD"] = SourceState::from_density(noisy_ghz4(v));
    }
    return r;
}

SettingsBehavior ghz4_settings_behavior(double v, const MeasurementSettings &settings) {
    return simulate_settings(ghz4_circuit(), ghz4_realization(v), settings.families());
}

namespace {

/// Entries of a Bloch observable: O00, O11, O01, O10 (trace zero).
struct Obs2 {
    Complex o00, o11, o01, o10;
};

Obs2 obs_of(const BlochSetting &s) {
    const double c = std::cos(s.theta), sn = std::sin(s.theta);
    return {c, -c, sn * Complex(std::cos(s.phi), -std::sin(s.phi)), sn * Complex(std::cos(s.phi), std::sin(s.phi))};
}

/// <O_1 x ... x O_4> on noisy GHZ with nullptr meaning the identity.
double ghz_expectation(double v, const std::array<const Obs2 *, 4> &ops) {
    Complex d0 = 1, d1 = 1, u = 1, l = 1;
    bool all = true;
    bool any = false;
    for (const Obs2 *o : ops) {
        if (!o) {
            all = false;
            continue;
        }
        any = true;
        d0 *= o->o00;
        d1 *= o->o11;
        u *= o->o01;
        l *= o->o10;
    }
    const Complex off = all ? u + l : Complex(0);
    const double pure = 0.5 * (d0 + d1 + off).real();
    // Bloch observables are traceless, so white noise only feeds the identity.
    return v * pure + (any ? 0.0 : 1.0 - v);
}

}  // namespace

Ineq2Terms noisy_ghz_terms(double v, const MeasurementSettings &settings) {
    const auto &a = settings.parties.at("A");
    const auto &b = settings.parties.at("B");
    const auto &c = settings.parties.at("C");
    const auto &d = settings.parties.at("D");
    if (a.size() != 2 || b.size() != 3 || c.size() != 2 || d.size() != 2) {
        throw ValidationError("settings layout must be A:2, B:3, C:2, D:2");
    }
    const Obs2 A[2] = {obs_of(a[0]), obs_of(a[1])};
    const Obs2 B[3] = {obs_of(b[0]), obs_of(b[1]), obs_of(b[2])};
    const Obs2 C[2] = {obs_of(c[0]), obs_of(c[1])};
    const Obs2 D[2] = {obs_of(d[0]), obs_of(d[1])};
    Ineq2Terms t;
    for (int x = 0; x < 2; ++x) {
        for (int y = 0; y < 2; ++y) {
            t.ab[static_cast<size_t>(2 * x + y)] = ghz_expectation(v, {&A[x], &B[y], nullptr, nullptr});
            t.abcd[static_cast<size_t>(2 * x + y)] = ghz_expectation(v, {&A[x], &B[y], &C[1], &D[1]});
        }
    }
    t.cd11 = ghz_expectation(v, {nullptr, nullptr, &C[1], &D[1]});
    t.a0b2 = ghz_expectation(v, {&A[0], &B[2], nullptr, nullptr});
    t.b2c0 = ghz_expectation(v, {nullptr, &B[2], &C[0], nullptr});
    t.c0d0 = ghz_expectation(v, {nullptr, nullptr, &C[0], &D[0]});
    return t;
}

namespace {

constexpr double kBranchPenalty = 100.0;

double ineq2_objective(double v, const std::vector<double> &params, const ChshVariant &plus,
                       const ChshVariant &minus) {
    const Ineq2Terms t = noisy_ghz_terms(v, MeasurementSettings::from_params(params));
    const double pp = (1.0 + t.cd11) / 2.0, pm = (1.0 - t.cd11) / 2.0;
    std::array<double, 4> ep{}, em{};
    for (size_t i = 0; i < 4; ++i) {
        ep[i] = pp > 1e-12 ? (t.ab[i] + t.abcd[i]) / (2.0 * pp) : 0.0;
        em[i] = pm > 1e-12 ? (t.ab[i] - t.abcd[i]) / (2.0 * pm) : 0.0;
    }
    const double cp = chsh_of(ep, plus), cm = chsh_of(em, minus);
    const double chain = 3.0 * (t.a0b2 + t.b2c0 + t.c0d0) - 8.0;
    // The signed square keeps the chain term increasing in Sigma, so the
    // search cannot gain by driving Sigma below 8/3.
    return cp * cp + cm * cm + 8.0 * chain * std::abs(chain) - kBranchPenalty * t.cd11 * t.cd11;
}

}  // namespace

ThresholdPoint optimize_ineq2(double v, const ThresholdOptions &options) {
    if (!(v >= 0 && v <= 1)) {
        throw ValidationError("visibility must lie in [0, 1]");
    }
    const Objective f = [&](std::span<const double> x) {
        return ineq2_objective(v, std::vector<double>(x.begin(), x.end()), options.plus, options.minus);
    };
    auto start = [](Rng &rng, int) {
        std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
        std::vector<double> x(18);
        for (auto &a : x) {
            a = angle(rng);
        }
        return x;
    };
    const OptimizationResult best = multistart_maximize(f, start, options.optimizer);
    ThresholdPoint point;
    point.v = v;
    point.settings = MeasurementSettings::from_params(best.x);
    point.report = ineq2_from_terms(noisy_ghz_terms(v, point.settings), options.plus, options.minus);
    point.violated = point.report.precondition && 3.0 * point.report.sigma >= 8.0 && point.report.lhs > 16.0;
    return point;
}

ThresholdReport visibility_threshold(const ThresholdOptions &options) {
    if (!(options.v_min < options.v_max) || options.v_min < 0 || options.v_max > 1 || options.bracket <= 0) {
        throw ValidationError("bad visibility window");
    }
    std::vector<ThresholdPoint> points;
    auto probe = [&](double v) -> const ThresholdPoint & {
        points.push_back(optimize_ineq2(v, options));
        return points.back();
    };
    ThresholdReport report;
    double lo = options.v_min, hi = options.v_max;
    const ThresholdPoint top = probe(hi);
    if (!top.violated) {
        throw SolverError("no violation found at v = " + std::to_string(hi) + "; the optimizer is not converging");
    }
    report.settings = top.settings;
    if (probe(lo).violated) {
        hi = lo;
        report.settings = points.back().settings;
    }
    while (hi - lo > options.bracket) {
        const double mid = 0.5 * (lo + hi);
        const ThresholdPoint &p = probe(mid);
        if (p.violated) {
            hi = mid;
            report.settings = p.settings;
        } else {
            lo = mid;
        }
    }
    report.bracket_low = lo;
    report.bracket_high = hi;
    report.v_star = 0.5 * (lo + hi);
    if (options.grid_step > 0) {
        const int n = static_cast<int>(std::floor((options.v_max - options.v_min) / options.grid_step + 1e-9));
        for (int k = 0; k <= n; ++k) {
            const double v = round_sig(options.v_min + k * options.grid_step, 12);
            const bool seen = std::any_of(points.begin(), points.end(),
                                          [&](const ThresholdPoint &p) { return std::abs(p.v - v) < 1e-12; });
            if (!seen) {
                probe(v);
            }
        }
    }
    std::sort(points.begin(), points.end(), [](const ThresholdPoint &a, const ThresholdPoint &b) { return a.v < b.v; });
    report.curve = std::move(points);
    return report;
}

std::string threshold_csv(const std::vector<ThresholdPoint> &curve) {
    std::ostringstream os;
    os << "v,lhs,chsh_minus,chsh_plus,sigma,violated\n";
    auto num = [](double x) { return number(x).dump(); };
    for (const auto &p : curve) {
        os << num(p.v) << ',' << num(p.report.lhs) << ',' << num(p.report.chsh_minus) << ','
           << num(p.report.chsh_plus) << ',' << num(p.report.sigma) << ',' << (p.violated ? "true" : "false")
           << '\n';
    }
    return os.str();
}

double chsh_tsirelson_calibration(const CalibrationOptions &options) {
    ComplexVector bell = ComplexVector::Zero(4);
    bell(0) = bell(3) = 1.0 / std::sqrt(2.0);
    auto observable = [&](const double *p) -> ComplexMatrix {
        if (options.classical) {
            ComplexMatrix m = ComplexMatrix::Zero(2, 2);
            m(0, 0) = std::cos(p[0]);
            m(1, 1) = std::cos(p[1]);
            return m;
        }
        return bloch_observable(p[0], p[1]);
    };
    const Objective f = [&](std::span<const double> x) {
        const ComplexMatrix a0 = observable(&x[0]), a1 = observable(&x[2]);
        const ComplexMatrix b0 = observable(&x[4]), b1 = observable(&x[6]);
        auto e = [&](const ComplexMatrix &a, const ComplexMatrix &b) {
            return (bell.adjoint() * kron(a, b) * bell)(0).real();
        };
        return e(a0, b0) + e(a0, b1) + e(a1, b0) - e(a1, b1);
    };
    auto start = [](Rng &rng, int) {
        std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
        std::vector<double> x(8);
        for (auto &a : x) {
            a = angle(rng);
        }
        return x;
    };
    OptimizerOptions opt;
    opt.restarts = options.restarts;
    opt.iterations = options.iterations;
    opt.seed = options.seed;
    return multistart_maximize(f, start, opt).value;
}

}  // namespace coordcert
