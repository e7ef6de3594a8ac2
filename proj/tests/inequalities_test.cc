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

#include <cmath>

#include "coordcert/errors.h"
#include "gtest/gtest.h"

using namespace coordcert;

namespace {

const double kSqrt2 = std::sqrt(2.0);

Behavior flip_all(const Behavior &b) {
    std::vector<double> p(b.size());
    for (size_t i = 0; i < b.size(); ++i) {
        p[b.size() - 1 - i] = b.probabilities()[i];
    }
    return Behavior(b.parties(), b.arities(), p);
}

Behavior random_binary_behavior(Rng &rng) {
    std::exponential_distribution<double> e(1.0);
    std::vector<double> p(16);
    double total = 0;
    for (auto &x : p) {
        x = e(rng);
        total += x;
    }
    for (auto &x : p) {
        x /= total;
    }
    return Behavior({"A", "B", "C", "D"}, {2, 2, 2, 2}, p);
}

SettingsBehavior constant_settings_behavior(const std::vector<int> &arities, const Behavior &b) {
    size_t n = 1;
    for (int a : arities) {
        n *= static_cast<size_t>(a);
    }
    return SettingsBehavior(b.parties(), arities, std::vector<Behavior>(n, b));
}

/// Random qubit settings of the requested layout.
MeasurementSettings random_settings(Rng &rng) {
    std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
    std::vector<double> x(18);
    for (auto &a : x) {
        a = angle(rng);
    }
    return MeasurementSettings::from_params(x);
}

/// Tr(rho O) for rho = v |GHZ><GHZ| + (1 - v) I / 16 built from scratch.
double ghz_oracle(double v, const ComplexMatrix &op) {
    ComplexMatrix rho = ComplexMatrix::Identity(16, 16) * ((1.0 - v) / 16.0);
    rho(0, 0) += v / 2;
    rho(15, 15) += v / 2;
    rho(0, 15) += v / 2;
    rho(15, 0) += v / 2;
    return (rho * op).trace().real();
}

ComplexMatrix kron4(const ComplexMatrix &a, const ComplexMatrix &b, const ComplexMatrix &c, const ComplexMatrix &d) {
    return kron(kron(a, b), kron(c, d));
}

/// Conditioned <A B | C D = s> on noisy GHZ with explicit observables.
double oracle_conditioned(double v, const ComplexMatrix &a, const ComplexMatrix &b, const ComplexMatrix &c,
                          const ComplexMatrix &d, int s) {
    const ComplexMatrix id = ComplexMatrix::Identity(2, 2);
    const ComplexMatrix event = (kron4(id, id, id, id) + s * kron4(id, id, c, d)) / 2.0;
    return ghz_oracle(v, kron4(a, b, id, id) * event) / ghz_oracle(v, event);
}

/// Relabels C's outcome at setting 1, which swaps the C1 D1 branches.
SettingsBehavior flip_c_at_setting_one(const SettingsBehavior &sb) {
    std::vector<Behavior> table;
    for (size_t k = 0; k < sb.table().size(); ++k) {
        const Behavior &b = sb.table()[k];
        const int xc = static_cast<int>((k / 2) % 2);
        if (xc != 1) {
            table.push_back(b);
            continue;
        }
        std::vector<double> p(b.size());
        for (size_t i = 0; i < b.size(); ++i) {
            p[i ^ 2u] = b.probabilities()[i];
        }
        table.emplace_back(b.parties(), b.arities(), p);
    }
    return SettingsBehavior(sb.parties(), sb.setting_arities(), table);
}

}  // namespace

TEST(Ineq1Test, SharedRandomBitViolates) {
    const Ineq1Report r = eval_ineq1(shared_random_bit());
    EXPECT_NEAR(r.lhs, 3.0, 1e-12);
    EXPECT_NEAR(r.rhs, 3.0 * std::sqrt(3.0) / 2.0, 1e-12);
    EXPECT_NEAR(r.violation, 3.0 - 3.0 * std::sqrt(3.0) / 2.0, 1e-12);
    EXPECT_TRUE(r.violated);
}

TEST(Ineq1Test, UniformBitsDoNotViolate) {
    const Ineq1Report r = eval_ineq1(uniform_binary());
    EXPECT_NEAR(r.lhs, 0.0, 1e-12);
    EXPECT_FALSE(r.violated);
}

TEST(Ineq1Test, DeterministicOutcomeDoesNotViolate) {
    const Ineq1Report r = eval_ineq1(deterministic_zero());
    EXPECT_NEAR(r.lhs, 3.0, 1e-12);
    EXPECT_NEAR(r.rhs, 0.5 + 3.0 * std::sqrt(3.0) / 2.0, 1e-12);
    EXPECT_FALSE(r.violated);
}

TEST(Ineq1Test, RejectsNonBinary) {
    std::vector<double> p(24, 1.0 / 24);
    EXPECT_THROW(eval_ineq1(Behavior({"A", "B", "C", "D"}, {3, 2, 2, 2}, p)), ValidationError);
}

TEST(Ineq1Test, ToleranceControlsViolatedFlag) {
    const Ineq1Report r = eval_ineq1(shared_random_bit(), 0.5);
    EXPECT_FALSE(r.violated);
}

TEST(Ineq1Test, InvariantUnderGlobalRelabeling) {
    Rng rng(3);
    for (int t = 0; t < 50; ++t) {
        const Behavior b = random_binary_behavior(rng);
        const Ineq1Report r = eval_ineq1(b);
        const Ineq1Report f = eval_ineq1(flip_all(b));
        EXPECT_NEAR(r.lhs, f.lhs, 1e-12);
        EXPECT_NEAR(r.rhs, f.rhs, 1e-12);
    }
}

TEST(Ineq1Test, RandomFig1RealizationsRespectBound) {
    Rng rng(11);
    const CausalCircuit fig1 = fig1_circuit();
    for (int t = 0; t < 60; ++t) {
        const CausalCircuit c = with_random_dims(fig1, 1, 3, rng, 4096);
        const QuantumRealization r = random_realization(c, rng);
        const Behavior b = simulate(c, r);
        EXPECT_FALSE(eval_ineq1(b).violated) << "trial " << t;
        EXPECT_FALSE(is_perfect_coordination(b, 1e-6));
    }
}

TEST(ChshVariantTest, ParsesBothForms) {
    EXPECT_EQ(ChshVariant::parse("++-+"), default_variant_minus());
    EXPECT_EQ(ChshVariant::parse("+,+,+,-"), default_variant_plus());
    EXPECT_EQ(ChshVariant::parse("(-,-,-,+)").to_string(), "---+");
}

TEST(ChshVariantTest, RejectsNonFacets) {
    EXPECT_THROW(ChshVariant::parse("++++"), ValidationError);
    EXPECT_THROW(ChshVariant::parse("++--"), ValidationError);
    EXPECT_THROW(ChshVariant::parse("+++"), ValidationError);
    EXPECT_THROW(ChshVariant::parse("++-+x"), ValidationError);
    EXPECT_FALSE((ChshVariant{{1, 1, 1, 0}}).valid());
}

TEST(ConditionedChshTest, GhzReachesTsirelsonOnBothBranches) {
    const SettingsBehavior sb = ghz4_settings_behavior(1.0, documented_ghz_settings());
    EXPECT_NEAR(conditioned_chsh(sb, 1, default_variant_plus()), 2 * kSqrt2, 1e-8);
    EXPECT_NEAR(conditioned_chsh(sb, -1, default_variant_minus()), 2 * kSqrt2, 1e-8);
}

TEST(ConditionedChshTest, MatchesExplicitOracle) {
    const ComplexMatrix z = pauli_z(), x = pauli_x();
    const ComplexMatrix a[2] = {z, x};
    const ComplexMatrix b[2] = {(z + x) / kSqrt2, (z - x) / kSqrt2};
    for (double v : {1.0, 0.95, 0.5}) {
        const SettingsBehavior sb = ghz4_settings_behavior(v, documented_ghz_settings());
        for (int s : {1, -1}) {
            const ChshVariant var = s == 1 ? default_variant_plus() : default_variant_minus();
            double expected = 0;
            for (int i = 0; i < 2; ++i) {
                for (int j = 0; j < 2; ++j) {
                    expected += var.signs[static_cast<size_t>(2 * i + j)] * oracle_conditioned(v, a[i], b[j], x, x, s);
                }
            }
            EXPECT_NEAR(conditioned_chsh(sb, s, var), expected, 1e-10);
        }
    }
}

TEST(ConditionedChshTest, FullyMixedGivesZero) {
    const SettingsBehavior sb = ghz4_settings_behavior(0.0, documented_ghz_settings());
    EXPECT_NEAR(conditioned_chsh(sb, 1, default_variant_plus()), 0.0, 1e-12);
    EXPECT_NEAR(conditioned_chsh(sb, -1, default_variant_minus()), 0.0, 1e-12);
}

TEST(ConditionedChshTest, DeterministicAssignment) {
    const SettingsBehavior sb = constant_settings_behavior({2, 2, 2, 2}, deterministic_zero());
    EXPECT_NEAR(conditioned_chsh(sb, 1, default_variant_plus()), 2.0, 1e-12);
    EXPECT_THROW(conditioned_chsh(sb, -1, default_variant_minus()), ValidationError);
    EXPECT_THROW(conditioned_chsh(sb, 0, default_variant_plus()), ValidationError);
}

TEST(ConditionedChshTest, BoundedByFourForAnyBehavior) {
    Rng rng(5);
    for (int t = 0; t < 30; ++t) {
        std::vector<Behavior> table;
        for (int k = 0; k < 16; ++k) {
            table.push_back(random_binary_behavior(rng));
        }
        const SettingsBehavior sb({"A", "B", "C", "D"}, {2, 2, 2, 2}, table);
        for (int s : {1, -1}) {
            EXPECT_LE(std::abs(conditioned_chsh(sb, s, default_variant_plus())), 4.0 + 1e-12);
        }
    }
}

TEST(ConditionedChshTest, QuantumBehaviorsRespectTsirelson) {
    Rng rng(8);
    const CausalCircuit c = ghz4_circuit();
    for (int t = 0; t < 30; ++t) {
        const QuantumRealization r = random_realization(c, rng);
        SettingsMap settings;
        for (const char *p : {"A", "B", "C", "D"}) {
            for (int k = 0; k < 2; ++k) {
                settings[p].push_back(random_binary_measurement(2, 1, rng));
            }
        }
        const SettingsBehavior sb = simulate_settings(c, r, settings);
        for (int s : {1, -1}) {
            for (const auto &var : {default_variant_plus(), default_variant_minus()}) {
                EXPECT_LE(std::abs(conditioned_chsh(sb, s, var)), 2 * kSqrt2 + 1e-6);
            }
        }
    }
}

TEST(Ineq2Test, IdealGhzValue) {
    const Ineq2Report r = eval_ineq2(ghz4_settings_behavior(1.0, documented_ghz_settings()));
    EXPECT_NEAR(r.sigma, 3.0, 1e-9);
    EXPECT_NEAR(r.chsh_plus, 2 * kSqrt2, 1e-9);
    EXPECT_NEAR(r.chsh_minus, 2 * kSqrt2, 1e-9);
    EXPECT_NEAR(r.lhs, 24.0, 1e-6);
    EXPECT_NEAR(r.p_plus, 0.5, 1e-12);
    EXPECT_TRUE(r.precondition);
    EXPECT_TRUE(r.violated);
    EXPECT_EQ(r.bound, 16.0);
}

TEST(Ineq2Test, NoisyGhzFollowsClosedForm) {
    for (double v : {0.85, 0.9, 0.9417, 0.97}) {
        const Ineq2Report r = eval_ineq2(ghz4_settings_behavior(v, documented_ghz_settings()));
        const double chain = 9 * v - 8;
        EXPECT_NEAR(r.lhs, 16 * v * v + 8 * chain * chain, 1e-9) << v;
    }
    EXPECT_NEAR(eval_ineq2(ghz4_settings_behavior(0.9417, documented_ghz_settings())).lhs, 16.0, 0.1);
    const Ineq2Report r = eval_ineq2(ghz4_settings_behavior(0.9, documented_ghz_settings()));
    EXPECT_NEAR(r.lhs, 13.0, 0.05);
    EXPECT_FALSE(r.violated);
}

TEST(Ineq2Test, FixedSettingsCrossSixteenNearThreshold) {
    const MeasurementSettings s = documented_ghz_settings();
    EXPECT_LT(eval_ineq2(ghz4_settings_behavior(0.93, s)).lhs, 16.0);
    EXPECT_GT(eval_ineq2(ghz4_settings_behavior(0.95, s)).lhs, 16.0);
}

TEST(Ineq2Test, PreconditionGatesViolation) {
    Ineq2Terms t;
    t.cd11 = 0.1;
    t.a0b2 = t.b2c0 = t.c0d0 = 0.0;
    const Ineq2Report r = ineq2_from_terms(t, default_variant_plus(), default_variant_minus());
    EXPECT_GT(r.lhs, 16.0);
    EXPECT_FALSE(r.precondition);
    EXPECT_FALSE(r.violated);
}

TEST(Ineq2Test, RejectsBadShapes) {
    const SettingsBehavior wrong = constant_settings_behavior({2, 2, 2, 2}, uniform_binary());
    EXPECT_THROW(eval_ineq2(wrong), ValidationError);
    const SettingsBehavior zero = constant_settings_behavior({2, 3, 2, 2}, deterministic_zero());
    EXPECT_THROW(eval_ineq2(zero), ValidationError);
}

TEST(Ineq2Test, BranchExchangeInvariance) {
    Rng rng(21);
    for (int t = 0; t < 20; ++t) {
        std::uniform_real_distribution<double> u(0.3, 1.0);
        const double v = u(rng);
        const SettingsBehavior sb = ghz4_settings_behavior(v, random_settings(rng));
        const ChshVariant plus = ChshVariant::parse("-+++");
        const ChshVariant minus = ChshVariant::parse("+-++");
        const Ineq2Report a = eval_ineq2(sb, plus, minus);
        const Ineq2Report b = eval_ineq2(flip_c_at_setting_one(sb), minus, plus);
        EXPECT_NEAR(a.lhs, b.lhs, 1e-9);
        EXPECT_NEAR(a.p_plus, b.p_minus, 1e-12);
    }
}

TEST(Ineq2Test, ClosedFormTermsMatchSimulator) {
    Rng rng(34);
    for (int t = 0; t < 20; ++t) {
        std::uniform_real_distribution<double> u(0.0, 1.0);
        const double v = u(rng);
        const MeasurementSettings s = random_settings(rng);
        const SettingsBehavior sb = ghz4_settings_behavior(v, s);
        const Ineq2Terms terms = noisy_ghz_terms(v, s);
        try {
            const Ineq2Report slow = eval_ineq2(sb);
            const Ineq2Report fast = ineq2_from_terms(terms, default_variant_plus(), default_variant_minus());
            EXPECT_NEAR(slow.lhs, fast.lhs, 1e-8);
            EXPECT_NEAR(slow.sigma, fast.sigma, 1e-10);
            EXPECT_NEAR(slow.p_plus, fast.p_plus, 1e-10);
        } catch (const ValidationError &) {
            ADD_FAILURE() << "zero-probability branch for random settings";
        }
    }
}

TEST(SettingsTest, ParamsRoundTrip) {
    const MeasurementSettings s = documented_ghz_settings();
    const std::vector<double> x = s.to_params();
    ASSERT_EQ(x.size(), 18u);
    EXPECT_EQ(MeasurementSettings::from_params(x).to_params(), x);
    MeasurementSettings bad = s;
    bad.parties["B"].pop_back();
    EXPECT_THROW(bad.to_params(), ValidationError);
    bad = s;
    bad.parties["A"][0].theta = NAN;
    EXPECT_THROW(bad.families(), ValidationError);
}

TEST(ThresholdTest, OptimizedIdealGhzViolates) {
    const ThresholdPoint p = optimize_ineq2(1.0, ThresholdOptions{});
    EXPECT_GE(p.report.lhs, 24.0 - 1e-6);
    EXPECT_TRUE(p.violated);
}

TEST(ThresholdTest, DefaultThresholdAndMonotoneCurve) {
    const ThresholdReport r = visibility_threshold(ThresholdOptions{});
    EXPECT_NEAR(r.v_star, 0.9417, 0.005);
    EXPECT_LE(r.bracket_high - r.bracket_low, 0.002 + 1e-12);
    for (const auto &p : r.curve) {
        if (p.v > r.v_star + 0.005) {
            EXPECT_GT(p.report.lhs, 16.0) << p.v;
            EXPECT_TRUE(p.violated);
        }
        if (p.v < r.v_star - 0.005 && p.v >= 0.85) {
            EXPECT_LT(p.report.lhs, 16.0) << p.v;
            EXPECT_FALSE(p.violated);
        }
    }
    const std::string csv = threshold_csv(r.curve);
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "v,lhs,chsh_minus,chsh_plus,sigma,violated");
    EXPECT_EQ(static_cast<size_t>(std::count(csv.begin(), csv.end(), '\n')), r.curve.size() + 1);
}

TEST(ThresholdTest, RejectsBadWindow) {
    ThresholdOptions o;
    o.v_min = 0.99;
    o.v_max = 0.9;
    EXPECT_THROW(visibility_threshold(o), ValidationError);
    EXPECT_THROW(optimize_ineq2(1.5, ThresholdOptions{}), ValidationError);
}

TEST(ThresholdTest, ThrowsWhenNothingViolates) {
    ThresholdOptions o;
    o.v_min = 0.5;
    o.v_max = 0.6;
    o.optimizer.restarts = 2;
    o.optimizer.iterations = 20;
    EXPECT_THROW(visibility_threshold(o), SolverError);
}

TEST(CalibrationTest, QuantumReachesTsirelson) {
    EXPECT_NEAR(chsh_tsirelson_calibration(), 2 * kSqrt2, 1e-6);
}

TEST(CalibrationTest, ClassicalStaysBelowTwo) {
    CalibrationOptions o;
    o.classical = true;
    EXPECT_LE(chsh_tsirelson_calibration(o), 2.0 + 1e-9);
}

TEST(CalibrationTest, ZeroIterationsStaysQuantum) {
    CalibrationOptions o;
    o.iterations = 0;
    EXPECT_LE(chsh_tsirelson_calibration(o), 2 * kSqrt2 + 1e-9);
}

TEST(CoordinationTest, ScoreOfFixtures) {
    EXPECT_NEAR(coordination_score(shared_random_bit()), 1.0, 1e-12);
    EXPECT_NEAR(coordination_score(uniform_binary()), 0.125, 1e-12);
    EXPECT_NEAR(coordination_score(deterministic_zero()), 0.5, 1e-12);
}

TEST(CoordinationTest, SmallSearchIsDeterministicAndBelowOne) {
    SearchOptions o;
    o.restarts = 2;
    o.iterations = 5;
    o.seed = 7;
    const SearchResult a = max_coordination_search(o);
    const SearchResult b = max_coordination_search(o);
    EXPECT_EQ(a.score, b.score);
    EXPECT_LT(a.score, 1.0 - 1e-3);
    EXPECT_FALSE(eval_ineq1(a.behavior).violated);
    validate_realization(fig1_circuit(), a.realization);
}

TEST(CoordinationTest, RejectsUnsupportedOptions) {
    SearchOptions o;
    o.wire_dim = 1;
    EXPECT_THROW(max_coordination_search(o), ValidationError);
    o.wire_dim = 2;
    o.restarts = 0;
    EXPECT_THROW(max_coordination_search(o), ValidationError);
}
