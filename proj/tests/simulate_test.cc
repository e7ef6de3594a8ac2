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

#include "coordcert/simulate.h"

#include <cmath>

#include "coordcert/errors.h"
#include "gtest/gtest.h"
#include "test_support.h"

using namespace coordcert;

namespace {

/// Binary computational measurement of the `which`-th of `n` qubit wires.
std::vector<ComplexMatrix> measure_qubit(int which, int n) {
    ComplexMatrix p0 = ComplexMatrix::Ones(1, 1);
    for (int k = 0; k < n; ++k) {
        ComplexMatrix f = ComplexMatrix::Identity(2, 2);
        if (k == which) {
            f(1, 1) = 0;
        }
        p0 = kron(p0, f);
    }
    const int d = 1 << n;
    return {p0, ComplexMatrix::Identity(d, d) - p0};
}

ComplexMatrix swap2() {
    ComplexMatrix s = ComplexMatrix::Zero(4, 4);
    s(0, 0) = s(3, 3) = s(1, 2) = s(2, 1) = 1;
    return s;
}

void expect_behaviors_near(const Behavior &a, const Behavior &b, double tol) {
    ASSERT_EQ(a.parties(), b.parties());
    ASSERT_EQ(a.size(), b.size());
    for (size_t i = 0; i < a.size(); ++i) {
        EXPECT_NEAR(a.probabilities()[i], b.probabilities()[i], tol) << i;
    }
}

}  // namespace

TEST(simulate, trivial_fig1_is_deterministic_zero) {
    const CausalCircuit c = fig1_circuit();
    const Behavior b = simulate(c, trivial_realization(c));
    EXPECT_NEAR(b.at({0, 0, 0, 0}), 1.0, 1e-12);
    EXPECT_NEAR(b.total(), 1.0, 1e-12);
}

TEST(simulate, ghz3_routed_through_fig1) {
    const CausalCircuit c = fig1_circuit();
    QuantumRealization r = trivial_realization(c);
    ComplexVector ghz3 = ComplexVector::Zero(8);
    ghz3(0) = ghz3(7) = 1.0 / std::sqrt(2.0);
    r.sources["ABC"] = SourceState::from_vector(ghz3);
    r.unitaries["AC"] = swap2();
    r.measurements["A"] = measure_qubit(0, 3);
    r.measurements["B"] = measure_qubit(1, 3);
    r.measurements["C"] = measure_qubit(0, 3);
    const Behavior b = simulate(c, r);
    EXPECT_NEAR(b.at({0, 0, 0, 0}), 0.5, 1e-12);
    EXPECT_NEAR(b.at({1, 1, 1, 0}), 0.5, 1e-12);
}

TEST(simulate, maximally_mixed_sources_give_uniform_behavior) {
    const CausalCircuit c = fig1_circuit();
    QuantumRealization r = trivial_realization(c);
    for (const auto &s : c.ids_of_kind(NodeKind::source)) {
        r.sources[s] = SourceState::from_density(ComplexMatrix::Identity(8, 8) / 8.0);
    }
    const Behavior b = simulate(c, r);
    for (double p : b.probabilities()) {
        EXPECT_NEAR(p, 1.0 / 16.0, 1e-12);
    }
}

TEST(simulate, matches_oracle_on_small_random_realizations) {
    Rng rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        const CausalCircuit c = with_random_dims(fig1_circuit(), 1, 2, rng, 64);
        const QuantumRealization r = random_realization(c, rng);
        const Behavior b = simulate(c, r);
        b.check();
        expect_behaviors_near(b, test_support::Oracle(c, r).behavior(), 1e-10);
    }
}

TEST(simulate, matches_oracle_on_random_dags) {
    Rng rng(23);
    int checked = 0;
    for (int trial = 0; trial < 200 && checked < 40; ++trial) {
        const CausalCircuit shape = test_support::random_dag(rng, 3, 3, 3);
        CausalCircuit c;
        try {
            c = with_random_dims(shape, 1, 2, rng, 64);
        } catch (const ValidationError &) {
            continue;
        }
        const QuantumRealization r = random_realization(c, rng);
        expect_behaviors_near(simulate(c, r), test_support::Oracle(c, r).behavior(), 1e-10);
        ++checked;
    }
    EXPECT_GE(checked, 20);
}

TEST(simulate, rejects_bad_realizations_naming_the_node) {
    const CausalCircuit c = fig1_circuit();
    QuantumRealization r = trivial_realization(c);
    r.unitaries["BC"](0, 0) = 2.0;
    try {
        simulate(c, r);
        FAIL();
    } catch (const ValidationError &e) {
        EXPECT_NE(std::string(e.what()).find("'BC'"), std::string::npos) << e.what();
    }
    r = trivial_realization(c);
    r.sources["ABD"] = SourceState::from_vector(ComplexVector::Zero(8));
    EXPECT_THROW(simulate(c, r), ValidationError);
    r = trivial_realization(c);
    r.measurements.erase("D");
    EXPECT_THROW(simulate(c, r), ValidationError);
    r = trivial_realization(c);
    r.unitaries["AB"] = ComplexMatrix::Identity(2, 2);
    EXPECT_THROW(simulate(c, r), ValidationError);
    r = trivial_realization(c);
    r.measurements["A"] = {ComplexMatrix::Identity(8, 8), ComplexMatrix::Identity(8, 8)};
    EXPECT_THROW(simulate(c, r), ValidationError);
}

TEST(simulate, output_dimensions_factor_correctly) {
    Rng rng(31);
    for (int trial = 0; trial < 50; ++trial) {
        const CausalCircuit c = with_random_dims(fig1_circuit(), 1, 3, rng);
        for (const auto &t : c.ids_of_kind(NodeKind::transformation)) {
            QuantumRealization empty;
            EXPECT_EQ(input_dim(c, empty, t), output_dim(c, empty, t));
        }
        for (const auto &w : c.wires()) {
            EXPECT_LE(w.dim, 3);
            EXPECT_GE(w.dim, 1);
        }
    }
}

TEST(ghz4, pure_and_noisy_states) {
    const ComplexVector g = ghz4();
    EXPECT_NEAR(g.norm(), 1.0, 1e-15);
    const ComplexMatrix r1 = noisy_ghz4(1.0);
    EXPECT_NEAR((r1 * r1).trace().real(), 1.0, 1e-12);
    const ComplexMatrix r0 = noisy_ghz4(0.0);
    EXPECT_NEAR((r0 * r0).trace().real(), 1.0 / 16.0, 1e-12);
    const ComplexMatrix rh = noisy_ghz4(0.5);
    EXPECT_TRUE(is_density(rh));
    EXPECT_NEAR((g.adjoint() * rh * g)(0).real(), 0.5 + 0.5 / 16.0, 1e-12);
    EXPECT_THROW(noisy_ghz4(1.1), ValidationError);
    EXPECT_THROW(noisy_ghz4(-0.1), ValidationError);
}

namespace {

QuantumRealization ghz_realization(double v) {
    QuantumRealization r = trivial_realization(ghz4_circuit());
    if (v == 1.0) {
        r.sources["ABCD"] = SourceState::from_vector(ghz4());
    } else {
        r.sources["ABCD"] = SourceState::from_density(noisy_ghz4(v));
    }
    return r;
}

}  // namespace

TEST(simulate_settings, identical_settings_give_identical_behaviors) {
    const CausalCircuit c = ghz4_circuit();
    const auto r = ghz_realization(1.0);
    SettingsMap s;
    for (const auto &p : c.measurement_ids()) {
        s[p] = {computational_measurement(2), computational_measurement(2)};
    }
    s["B"].push_back(computational_measurement(2));
    const auto sb = simulate_settings(c, r, s);
    EXPECT_EQ(sb.setting_arities(), (std::vector<int>{2, 3, 2, 2}));
    for (const auto &b : sb.table()) {
        expect_behaviors_near(b, sb.table().front(), 0.0);
        EXPECT_NEAR(b.at({0, 0, 0, 0}), 0.5, 1e-12);
        EXPECT_NEAR(b.at({1, 1, 1, 1}), 0.5, 1e-12);
    }
}

TEST(simulate_settings, no_signaling_with_mixed_bases) {
    const CausalCircuit c = ghz4_circuit();
    for (double v : {1.0, 0.7}) {
        const auto r = ghz_realization(v);
        SettingsMap s;
        for (const auto &p : c.measurement_ids()) {
            s[p] = {bloch_measurement(0, 0), bloch_measurement(M_PI / 2, 0)};
        }
        s["B"].push_back(bloch_measurement(M_PI / 4, 0.3));
        const auto sb = simulate_settings(c, r, s);
        EXPECT_LT(sb.signaling_violation(), 1e-10);
        const double a0 = sb.at({0, 0, 0, 0}).marginal({"A"}).probabilities()[0];
        const double a1 = sb.at({0, 0, 1, 0}).marginal({"A"}).probabilities()[0];
        EXPECT_NEAR(a0, a1, 1e-10);
        for (const auto &b : sb.table()) {
            b.check();
        }
    }
}

TEST(simulate_settings, missing_setting_is_an_error) {
    const CausalCircuit c = ghz4_circuit();
    SettingsMap s;
    s["A"] = {computational_measurement(2)};
    EXPECT_THROW(simulate_settings(c, ghz_realization(1.0), s), ValidationError);
}

TEST(heisenberg, identity_unitaries_give_embedded_projectors) {
    const CausalCircuit c = with_random_dims(fig1_circuit(), 1, 1, *std::make_unique<Rng>(1));
    // All wires trivial except a qubit from ABC through AB into A.
    CausalCircuit q;
    for (const auto &n : c.nodes()) {
        q.add_node(n.id, n.kind, n.outcomes);
    }
    for (const auto &w : c.wires()) {
        const bool live = w.id == "ABC->AB" || w.id == "AB->A";
        q.add_wire(w.from, w.to, live ? 2 : 1, w.id);
    }
    QuantumRealization r = trivial_realization(q);
    const auto proj = heisenberg_projectors(q, r, "A");
    ASSERT_EQ(proj.size(), 2u);
    EXPECT_LT((proj[0] - r.measurements["A"][0]).norm(), 1e-12);
}

TEST(heisenberg, random_projectors_are_valid_and_match_oracle) {
    Rng rng(41);
    for (int trial = 0; trial < 10; ++trial) {
        const CausalCircuit c = with_random_dims(fig1_circuit(), 1, 2, rng, 64);
        const QuantumRealization r = random_realization(c, rng);
        const HeisenbergPicture h(c, r);
        const test_support::Oracle oracle(c, r);
        std::map<std::string, std::vector<ComplexMatrix>> fam;
        for (const auto &p : c.measurement_ids()) {
            fam[p] = h.projectors(p);
            EXPECT_TRUE(is_projector_family(fam[p]));
            const auto ref = oracle.heisenberg(p);
            for (size_t o = 0; o < ref.size(); ++o) {
                EXPECT_LT((fam[p][o] - ref[o]).cwiseAbs().maxCoeff(), 1e-10);
            }
        }
        for (const auto &[p, fp] : fam) {
            for (const auto &[q, fq] : fam) {
                EXPECT_LT((fp[0] * fq[0] - fq[0] * fp[0]).norm(), 1e-10) << p << q;
            }
        }
    }
}

TEST(behavior, correlator_examples) {
    const auto s = correlators(shared_random_bit());
    EXPECT_DOUBLE_EQ(s.ab, 1);
    EXPECT_DOUBLE_EQ(s.bc, 1);
    EXPECT_DOUBLE_EQ(s.cd, 1);
    EXPECT_DOUBLE_EQ(s.a, 0);
    EXPECT_DOUBLE_EQ(s.d, 0);
    const auto d = correlators(deterministic_zero());
    for (double x : {d.a, d.b, d.c, d.d, d.ab, d.ac, d.ad, d.bc, d.bd, d.cd}) {
        EXPECT_DOUBLE_EQ(x, 1);
    }
    const auto u = correlators(uniform_binary());
    for (double x : {u.a, u.b, u.c, u.d, u.ab, u.ac, u.ad, u.bc, u.bd, u.cd}) {
        EXPECT_NEAR(x, 0, 1e-15);
    }
    EXPECT_THROW(correlators(Behavior({"A"}, {3}, {1, 0, 0})), ValidationError);
}

TEST(behavior, correlators_are_affine_in_mixtures) {
    Rng rng(8);
    const CausalCircuit c = fig1_circuit();
    for (int trial = 0; trial < 10; ++trial) {
        const Behavior x = simulate(c, random_realization(c, rng));
        const Behavior y = simulate(c, random_realization(c, rng));
        const double w = std::uniform_real_distribution<double>(0, 1)(rng);
        const auto m = correlators(x.mix(y, w));
        const auto cx = correlators(x);
        const auto cy = correlators(y);
        EXPECT_NEAR(m.ab, w * cx.ab + (1 - w) * cy.ab, 1e-12);
        EXPECT_NEAR(m.a, w * cx.a + (1 - w) * cy.a, 1e-12);
        EXPECT_NEAR(m.cd, w * cx.cd + (1 - w) * cy.cd, 1e-12);
    }
}

TEST(behavior, perfect_coordination_predicate) {
    EXPECT_TRUE(is_perfect_coordination(shared_random_bit(), 1e-9));
    EXPECT_FALSE(is_perfect_coordination(deterministic_zero(), 1e-9));
    EXPECT_FALSE(is_perfect_coordination(uniform_binary(), 1e-9));
}

TEST(behavior, indexing_and_checks) {
    const Behavior b = shared_random_bit();
    EXPECT_EQ(b.index_of(std::vector<int>{1, 0, 0, 0}), 8u);
    EXPECT_EQ(b.outcomes_of(5), (std::vector<int>{0, 1, 0, 1}));
    EXPECT_NO_THROW(b.check());
    EXPECT_THROW(Behavior({"A"}, {2}, {0.7, 0.7}).check(), ValidationError);
    EXPECT_THROW(Behavior({"A"}, {2}, {1.1, -0.1}).check(), ValidationError);
    EXPECT_THROW(Behavior({"A"}, {2}, {1.0}), ValidationError);
    EXPECT_EQ(b.marginal({"B", "D"}).probabilities(), (std::vector<double>{0.5, 0, 0, 0.5}));
}
