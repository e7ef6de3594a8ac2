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

#include "coordcert/linalg.h"

#include <cmath>

#include "gtest/gtest.h"

using namespace coordcert;

TEST(linalg, paulis_are_unitary_hermitian_and_anticommute) {
    for (const auto &p : {pauli_x(), pauli_y(), pauli_z()}) {
        EXPECT_TRUE(is_unitary(p));
        EXPECT_TRUE(is_hermitian(p));
    }
    EXPECT_LT((pauli_x() * pauli_z() + pauli_z() * pauli_x()).norm(), 1e-15);
    EXPECT_LT((pauli_x() * pauli_y() - Complex(0, 1) * pauli_z()).norm(), 1e-15);
}

TEST(linalg, kron_matches_block_layout) {
    ComplexMatrix a(2, 2);
    a << 1, 2, 3, 4;
    const ComplexMatrix b = pauli_x();
    const ComplexMatrix k = kron(a, b);
    EXPECT_EQ(k.rows(), 4);
    EXPECT_EQ(k(0, 1), Complex(1));
    EXPECT_EQ(k(1, 2), Complex(2));
    EXPECT_EQ(k(3, 2), Complex(4));
    ComplexVector u(2), v(3);
    u << 1, 2;
    v << 3, 4, 5;
    const ComplexVector w = kron(u, v);
    EXPECT_EQ(w(4), Complex(8));
}

TEST(linalg, bloch_measurement_is_a_projector_family) {
    for (double t : {0.0, 0.3, 1.2, M_PI}) {
        for (double f : {0.0, 0.7, 2.0}) {
            const auto fam = bloch_measurement(t, f);
            EXPECT_TRUE(is_projector_family(fam));
            const ComplexMatrix obs = fam[0] - fam[1];
            EXPECT_LT((obs - bloch_observable(t, f)).norm(), 1e-14);
        }
    }
    EXPECT_LT((bloch_observable(0, 0) - pauli_z()).norm(), 1e-15);
    EXPECT_LT((bloch_observable(M_PI / 2, 0) - pauli_x()).norm(), 1e-15);
}

TEST(linalg, predicates_reject_bad_matrices) {
    ComplexMatrix m(2, 2);
    m << 1, 1, 0, 1;
    EXPECT_FALSE(is_unitary(m));
    EXPECT_FALSE(is_hermitian(m));
    EXPECT_FALSE(is_projector(m));
    ComplexMatrix rho = ComplexMatrix::Identity(2, 2);
    EXPECT_FALSE(is_density(rho));
    rho /= 2.0;
    EXPECT_TRUE(is_density(rho));
    rho(0, 0) = 1.2;
    rho(1, 1) = -0.2;
    EXPECT_FALSE(is_density(rho));
    std::vector<ComplexMatrix> overlapping{ComplexMatrix::Identity(2, 2), ComplexMatrix::Identity(2, 2)};
    EXPECT_FALSE(is_projector_family(overlapping));
}

TEST(linalg, random_objects_are_valid) {
    Rng rng(7);
    for (int d = 1; d <= 6; ++d) {
        EXPECT_TRUE(is_unitary(random_unitary(d, rng)));
        EXPECT_NEAR(random_state(d, rng).norm(), 1.0, 1e-14);
        for (int r = 0; r <= d; ++r) {
            const auto fam = random_binary_measurement(d, r, rng);
            EXPECT_TRUE(is_projector_family(fam));
            EXPECT_NEAR(fam[0].trace().real(), r, 1e-10);
        }
    }
}

TEST(linalg, exp_of_hermitian_params_is_unitary) {
    Rng rng(3);
    std::normal_distribution<double> g;
    for (int d : {1, 2, 3, 4}) {
        std::vector<double> params(static_cast<size_t>(d * d));
        for (auto &p : params) {
            p = g(rng);
        }
        const ComplexMatrix h = hermitian_from_params(params, d);
        EXPECT_TRUE(is_hermitian(h, 0));
        EXPECT_TRUE(is_unitary(exp_i_hermitian(h)));
    }
    std::vector<double> zero(4, 0.0);
    EXPECT_LT((exp_i_hermitian(hermitian_from_params(zero, 2)) - ComplexMatrix::Identity(2, 2)).norm(), 1e-15);
}

TEST(linalg, min_eigenvalue) {
    RealMatrix m(2, 2);
    m << 1, 2, 2, 1;
    EXPECT_NEAR(min_eigenvalue(m), -1.0, 1e-14);
    EXPECT_NEAR(min_eigenvalue(ComplexMatrix(pauli_y())), -1.0, 1e-14);
}
