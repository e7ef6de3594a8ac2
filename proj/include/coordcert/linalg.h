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

#ifndef COORDCERT_LINALG_H
#define COORDCERT_LINALG_H

#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace coordcert {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Tolerance tiers. Construction checks (normalization, unitarity,
/// projector algebra) use kConstructionTol; statements about simulated
/// statistics use kBehaviorTol; claims that come out of an optimizer use
/// kOptimizationTol.
inline constexpr double kConstructionTol = 1e-10;
inline constexpr double kBehaviorTol = 1e-8;
inline constexpr double kOptimizationTol = 1e-4;

/// Deterministic generator used everywhere randomness is needed.
using Rng = std::mt19937_64;

bool is_hermitian(const ComplexMatrix &m, double tol = kConstructionTol);
bool is_unitary(const ComplexMatrix &m, double tol = kConstructionTol);
bool is_projector(const ComplexMatrix &m, double tol = kConstructionTol);
/// Hermitian, unit trace and positive semidefinite within tol.
bool is_density(const ComplexMatrix &m, double tol = kConstructionTol);

/// Checks a projector family: Hermitian idempotent members, pairwise
/// orthogonal, summing to the identity.
bool is_projector_family(std::span<const ComplexMatrix> family, double tol = kConstructionTol);

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b);
ComplexVector kron(const ComplexVector &a, const ComplexVector &b);

/// Smallest eigenvalue of a Hermitian matrix.
double min_eigenvalue(const ComplexMatrix &m);
double min_eigenvalue(const RealMatrix &m);

ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();

/// Observable n.sigma for the Bloch direction (theta, phi).
ComplexMatrix bloch_observable(double theta, double phi);

/// Binary qubit measurement {(I + n.sigma)/2, (I - n.sigma)/2}.
std::vector<ComplexMatrix> bloch_measurement(double theta, double phi);

/// Computational-basis projector family on a d-dimensional space.
std::vector<ComplexMatrix> computational_measurement(int dim);

/// Binary measurement {P, I - P} where P projects onto the first `rank`
/// computational basis states.
std::vector<ComplexMatrix> binary_computational_measurement(int dim, int rank);

/// Haar-random unitary (QR of a complex Ginibre matrix with phase fix).
ComplexMatrix random_unitary(int dim, Rng &rng);

/// Haar-random unit vector.
ComplexVector random_state(int dim, Rng &rng);

/// Random binary measurement {P, I - P} with P a Haar-random rank-`rank`
/// projector.
std::vector<ComplexMatrix> random_binary_measurement(int dim, int rank, Rng &rng);

/// exp(i H) for Hermitian H.
ComplexMatrix exp_i_hermitian(const ComplexMatrix &h);

/// Hermitian matrix filled from dim*dim real parameters: the diagonal takes
/// the first dim values, then real and imaginary parts of the strict upper
/// triangle in row-major order.
ComplexMatrix hermitian_from_params(std::span<const double> params, int dim);

}  // namespace coordcert

#endif
