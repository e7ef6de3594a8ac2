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

namespace coordcert {

bool is_hermitian(const ComplexMatrix &m, double tol) {
    if (m.rows() != m.cols()) {
        return false;
    }
    return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

bool is_unitary(const ComplexMatrix &m, double tol) {
    if (m.rows() != m.cols()) {
        return false;
    }
    ComplexMatrix id = ComplexMatrix::Identity(m.rows(), m.cols());
    return (m.adjoint() * m - id).cwiseAbs().maxCoeff() <= tol;
}

bool is_projector(const ComplexMatrix &m, double tol) {
    return is_hermitian(m, tol) && (m * m - m).cwiseAbs().maxCoeff() <= tol;
}

bool is_density(const ComplexMatrix &m, double tol) {
    if (!is_hermitian(m, tol)) {
        return false;
    }
    if (std::abs(m.trace() - Complex(1.0, 0.0)) > tol) {
        return false;
    }
    return min_eigenvalue(m) >= -tol;
}

bool is_projector_family(std::span<const ComplexMatrix> family, double tol) {
    if (family.empty()) {
        return false;
    }
    const auto dim = family.front().rows();
    ComplexMatrix total = ComplexMatrix::Zero(dim, dim);
    for (size_t i = 0; i < family.size(); ++i) {
        const auto &p = family[i];
        if (p.rows() != dim || p.cols() != dim || !is_projector(p, tol)) {
            return false;
        }
        for (size_t j = i + 1; j < family.size(); ++j) {
            if ((p * family[j]).cwiseAbs().maxCoeff() > tol) {
                return false;
            }
        }
        total += p;
    }
    return (total - ComplexMatrix::Identity(dim, dim)).cwiseAbs().maxCoeff() <= tol;
}

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

ComplexVector kron(const ComplexVector &a, const ComplexVector &b) {
    ComplexVector out(a.size() * b.size());
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        out.segment(i * b.size(), b.size()) = a(i) * b;
    }
    return out;
}

double min_eigenvalue(const ComplexMatrix &m) {
    if (m.size() == 0) {
        return 0.0;
    }
    ComplexMatrix h = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

double min_eigenvalue(const RealMatrix &m) {
    if (m.size() == 0) {
        return 0.0;
    }
    RealMatrix h = 0.5 * (m + m.transpose());
    Eigen::SelfAdjointEigenSolver<RealMatrix> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

ComplexMatrix pauli_x() {
    ComplexMatrix m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

ComplexMatrix pauli_y() {
    ComplexMatrix m(2, 2);
    m << 0, Complex(0, -1), Complex(0, 1), 0;
    return m;
}

ComplexMatrix pauli_z() {
    ComplexMatrix m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

ComplexMatrix bloch_observable(double theta, double phi) {
    return std::sin(theta) * std::cos(phi) * pauli_x() + std::sin(theta) * std::sin(phi) * pauli_y() +
           std::cos(theta) * pauli_z();
}

std::vector<ComplexMatrix> bloch_measurement(double theta, double phi) {
    ComplexMatrix id = ComplexMatrix::Identity(2, 2);
    ComplexMatrix obs = bloch_observable(theta, phi);
    return {0.5 * (id + obs), 0.5 * (id - obs)};
}

std::vector<ComplexMatrix> computational_measurement(int dim) {
    std::vector<ComplexMatrix> out;
    for (int k = 0; k < dim; ++k) {
        ComplexMatrix p = ComplexMatrix::Zero(dim, dim);
        p(k, k) = 1.0;
        out.push_back(p);
    }
    return out;
}

std::vector<ComplexMatrix> binary_computational_measurement(int dim, int rank) {
    ComplexMatrix p = ComplexMatrix::Zero(dim, dim);
    for (int k = 0; k < rank; ++k) {
        p(k, k) = 1.0;
    }
    return {p, ComplexMatrix::Identity(dim, dim) - p};
}

ComplexMatrix random_unitary(int dim, Rng &rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    ComplexMatrix g(dim, dim);
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) {
            g(i, j) = Complex(gauss(rng), gauss(rng));
        }
    }
    Eigen::HouseholderQR<ComplexMatrix> qr(g);
    ComplexMatrix q = qr.householderQ();
    ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < dim; ++j) {
        const Complex d = r(j, j);
        const double mag = std::abs(d);
        if (mag > 0) {
            q.col(j) *= d / mag;
        }
    }
    return q;
}

ComplexVector random_state(int dim, Rng &rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    ComplexVector v(dim);
    for (int i = 0; i < dim; ++i) {
        v(i) = Complex(gauss(rng), gauss(rng));
    }
    return v / v.norm();
}

std::vector<ComplexMatrix> random_binary_measurement(int dim, int rank, Rng &rng) {
    ComplexMatrix u = random_unitary(dim, rng);
    ComplexMatrix p = u.leftCols(rank) * u.leftCols(rank).adjoint();
    p = 0.5 * (p + p.adjoint()).eval();
    return {p, ComplexMatrix::Identity(dim, dim) - p};
}

ComplexMatrix exp_i_hermitian(const ComplexMatrix &h) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (h + h.adjoint()));
    ComplexVector phases(h.rows());
    for (Eigen::Index k = 0; k < h.rows(); ++k) {
        const double e = es.eigenvalues()(k);
        phases(k) = Complex(std::cos(e), std::sin(e));
    }
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

ComplexMatrix hermitian_from_params(std::span<const double> params, int dim) {
    ComplexMatrix h = ComplexMatrix::Zero(dim, dim);
    size_t k = 0;
    for (int i = 0; i < dim; ++i) {
        h(i, i) = params[k++];
    }
    for (int i = 0; i < dim; ++i) {
        for (int j = i + 1; j < dim; ++j) {
            const Complex z(params[k], params[k + 1]);
            k += 2;
            h(i, j) = z;
            h(j, i) = std::conj(z);
        }
    }
    return h;
}

}  // namespace coordcert
