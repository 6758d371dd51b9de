// Copyright 2026 The vdqc-cutchoose Authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Shared helpers for the unit tests: matrix comparison, reference
// computations that do not go through the library, and seeded case
// generators for the property suites.

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "vdqc/matrix.hpp"

namespace vdqc_test {

using vdqc::cplx;
using vdqc::ComplexMatrix;
using vdqc::CVector;

inline constexpr double kPi = std::numbers::pi;

/// Number of cases every property suite runs.
inline constexpr int kPropertyCases = 1000;

inline double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        return INFINITY;
    }
    double m = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            m = std::max(m, std::abs(a(i, j) - b(i, j)));
        }
    }
    return m;
}

inline double max_abs_diff(const CVector &a, const CVector &b) {
    if (a.size() != b.size()) {
        return INFINITY;
    }
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        m = std::max(m, std::abs(a[i] - b[i]));
    }
    return m;
}

/// Distance between two matrices modulo a global phase.
inline double phase_insensitive_diff(const ComplexMatrix &a, const ComplexMatrix &b) {
    cplx ref{};
    for (std::size_t i = 0; i < a.rows() && ref == cplx{}; ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (std::abs(a(i, j)) > 1e-6) {
                ref = b(i, j) / a(i, j);
                break;
            }
        }
    }
    if (ref == cplx{}) {
        return max_abs_diff(a, b);
    }
    ref /= std::abs(ref);
    return max_abs_diff(a * ref, b);
}

/// Independent generator for the property suites, so a bug in vdqc::Rng
/// cannot hide in the same stream it is meant to test.
class CaseGen {
  public:
    explicit CaseGen(std::uint64_t seed) : eng_(seed) {}

    double uniform(double lo = 0.0, double hi = 1.0) {
        return std::uniform_real_distribution<double>(lo, hi)(eng_);
    }

    std::size_t index(std::size_t lo, std::size_t hi) {
        return std::uniform_int_distribution<std::size_t>(lo, hi)(eng_);
    }

    cplx gaussian() {
        std::normal_distribution<double> nd;
        return {nd(eng_), nd(eng_)};
    }

    CVector unit_vector(std::size_t d) {
        CVector v(d);
        double s = 0.0;
        for (auto &z : v) {
            z = gaussian();
            s += std::norm(z);
        }
        for (auto &z : v) {
            z /= std::sqrt(s);
        }
        return v;
    }

    ComplexMatrix gaussian_matrix(std::size_t r, std::size_t c) {
        ComplexMatrix m(r, c);
        for (auto &z : m.entries()) {
            z = gaussian();
        }
        return m;
    }

    /// Unitary from the QR factor of a Gaussian matrix (Eigen oracle).
    ComplexMatrix unitary(std::size_t d) {
        Eigen::MatrixXcd g(d, d);
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t j = 0; j < d; ++j) {
                g(i, j) = gaussian();
            }
        }
        const Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
        const Eigen::MatrixXcd q = qr.householderQ();
        ComplexMatrix out(d, d);
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t j = 0; j < d; ++j) {
                out(i, j) = q(i, j);
            }
        }
        return out;
    }

    /// Density matrix G G^dagger / Tr of the given rank.
    ComplexMatrix density(std::size_t d, std::size_t rank) {
        const ComplexMatrix g = gaussian_matrix(d, rank);
        ComplexMatrix rho = g * g.adjoint();
        rho *= cplx{1.0 / rho.trace().real(), 0.0};
        return vdqc::hermitian_part(rho);
    }

    std::mt19937_64 &engine() { return eng_; }

  private:
    std::mt19937_64 eng_;
};

inline Eigen::MatrixXcd to_eigen(const ComplexMatrix &m) {
    Eigen::MatrixXcd e(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            e(i, j) = m(i, j);
        }
    }
    return e;
}

/// Trace norm through Eigen's SVD.
inline double oracle_trace_norm(const ComplexMatrix &m) {
    const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(to_eigen(m));
    return svd.singularValues().sum();
}

/// Uhlmann fidelity (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2 through Eigen.
inline double oracle_fidelity(const ComplexMatrix &rho, const ComplexMatrix &sigma) {
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(to_eigen(rho));
    const Eigen::VectorXd vals = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    const Eigen::MatrixXcd sq = es.eigenvectors() * vals.asDiagonal() * es.eigenvectors().adjoint();
    const Eigen::MatrixXcd inner = sq * to_eigen(sigma) * sq;
    const Eigen::MatrixXcd herm = 0.5 * (inner + inner.adjoint());
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es2(herm);
    const double t = es2.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
    return t * t;
}

/// Plain textbook Kronecker product, written out index by index.
inline ComplexMatrix oracle_kron(const ComplexMatrix &a, const ComplexMatrix &b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < out.rows(); ++i) {
        for (std::size_t j = 0; j < out.cols(); ++j) {
            out(i, j) = a(i / b.rows(), j / b.cols()) * b(i % b.rows(), j % b.cols());
        }
    }
    return out;
}

} // namespace vdqc_test
