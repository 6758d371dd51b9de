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

/**
 * @file
 * Validated carriers for pure states and density operators.
 */

#pragma once

#include <cmath>
#include <span>
#include <string>
#include <utility>

#include "eigen.hpp"
#include "matrix.hpp"

namespace vdqc {

/// Unit vector in C^dim.
class PureState {
  public:
    explicit PureState(CVector amplitudes) : amps_(std::move(amplitudes)) {
        if (amps_.empty()) {
            throw DimensionError("PureState: empty amplitude vector");
        }
        const double nrm = vector_norm(amps_);
        if (!std::isfinite(nrm) || std::abs(nrm - 1.0) > tol::kNormalization) {
            throw ContractViolation("PureState: norm " + std::to_string(nrm) +
                                    " differs from 1");
        }
    }

    /// Rescales `v` to unit norm; throws on the zero vector.
    static PureState normalized(CVector v) {
        const double nrm = vector_norm(v);
        if (!(nrm > 0.0) || !std::isfinite(nrm)) {
            throw ContractViolation("PureState::normalized: zero or non-finite vector");
        }
        for (auto &z : v) {
            z /= nrm;
        }
        return PureState(std::move(v));
    }

    static PureState basis(std::size_t dim, std::size_t index) {
        if (index >= dim) {
            throw DimensionError("PureState::basis: index out of range");
        }
        CVector v(dim);
        v[index] = 1.0;
        return PureState(std::move(v));
    }

    [[nodiscard]] std::size_t dim() const noexcept { return amps_.size(); }
    [[nodiscard]] std::span<const cplx> amplitudes() const noexcept { return amps_; }
    [[nodiscard]] const cplx &operator[](std::size_t i) const noexcept {
        return amps_[i];
    }

    /// |psi><psi|
    [[nodiscard]] ComplexMatrix projector() const {
        return ComplexMatrix::outer(amps_, amps_);
    }

    friend bool operator==(const PureState &, const PureState &) = default;

  private:
    CVector amps_;
};

inline cplx inner(const PureState &u, const PureState &v) {
    return inner(u.amplitudes(), v.amplitudes());
}

inline PureState tensor(const PureState &u, const PureState &v,
                        std::size_t cap = tol::kDefaultDimensionCap) {
    return PureState::normalized(kron(u.amplitudes(), v.amplitudes(), cap));
}

/// U|psi>
inline PureState evolve(const ComplexMatrix &u, const PureState &psi) {
    return PureState::normalized(mat_vec(u, psi.amplitudes()));
}

/**
 * @brief Density operator: Hermitian, PSD, unit trace.
 *
 * The checked constructor validates all three properties (the PSD check costs
 * one eigendecomposition). Factories whose outputs are valid by construction
 * (pure projectors, tensor products, unitary conjugation) skip the spectral
 * check.
 */
class DensityOperator {
  public:
    explicit DensityOperator(ComplexMatrix m) : m_(std::move(m)) {
        if (!m_.is_square()) {
            throw DimensionError("DensityOperator: matrix " + m_.shape() +
                                 " is not square");
        }
        if (hermiticity_defect(m_) > tol::kHermitian) {
            throw ContractViolation("DensityOperator: not Hermitian within 1e-12");
        }
        const cplx tr = m_.trace();
        if (std::abs(tr - cplx{1.0}) > tol::kValidation) {
            throw ContractViolation("DensityOperator: trace " +
                                    std::to_string(tr.real()) + " differs from 1");
        }
        const auto vals = hermitian_eigenvalues(m_);
        if (vals.front() < -tol::kValidation) {
            throw NotPsdError("DensityOperator: minimum eigenvalue " +
                              std::to_string(vals.front()) + " below -1e-10");
        }
        m_ = hermitian_part(m_);
    }

    static DensityOperator from_pure(const PureState &psi) {
        return DensityOperator(Trusted{}, psi.projector());
    }

    /// Maximally mixed state on C^dim.
    static DensityOperator maximally_mixed(std::size_t dim) {
        ComplexMatrix m = ComplexMatrix::identity(dim);
        m *= cplx{1.0 / static_cast<double>(dim), 0.0};
        return DensityOperator(Trusted{}, std::move(m));
    }

    [[nodiscard]] std::size_t dim() const noexcept { return m_.rows(); }
    [[nodiscard]] const ComplexMatrix &matrix() const noexcept { return m_; }

    /// Tr(rho^2)
    [[nodiscard]] double purity() const { return hs_inner(m_, m_).real(); }

    [[nodiscard]] bool is_pure(double tol = 1e-10) const { return purity() >= 1.0 - tol; }

    /// Eigenvector of the largest eigenvalue; equals the state vector (up to
    /// phase) when the operator is pure.
    [[nodiscard]] PureState dominant_vector() const {
        const HermitianEigen e = hermitian_eig(m_);
        const std::size_t j = e.values.size() - 1;
        CVector v(dim());
        for (std::size_t r = 0; r < dim(); ++r) {
            v[r] = e.vectors(r, j);
        }
        return PureState::normalized(std::move(v));
    }

    friend DensityOperator tensor(const DensityOperator &a, const DensityOperator &b,
                                  std::size_t cap);
    friend DensityOperator conjugate(const ComplexMatrix &u, const DensityOperator &rho);

  private:
    struct Trusted {};
    DensityOperator(Trusted, ComplexMatrix m) : m_(hermitian_part(m)) {}

    ComplexMatrix m_;
};

inline DensityOperator tensor(const DensityOperator &a, const DensityOperator &b,
                              std::size_t cap = tol::kDefaultDimensionCap) {
    return DensityOperator(DensityOperator::Trusted{}, kron(a.matrix(), b.matrix(), cap));
}

/// U rho U^dagger for unitary U.
inline DensityOperator conjugate(const ComplexMatrix &u, const DensityOperator &rho) {
    if (!is_unitary(u)) {
        throw ContractViolation("conjugate: operator is not unitary");
    }
    return DensityOperator(DensityOperator::Trusted{}, u * rho.matrix() * u.adjoint());
}

} // namespace vdqc
