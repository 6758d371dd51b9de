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
 * Gates, states, measurement elements and the abort-extended output space.
 */

#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <optional>

#include "measures.hpp"
#include "states.hpp"

namespace vdqc {

/// diag(1, e^{i alpha})
inline ComplexMatrix phase_gate(double alpha) {
    return ComplexMatrix{{1.0, 0.0}, {0.0, std::polar(1.0, alpha)}};
}

inline ComplexMatrix hadamard() {
    const double s = 1.0 / std::numbers::sqrt2;
    return ComplexMatrix{{s, s}, {s, -s}};
}

/// 1^{(k-1)} (x) P(alpha): the phase rotation on the last of k qubits.
inline ComplexMatrix attack_operator(double alpha, std::size_t k,
                                     std::size_t cap = tol::kDefaultDimensionCap) {
    if (k == 0) {
        throw DomainError("attack_operator: k must be positive");
    }
    if (k >= 63 || pow2(k) > cap) {
        throw DimensionError("attack_operator: 2^" + std::to_string(k) +
                             " exceeds dimension cap " + std::to_string(cap));
    }
    // Diagonal: basis states with the last qubit set pick up the phase.
    const std::size_t d = pow2(k);
    ComplexMatrix a(d, d);
    const cplx ph = std::polar(1.0, alpha);
    for (std::size_t i = 0; i < d; ++i) {
        a(i, i) = (i & 1U) ? ph : cplx{1.0};
    }
    return a;
}

/// |+>^{(x) k}
inline PureState plus_state(std::size_t k, std::size_t cap = tol::kDefaultDimensionCap) {
    if (k == 0) {
        throw DomainError("plus_state: k must be positive");
    }
    if (k >= 63 || pow2(k) > cap) {
        throw DimensionError("plus_state: 2^" + std::to_string(k) +
                             " exceeds dimension cap");
    }
    const std::size_t d = pow2(k);
    return PureState(CVector(d, cplx{1.0 / std::sqrt(static_cast<double>(d))}));
}

/// |0...0> on k qubits.
inline PureState zero_state(std::size_t k) { return PureState::basis(pow2(k), 0); }

/// |+_alpha> = (|0> + e^{i alpha}|1>)/sqrt(2)
inline PureState plus_alpha_state(double alpha) {
    const double s = 1.0 / std::numbers::sqrt2;
    return PureState(CVector{s, std::polar(s, alpha)});
}

/// Bell state (|00> + |11>)/sqrt(2).
inline PureState bell_state() {
    const double s = 1.0 / std::numbers::sqrt2;
    return PureState(CVector{s, 0.0, 0.0, s});
}

/// Measurement element 0 <= E <= 1.
class PovmElement {
  public:
    explicit PovmElement(ComplexMatrix m) : m_(std::move(m)) {
        if (!m_.is_square()) {
            throw DimensionError("PovmElement: matrix " + m_.shape() + " is not square");
        }
        if (!is_hermitian(m_)) {
            throw ContractViolation("PovmElement: not Hermitian");
        }
        const auto vals = hermitian_eigenvalues(m_);
        if (vals.front() < -tol::kValidation || vals.back() > 1.0 + tol::kValidation) {
            throw ContractViolation("PovmElement: spectrum [" + std::to_string(vals.front()) +
                                    ", " + std::to_string(vals.back()) +
                                    "] outside [0, 1]");
        }
        m_ = hermitian_part(m_);
    }

    /// Rank-one projector onto `psi`; valid by construction.
    static PovmElement projector(const PureState &psi) {
        return PovmElement(Trusted{}, psi.projector());
    }

    static PovmElement identity(std::size_t dim) {
        return PovmElement(Trusted{}, ComplexMatrix::identity(dim));
    }

    /// w * E for w in [0, 1].
    [[nodiscard]] PovmElement scaled(double w) const {
        if (!(w >= 0.0 && w <= 1.0)) {
            throw DomainError("PovmElement::scaled: weight outside [0, 1]");
        }
        return PovmElement(Trusted{}, m_ * w);
    }

    [[nodiscard]] std::size_t dim() const noexcept { return m_.rows(); }
    [[nodiscard]] const ComplexMatrix &matrix() const noexcept { return m_; }

    /// <E, rho> = Tr(E rho)
    [[nodiscard]] double expectation(const ComplexMatrix &rho) const {
        return hs_inner(m_, rho).real();
    }

    /// <psi|E|psi>
    [[nodiscard]] double expectation(std::span<const cplx> psi) const {
        return inner(psi, mat_vec(m_, psi)).real();
    }

    friend PovmElement tensor(const PovmElement &a, const PovmElement &b,
                              std::size_t cap);

  private:
    struct Trusted {};
    PovmElement(Trusted, ComplexMatrix m) : m_(std::move(m)) {}

    ComplexMatrix m_;
};

inline PovmElement tensor(const PovmElement &a, const PovmElement &b,
                          std::size_t cap = tol::kDefaultDimensionCap) {
    return PovmElement(PovmElement::Trusted{}, kron(a.matrix(), b.matrix(), cap));
}

/**
 * @brief Client output on C^d (+) span{|abort>}.
 *
 * The abort direction is the last basis vector (index d). The coupling
 * between payload and abort must vanish: the client's output is a classical
 * mixture of a payload state and the abort symbol.
 */
class AbortExtendedState {
  public:
    AbortExtendedState(std::size_t payload_dim, DensityOperator rho)
        : d_(payload_dim), rho_(std::move(rho)) {
        if (rho_.dim() != d_ + 1) {
            throw DimensionError("AbortExtendedState: expected dimension " +
                                 std::to_string(d_ + 1) + ", got " +
                                 std::to_string(rho_.dim()));
        }
        for (std::size_t i = 0; i < d_; ++i) {
            if (std::abs(rho_.matrix()(i, d_)) > tol::kNormalization) {
                throw ContractViolation(
                    "AbortExtendedState: payload/abort coherence is non-zero");
            }
        }
    }

    [[nodiscard]] std::size_t payload_dim() const noexcept { return d_; }
    [[nodiscard]] const DensityOperator &state() const noexcept { return rho_; }
    [[nodiscard]] const ComplexMatrix &matrix() const noexcept { return rho_.matrix(); }

    /// Weight of the payload block, i.e. the acceptance probability.
    [[nodiscard]] double acceptance_weight() const {
        return std::clamp(1.0 - abort_weight(), 0.0, 1.0);
    }

    [[nodiscard]] double abort_weight() const { return rho_.matrix()(d_, d_).real(); }

    /// Unnormalized payload block p * phi.
    [[nodiscard]] ComplexMatrix payload_block() const {
        ComplexMatrix b(d_, d_);
        for (std::size_t i = 0; i < d_; ++i) {
            for (std::size_t j = 0; j < d_; ++j) {
                b(i, j) = rho_.matrix()(i, j);
            }
        }
        return b;
    }

    /// Normalized payload phi, absent when the state is pure abort.
    [[nodiscard]] std::optional<DensityOperator> payload() const {
        const double w = acceptance_weight();
        if (w <= tol::kNormalization) {
            return std::nullopt;
        }
        ComplexMatrix b = payload_block();
        b *= cplx{1.0 / b.trace().real(), 0.0};
        return DensityOperator(hermitian_part(b));
    }

  private:
    std::size_t d_;
    DensityOperator rho_;
};

namespace detail {
inline ComplexMatrix embed_block(const ComplexMatrix &payload, double p) {
    const std::size_t d = payload.rows();
    ComplexMatrix m(d + 1, d + 1);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            m(i, j) = p * payload(i, j);
        }
    }
    m(d, d) = 1.0 - p;
    return m;
}
} // namespace detail

/// p * payload (+) (1 - p) * |abort><abort|
inline AbortExtendedState mix_with_abort(const DensityOperator &payload, double p_accept) {
    if (!(p_accept >= 0.0 && p_accept <= 1.0)) {
        throw DomainError("mix_with_abort: acceptance probability " +
                          std::to_string(p_accept) + " outside [0, 1]");
    }
    // Block-diagonal sum of PSD blocks with unit total trace.
    ComplexMatrix m = detail::embed_block(payload.matrix(), p_accept);
    return AbortExtendedState(payload.dim(), DensityOperator(std::move(m)));
}

/// The target state viewed on the abort-extended space (never aborts).
inline AbortExtendedState embed(const DensityOperator &target) {
    return mix_with_abort(target, 1.0);
}

} // namespace vdqc
