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
 * Completely positive maps in Kraus form.
 */

#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "eigen.hpp"
#include "matrix.hpp"

namespace vdqc {

/**
 * @brief Channel rho -> sum_j K_j rho K_j^dagger.
 *
 * Construction checks that every Kraus operator has the same shape and that
 * sum_j K_j^dagger K_j = 1 within 1e-9.
 */
class Channel {
  public:
    explicit Channel(std::vector<ComplexMatrix> kraus) : kraus_(std::move(kraus)) {
        if (kraus_.empty()) {
            throw ContractViolation("Channel: empty Kraus list");
        }
        for (const auto &k : kraus_) {
            if (k.rows() != out_dim() || k.cols() != in_dim()) {
                throw DimensionError("Channel: Kraus operators have inconsistent shapes");
            }
        }
        if (trace_preservation_defect() > 1e-9) {
            throw ContractViolation("Channel: Kraus operators are not trace preserving (defect " +
                                    std::to_string(trace_preservation_defect()) + ")");
        }
    }

    static Channel unitary(const ComplexMatrix &u) {
        if (!is_unitary(u)) {
            throw ContractViolation("Channel::unitary: operator is not unitary");
        }
        return Channel(std::vector<ComplexMatrix>{u});
    }

    static Channel identity(std::size_t dim) { return unitary(ComplexMatrix::identity(dim)); }

    /// Dephasing on one qubit with flip probability p: {sqrt(1-p) 1, sqrt(p) Z}.
    static Channel dephasing(double p) {
        if (!(p >= 0.0 && p <= 1.0)) {
            throw DomainError("Channel::dephasing: p outside [0, 1]");
        }
        return Channel({ComplexMatrix{{std::sqrt(1.0 - p), 0.0}, {0.0, std::sqrt(1.0 - p)}},
                        ComplexMatrix{{std::sqrt(p), 0.0}, {0.0, -std::sqrt(p)}}});
    }

    /// Single-qubit depolarizing: rho -> (1-p) rho + p/3 (X rho X + Y rho Y + Z rho Z).
    static Channel depolarizing(double p) {
        if (!(p >= 0.0 && p <= 1.0)) {
            throw DomainError("Channel::depolarizing: p outside [0, 1]");
        }
        const double a = std::sqrt(1.0 - p);
        const double b = std::sqrt(p / 3.0);
        const cplx i{0.0, 1.0};
        return Channel({ComplexMatrix{{a, 0.0}, {0.0, a}}, ComplexMatrix{{0.0, b}, {b, 0.0}},
                        ComplexMatrix{{0.0, -i * b}, {i * b, 0.0}},
                        ComplexMatrix{{b, 0.0}, {0.0, -b}}});
    }

    /// Amplitude damping with decay probability g.
    static Channel amplitude_damping(double g) {
        if (!(g >= 0.0 && g <= 1.0)) {
            throw DomainError("Channel::amplitude_damping: g outside [0, 1]");
        }
        return Channel({ComplexMatrix{{1.0, 0.0}, {0.0, std::sqrt(1.0 - g)}},
                        ComplexMatrix{{0.0, std::sqrt(g)}, {0.0, 0.0}}});
    }

    [[nodiscard]] std::size_t in_dim() const noexcept { return kraus_.front().cols(); }
    [[nodiscard]] std::size_t out_dim() const noexcept { return kraus_.front().rows(); }
    [[nodiscard]] const std::vector<ComplexMatrix> &kraus() const noexcept { return kraus_; }

    /// max |(sum_j K_j^dagger K_j - 1)_{ab}|
    [[nodiscard]] double trace_preservation_defect() const {
        ComplexMatrix s(in_dim(), in_dim());
        for (const auto &k : kraus_) {
            s += k.adjoint() * k;
        }
        double d = 0.0;
        for (std::size_t a = 0; a < in_dim(); ++a) {
            for (std::size_t b = 0; b < in_dim(); ++b) {
                d = std::max(d, std::abs(s(a, b) - (a == b ? cplx{1.0} : cplx{})));
            }
        }
        return d;
    }

    [[nodiscard]] ComplexMatrix apply(const ComplexMatrix &rho) const {
        if (rho.rows() != in_dim() || rho.cols() != in_dim()) {
            throw DimensionError("Channel::apply: state has dimension " + rho.shape() +
                                 ", channel expects " + std::to_string(in_dim()));
        }
        ComplexMatrix out(out_dim(), out_dim());
        for (const auto &k : kraus_) {
            out += k * rho * k.adjoint();
        }
        return out;
    }

    /**
     * @brief Choi matrix sum_{ab} |a><b| (x) Phi(|a><b|), of dimension
     * in_dim * out_dim, input factor first.
     */
    [[nodiscard]] ComplexMatrix choi() const {
        const std::size_t di = in_dim();
        const std::size_t dout = out_dim();
        ComplexMatrix j(di * dout, di * dout);
        for (const auto &k : kraus_) {
            // Column a of K is K|a>.
            for (std::size_t a = 0; a < di; ++a) {
                for (std::size_t b = 0; b < di; ++b) {
                    for (std::size_t x = 0; x < dout; ++x) {
                        for (std::size_t y = 0; y < dout; ++y) {
                            j(a * dout + x, b * dout + y) += k(x, a) * std::conj(k(y, b));
                        }
                    }
                }
            }
        }
        return j;
    }

    /// Trace preservation read off the Choi matrix: Tr_out J = 1.
    [[nodiscard]] bool is_trace_preserving(double tol = 1e-9) const {
        const ComplexMatrix j = choi();
        const std::size_t di = in_dim();
        const std::size_t dout = out_dim();
        for (std::size_t a = 0; a < di; ++a) {
            for (std::size_t b = 0; b < di; ++b) {
                cplx s = 0.0;
                for (std::size_t x = 0; x < dout; ++x) {
                    s += j(a * dout + x, b * dout + x);
                }
                if (std::abs(s - (a == b ? cplx{1.0} : cplx{})) > tol) {
                    return false;
                }
            }
        }
        return true;
    }

    /// Equivalent channel with at most in_dim * out_dim Kraus operators,
    /// obtained from the eigendecomposition of the Choi matrix.
    [[nodiscard]] Channel canonicalized() const {
        const std::size_t di = in_dim();
        const std::size_t dout = out_dim();
        const HermitianEigen e = hermitian_eig(choi());
        const double floor = 1e-13 * std::max(1.0, e.values.back());
        std::vector<ComplexMatrix> ks;
        for (std::size_t c = 0; c < e.values.size(); ++c) {
            if (e.values[c] <= floor) {
                continue;
            }
            const double s = std::sqrt(e.values[c]);
            ComplexMatrix k(dout, di);
            for (std::size_t a = 0; a < di; ++a) {
                for (std::size_t x = 0; x < dout; ++x) {
                    k(x, a) = s * e.vectors(a * dout + x, c);
                }
            }
            ks.push_back(std::move(k));
        }
        return Channel(std::move(ks));
    }

    /// `after` composed with `before`: rho -> after(before(rho)).
    friend Channel compose(const Channel &after, const Channel &before) {
        if (after.in_dim() != before.out_dim()) {
            throw DimensionError("compose: output dimension " + std::to_string(before.out_dim()) +
                                 " does not feed input dimension " +
                                 std::to_string(after.in_dim()));
        }
        std::vector<ComplexMatrix> ks;
        ks.reserve(after.kraus_.size() * before.kraus_.size());
        for (const auto &a : after.kraus_) {
            for (const auto &b : before.kraus_) {
                ComplexMatrix k = a * b;
                if (k.frobenius_norm() > 1e-14) {
                    ks.push_back(std::move(k));
                }
            }
        }
        Channel out(std::move(ks));
        if (out.kraus_.size() > out.in_dim() * out.out_dim()) {
            return out.canonicalized();
        }
        return out;
    }

  private:
    std::vector<ComplexMatrix> kraus_;
};

/// (K (x) 1_ancilla) rho (K (x) 1_ancilla)^dagger summed over Kraus
/// operators, without materializing K (x) 1.
inline ComplexMatrix apply_with_ancilla(const Channel &ch, const ComplexMatrix &rho,
                                        std::size_t ancilla_dim) {
    const std::size_t di = ch.in_dim();
    const std::size_t dout = ch.out_dim();
    const std::size_t da = ancilla_dim;
    if (rho.rows() != di * da || rho.cols() != di * da) {
        throw DimensionError("apply_with_ancilla: state has dimension " + rho.shape() +
                             ", expected " + std::to_string(di * da));
    }
    ComplexMatrix out(dout * da, dout * da);
    ComplexMatrix left(dout * da, di * da);
    for (const auto &k : ch.kraus()) {
        // left = (K (x) 1) rho
        for (auto &z : left.entries()) {
            z = 0.0;
        }
        for (std::size_t a = 0; a < dout; ++a) {
            for (std::size_t c = 0; c < di; ++c) {
                const cplx kac = k(a, c);
                if (kac == cplx{}) {
                    continue;
                }
                for (std::size_t y = 0; y < da; ++y) {
                    const cplx *src = &rho.entries()[(c * da + y) * (di * da)];
                    cplx *dst = &left.entries()[(a * da + y) * (di * da)];
                    for (std::size_t col = 0; col < di * da; ++col) {
                        dst[col] += kac * src[col];
                    }
                }
            }
        }
        // out += left (K (x) 1)^dagger
        for (std::size_t row = 0; row < dout * da; ++row) {
            const cplx *lrow = &left.entries()[row * (di * da)];
            cplx *orow = &out.entries()[row * (dout * da)];
            for (std::size_t b = 0; b < dout; ++b) {
                for (std::size_t d = 0; d < di; ++d) {
                    const cplx kbd = std::conj(k(b, d));
                    if (kbd == cplx{}) {
                        continue;
                    }
                    for (std::size_t y = 0; y < da; ++y) {
                        orow[b * da + y] += lrow[d * da + y] * kbd;
                    }
                }
            }
        }
    }
    return out;
}

} // namespace vdqc
