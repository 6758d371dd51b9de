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
 * Spectral routines: cyclic Jacobi for Hermitian matrices, eigenvalues of
 * unitaries, and the PSD square root.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "matrix.hpp"

namespace vdqc {

struct HermitianEigen {
    std::vector<double> values; ///< ascending
    ComplexMatrix vectors;      ///< column j belongs to values[j]
};

namespace detail {

// Applies the unitary 2x2 rotation J on index pair (p, q): A <- J^dagger A J,
// V <- V J.
inline void jacobi_rotate(ComplexMatrix &a, ComplexMatrix &v, std::size_t p,
                          std::size_t q, cplx jpp, cplx jpq, cplx jqp, cplx jqq) {
    const std::size_t n = a.rows();
    for (std::size_t r = 0; r < n; ++r) {
        const cplx arp = a(r, p);
        const cplx arq = a(r, q);
        a(r, p) = arp * jpp + arq * jqp;
        a(r, q) = arp * jpq + arq * jqq;
    }
    for (std::size_t c = 0; c < n; ++c) {
        const cplx apc = a(p, c);
        const cplx aqc = a(q, c);
        a(p, c) = std::conj(jpp) * apc + std::conj(jqp) * aqc;
        a(q, c) = std::conj(jpq) * apc + std::conj(jqq) * aqc;
    }
    for (std::size_t r = 0; r < n; ++r) {
        const cplx vrp = v(r, p);
        const cplx vrq = v(r, q);
        v(r, p) = vrp * jpp + vrq * jqp;
        v(r, q) = vrp * jpq + vrq * jqq;
    }
}

// Magnitude below which a computed eigenvalue is indistinguishable from zero.
inline double spectral_floor(std::span<const double> values) {
    double m = 1.0;
    for (double x : values) {
        m = std::max(m, std::abs(x));
    }
    return 1e-14 * m;
}

} // namespace detail

/**
 * @brief Eigendecomposition of a Hermitian matrix by cyclic Jacobi sweeps.
 *
 * Returns eigenvalues in ascending order with orthonormal eigenvectors as
 * columns, so that `h = V diag(values) V^dagger`. The result is a
 * deterministic function of the input entries.
 *
 * Throws ContractViolation if `h` deviates from Hermiticity by more than
 * 1e-10 (scaled by max(1, max|h_ij|)).
 */
inline HermitianEigen hermitian_eig(const ComplexMatrix &h) {
    if (!h.is_square()) {
        throw DimensionError("hermitian_eig: matrix " + h.shape() + " is not square");
    }
    const double scale = std::max(1.0, h.max_abs());
    if (hermiticity_defect(h) > tol::kValidation * scale) {
        throw ContractViolation("hermitian_eig: input is not Hermitian (defect " +
                                std::to_string(hermiticity_defect(h)) + ")");
    }
    const std::size_t n = h.rows();
    ComplexMatrix a = hermitian_part(h);
    ComplexMatrix v = ComplexMatrix::identity(n);

    constexpr int kMaxSweeps = 100;
    const double fro2 = std::max(a.frobenius_norm() * a.frobenius_norm(),
                                 std::numeric_limits<double>::min());
    constexpr double eps = std::numeric_limits<double>::epsilon();

    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                off += std::norm(a(p, q));
            }
        }
        if (off <= eps * eps * fro2) {
            break;
        }
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const cplx apq = a(p, q);
                const double mag = std::abs(apq);
                if (mag == 0.0) {
                    continue;
                }
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                if (sweep > 3 && std::abs(app) + 100.0 * mag == std::abs(app) &&
                    std::abs(aqq) + 100.0 * mag == std::abs(aqq)) {
                    a(p, q) = 0.0;
                    a(q, p) = 0.0;
                    continue;
                }
                const double tau = (aqq - app) / (2.0 * mag);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const cplx phase_conj = std::conj(apq / mag);
                detail::jacobi_rotate(a, v, p, q, c, s, -s * phase_conj,
                                      c * phase_conj);
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return a(i, i).real() < a(j, j).real();
    });

    HermitianEigen out{std::vector<double>(n), ComplexMatrix(n, n)};
    for (std::size_t j = 0; j < n; ++j) {
        out.values[j] = a(order[j], order[j]).real();
        for (std::size_t r = 0; r < n; ++r) {
            out.vectors(r, j) = v(r, order[j]);
        }
    }
    return out;
}

/// Eigenvalues only, ascending.
inline std::vector<double> hermitian_eigenvalues(const ComplexMatrix &h) {
    return hermitian_eig(h).values;
}

/**
 * @brief Eigenvalues of a unitary matrix.
 *
 * Diagonalizes the Hermitian part first; within each (near-)degenerate
 * cluster of its spectrum the anti-Hermitian part separates conjugate pairs.
 * Returned values are projected onto the unit circle.
 */
inline std::vector<cplx> unitary_eigenvalues(const ComplexMatrix &w) {
    if (!is_unitary(w, 1e-9)) {
        throw ContractViolation("unitary_eigenvalues: input is not unitary");
    }
    const std::size_t n = w.rows();
    const ComplexMatrix re = hermitian_part(w);
    const HermitianEigen he = hermitian_eig(re);
    const ComplexMatrix m = he.vectors.adjoint() * w * he.vectors;

    std::vector<cplx> out;
    out.reserve(n);
    constexpr double kCluster = 1e-6;
    std::size_t start = 0;
    while (start < n) {
        std::size_t end = start + 1;
        while (end < n && he.values[end] - he.values[end - 1] <= kCluster) {
            ++end;
        }
        const std::size_t b = end - start;
        if (b == 1) {
            out.push_back(m(start, start));
        } else {
            // M_b = c I + i K_b with K_b Hermitian.
            ComplexMatrix block(b, b);
            for (std::size_t i = 0; i < b; ++i) {
                for (std::size_t j = 0; j < b; ++j) {
                    block(i, j) = m(start + i, start + j);
                }
            }
            ComplexMatrix k = block - block.adjoint();
            k *= cplx{0.0, -0.5};
            const HermitianEigen ke = hermitian_eig(hermitian_part(k));
            const ComplexMatrix d = ke.vectors.adjoint() * block * ke.vectors;
            for (std::size_t i = 0; i < b; ++i) {
                out.push_back(d(i, i));
            }
        }
        start = end;
    }
    for (auto &z : out) {
        const double r = std::abs(z);
        z = r > 0.0 ? z / r : cplx{1.0, 0.0};
    }
    return out;
}

/**
 * @brief Square root of a positive semidefinite matrix.
 *
 * Eigenvalues in [-1e-8, 0) and those at round-off level are treated as
 * exact zeros; anything below -1e-8 raises NotPsdError.
 */
inline ComplexMatrix psd_sqrt(const ComplexMatrix &p) {
    const HermitianEigen e = hermitian_eig(p);
    const double floor = detail::spectral_floor(e.values);
    const std::size_t n = p.rows();
    std::vector<double> roots(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double lam = e.values[j];
        if (lam < -tol::kClamp) {
            throw NotPsdError("psd_sqrt: eigenvalue " + std::to_string(lam) +
                              " below -1e-8");
        }
        roots[j] = lam <= floor ? 0.0 : std::sqrt(lam);
    }
    ComplexMatrix out(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        if (roots[j] == 0.0) {
            continue;
        }
        for (std::size_t r = 0; r < n; ++r) {
            const cplx vr = e.vectors(r, j) * roots[j];
            for (std::size_t c = 0; c < n; ++c) {
                out(r, c) += vr * std::conj(e.vectors(c, j));
            }
        }
    }
    return hermitian_part(out);
}

/// Sum of square roots of the spectrum of a PSD matrix, i.e. Tr sqrt(P).
inline double trace_sqrt(const ComplexMatrix &p) {
    const std::vector<double> vals = hermitian_eigenvalues(p);
    const double floor = detail::spectral_floor(vals);
    double s = 0.0;
    for (double lam : vals) {
        if (lam < -tol::kClamp) {
            throw NotPsdError("trace_sqrt: eigenvalue " + std::to_string(lam) +
                              " below -1e-8");
        }
        if (lam > floor) {
            s += std::sqrt(lam);
        }
    }
    return s;
}

} // namespace vdqc
