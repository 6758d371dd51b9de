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
 * Smallest squared modulus over the numerical range {<u|A|u>}.
 *
 * Two routes: a generic search over random unit vectors refined by Riemannian
 * gradient descent, and a one-parameter minimization for operators with the
 * two-point spectrum {1, e^{i alpha}}.
 */

#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>

#include "quantum_objects.hpp"
#include "random.hpp"

namespace vdqc {

struct NumericalRangeMinimum {
    double value;    ///< min |<u|A|u>|^2 found
    PureState state; ///< minimizer
};

namespace detail {

inline double range_objective(const ComplexMatrix &a, std::span<const cplx> u) {
    return std::norm(inner(u, mat_vec(a, u)));
}

// Riemannian gradient descent on the unit sphere with Armijo backtracking.
inline double descend(const ComplexMatrix &a, const ComplexMatrix &a_adj, CVector &u,
                      int max_iters) {
    double f = range_objective(a, u);
    double step = 1.0;
    for (int it = 0; it < max_iters && f > 0.0; ++it) {
        const CVector au = mat_vec(a, u);
        const CVector adu = mat_vec(a_adj, u);
        const cplx z = inner(u, au);
        // Wirtinger gradient df/d(conj u).
        CVector g(u.size());
        for (std::size_t i = 0; i < u.size(); ++i) {
            g[i] = std::conj(z) * au[i] + z * adu[i];
        }
        const double radial = inner(u, g).real();
        for (std::size_t i = 0; i < u.size(); ++i) {
            g[i] -= radial * u[i];
        }
        const double gnorm2 = inner(g, g).real();
        if (gnorm2 < 1e-30) {
            break;
        }
        step = std::min(step * 2.0, 1e6);
        bool moved = false;
        CVector trial(u.size());
        while (step > 1e-18) {
            for (std::size_t i = 0; i < u.size(); ++i) {
                trial[i] = u[i] - step * g[i];
            }
            const double nrm = vector_norm(trial);
            for (auto &x : trial) {
                x /= nrm;
            }
            const double ft = range_objective(a, trial);
            if (ft <= f - 1e-4 * step * 2.0 * gnorm2) {
                u.swap(trial);
                f = ft;
                moved = true;
                break;
            }
            step *= 0.5;
        }
        if (!moved) {
            break;
        }
    }
    return f;
}

} // namespace detail

/**
 * @brief Minimizes |<u|A|u>|^2 over unit vectors u.
 *
 * Runs `trials` independent descents from Haar-random starting points and
 * keeps the best. Deterministic for a fixed seed.
 */
inline NumericalRangeMinimum min_numerical_range_modulus(const ComplexMatrix &a,
                                                         int trials,
                                                         std::uint64_t seed,
                                                         int max_iters = 4000) {
    if (!a.is_square()) {
        throw DimensionError("min_numerical_range_modulus: matrix is not square");
    }
    if (trials < 1) {
        throw DomainError("min_numerical_range_modulus: trials must be >= 1");
    }
    Rng rng(seed);
    const ComplexMatrix a_adj = a.adjoint();
    double best = std::numeric_limits<double>::infinity();
    CVector best_u;
    for (int t = 0; t < trials; ++t) {
        const PureState start = random_pure_state(a.rows(), rng);
        CVector u(start.amplitudes().begin(), start.amplitudes().end());
        const double f = detail::descend(a, a_adj, u, max_iters);
        if (f < best) {
            best = f;
            best_u = std::move(u);
        }
    }
    return {best, PureState::normalized(std::move(best_u))};
}

/**
 * @brief min over unit u of |<u|(1 (x) P(alpha))|u>|^2 on k qubits, by
 * random search with local descent.
 */
inline double numerical_range_min_overlap(double alpha, int trials, std::uint64_t seed,
                                          std::size_t k = 2) {
    return min_numerical_range_modulus(attack_operator(alpha, k), trials, seed).value;
}

struct TwoPointMinimum {
    double value;  ///< min over lambda of |lambda + (1 - lambda) e^{i alpha}|^2
    double lambda; ///< argmin
};

/// |lambda + (1 - lambda) e^{i alpha}|^2
inline double two_point_modulus_sq(double lambda, double alpha) {
    return std::norm(lambda + (1.0 - lambda) * std::polar(1.0, alpha));
}

/**
 * @brief Minimum of |lambda + (1 - lambda) e^{i alpha}|^2 over lambda in [0, 1].
 *
 * The numerical range of a normal operator with eigenvalues {1, e^{i alpha}}
 * is the segment between them, so this equals the generic minimum above.
 * The objective is a convex quadratic in lambda; golden-section search.
 */
inline TwoPointMinimum two_point_min_overlap(double alpha) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double lo = 0.0;
    double hi = 1.0;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = two_point_modulus_sq(x1, alpha);
    double f2 = two_point_modulus_sq(x2, alpha);
    for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
        if (f1 <= f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = two_point_modulus_sq(x1, alpha);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = two_point_modulus_sq(x2, alpha);
        }
    }
    const double lam = 0.5 * (lo + hi);
    return {two_point_modulus_sq(lam, alpha), lam};
}

} // namespace vdqc
