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
 * Seeded random sources. Distributions are implemented here rather than
 * taken from <random> so that a seed yields the same stream on every
 * standard library.
 */

#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "states.hpp"

namespace vdqc {

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n) {
        return static_cast<std::uint64_t>(uniform() * static_cast<double>(n)) % n;
    }

    bool bernoulli(double p) { return uniform() < p; }

    /// Standard normal via Box-Muller.
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        while (u1 <= 0.0) {
            u1 = uniform();
        }
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        spare_ = r * std::sin(2.0 * std::numbers::pi * u2);
        has_spare_ = true;
        return r * std::cos(2.0 * std::numbers::pi * u2);
    }

    cplx complex_normal() { return {normal(), normal()}; }

    std::uint64_t next_u64() { return engine_(); }

  private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

inline PureState random_pure_state(std::size_t dim, Rng &rng) {
    CVector v(dim);
    for (auto &z : v) {
        z = rng.complex_normal();
    }
    return PureState::normalized(std::move(v));
}

/// Haar-random unitary: Gram-Schmidt on a complex Ginibre matrix.
inline ComplexMatrix random_unitary(std::size_t dim, Rng &rng) {
    std::vector<CVector> cols(dim, CVector(dim));
    for (auto &c : cols) {
        for (auto &z : c) {
            z = rng.complex_normal();
        }
    }
    for (std::size_t j = 0; j < dim; ++j) {
        // Two passes keep orthogonality at machine precision.
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t i = 0; i < j; ++i) {
                const cplx proj = inner(cols[i], cols[j]);
                for (std::size_t r = 0; r < dim; ++r) {
                    cols[j][r] -= proj * cols[i][r];
                }
            }
        }
        const double nrm = vector_norm(cols[j]);
        for (auto &z : cols[j]) {
            z /= nrm;
        }
    }
    ComplexMatrix u(dim, dim);
    for (std::size_t j = 0; j < dim; ++j) {
        for (std::size_t r = 0; r < dim; ++r) {
            u(r, j) = cols[j][r];
        }
    }
    return u;
}

/// G G^dagger for a dim x rank Ginibre G; full rank when rank >= dim.
inline ComplexMatrix random_psd(std::size_t dim, std::size_t rank, Rng &rng) {
    ComplexMatrix g(dim, rank);
    for (auto &z : g.entries()) {
        z = rng.complex_normal();
    }
    return hermitian_part(g * g.adjoint());
}

inline DensityOperator random_density(std::size_t dim, Rng &rng, std::size_t rank = 0) {
    ComplexMatrix p = random_psd(dim, rank == 0 ? dim : rank, rng);
    p *= cplx{1.0 / p.trace().real(), 0.0};
    return DensityOperator(hermitian_part(p));
}

} // namespace vdqc
