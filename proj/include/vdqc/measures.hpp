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
 * Fidelity, trace norm and pure-state trace distance.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <optional>

#include "eigen.hpp"
#include "states.hpp"

namespace vdqc {

namespace detail {

// If `p` is (numerically) rank one, returns v with p = |v><v|.
inline std::optional<CVector> rank_one_factor(const ComplexMatrix &p) {
    const double tr = p.trace().real();
    if (!(tr > 0.0)) {
        return std::nullopt;
    }
    const double tr2 = hs_inner(p, p).real();
    if (std::abs(tr2 - tr * tr) > 1e-12 * tr * tr) {
        return std::nullopt;
    }
    const HermitianEigen e = hermitian_eig(p);
    const std::size_t j = e.values.size() - 1;
    const double s = std::sqrt(std::max(e.values[j], 0.0));
    CVector v(p.rows());
    for (std::size_t r = 0; r < p.rows(); ++r) {
        v[r] = e.vectors(r, j) * s;
    }
    return v;
}

} // namespace detail

/**
 * @brief Fidelity (Tr sqrt(sqrt(P) Q sqrt(P)))^2 of two PSD matrices.
 *
 * Not restricted to unit trace, so it also serves the block identities on
 * sub-normalized operators. When either argument is rank one, the exact
 * expression <v|Q|v> is used.
 */
inline double psd_fidelity(const ComplexMatrix &p, const ComplexMatrix &q) {
    if (!p.is_square() || p.rows() != q.rows() || p.cols() != q.cols()) {
        throw DimensionError("fidelity: dimension mismatch " + p.shape() + " vs " +
                             q.shape());
    }
    if (auto v = detail::rank_one_factor(p)) {
        return std::max(0.0, inner(*v, mat_vec(q, *v)).real());
    }
    if (auto v = detail::rank_one_factor(q)) {
        return std::max(0.0, inner(*v, mat_vec(p, *v)).real());
    }
    const ComplexMatrix sp = psd_sqrt(p);
    const ComplexMatrix m = hermitian_part(sp * q * sp);
    const double t = trace_sqrt(m);
    return t * t;
}

/// Uhlmann fidelity of two density operators, in [0, 1].
inline double fidelity(const DensityOperator &rho, const DensityOperator &sigma) {
    if (rho.dim() != sigma.dim()) {
        throw DimensionError("fidelity: dimension mismatch " +
                             std::to_string(rho.dim()) + " vs " +
                             std::to_string(sigma.dim()));
    }
    return std::clamp(psd_fidelity(rho.matrix(), sigma.matrix()), 0.0, 1.0);
}

/**
 * @brief Trace norm (sum of singular values).
 *
 * Hermitian inputs use |eigenvalues| directly; other square matrices go
 * through the eigenvalues of A^dagger A.
 */
inline double trace_norm(const ComplexMatrix &a) {
    if (!a.is_square()) {
        throw DimensionError("trace_norm: matrix " + a.shape() + " is not square");
    }
    if (a.rows() > tol::kDefaultDimensionCap) {
        throw DimensionError("trace_norm: dimension exceeds cap");
    }
    const double scale = std::max(1.0, a.max_abs());
    if (hermiticity_defect(a) <= 1e-12 * scale) {
        double s = 0.0;
        for (double lam : hermitian_eigenvalues(hermitian_part(a))) {
            s += std::abs(lam);
        }
        return s;
    }
    const std::vector<double> vals = hermitian_eigenvalues(hermitian_part(a.adjoint() * a));
    const double floor = detail::spectral_floor(vals);
    double s = 0.0;
    for (double lam : vals) {
        if (lam > floor) {
            s += std::sqrt(lam);
        }
    }
    return s;
}

/// Half the trace norm of rho - sigma.
inline double trace_distance(const DensityOperator &rho, const DensityOperator &sigma) {
    if (rho.dim() != sigma.dim()) {
        throw DimensionError("trace_distance: dimension mismatch");
    }
    return 0.5 * trace_norm(rho.matrix() - sigma.matrix());
}

/// sqrt(1 - |<u|v>|^2), the trace distance of two pure states.
inline double pure_trace_distance(const PureState &u, const PureState &v) {
    if (u.dim() != v.dim()) {
        throw DimensionError("pure_trace_distance: dimension mismatch");
    }
    const double ov = std::norm(inner(u, v));
    return std::sqrt(std::max(0.0, 1.0 - ov));
}

} // namespace vdqc
