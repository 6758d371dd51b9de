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
 * Dense row-major complex matrix and the elementary operations on it.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "tolerances.hpp"

namespace vdqc {

using cplx = std::complex<double>;
using CVector = std::vector<cplx>;

/**
 * @brief Dense complex matrix stored row-major.
 *
 * A default-constructed matrix is empty (0x0) and only serves as a
 * placeholder; every factory and arithmetic operation produces matrices with
 * positive dimensions.
 */
class ComplexMatrix {
  public:
    ComplexMatrix() = default;

    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {
        if (rows == 0 || cols == 0) {
            throw DimensionError("ComplexMatrix: dimensions must be positive");
        }
    }

    ComplexMatrix(std::size_t rows, std::size_t cols, CVector entries)
        : rows_(rows), cols_(cols), data_(std::move(entries)) {
        if (rows == 0 || cols == 0) {
            throw DimensionError("ComplexMatrix: dimensions must be positive");
        }
        if (data_.size() != rows * cols) {
            throw DimensionError("ComplexMatrix: entry count " +
                                 std::to_string(data_.size()) + " != " +
                                 std::to_string(rows) + "x" +
                                 std::to_string(cols));
        }
        if (!all_finite()) {
            throw ContractViolation("ComplexMatrix: non-finite entry");
        }
    }

    /// Row-wise literal, e.g. `{{1, 0}, {0, 1}}`.
    ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows) {
        rows_ = rows.size();
        cols_ = rows_ ? rows.begin()->size() : 0;
        if (rows_ == 0 || cols_ == 0) {
            throw DimensionError("ComplexMatrix: dimensions must be positive");
        }
        data_.reserve(rows_ * cols_);
        for (const auto &r : rows) {
            if (r.size() != cols_) {
                throw DimensionError("ComplexMatrix: ragged initializer");
            }
            data_.insert(data_.end(), r.begin(), r.end());
        }
    }

    static ComplexMatrix identity(std::size_t n) {
        ComplexMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            m(i, i) = 1.0;
        }
        return m;
    }

    static ComplexMatrix diagonal(std::span<const cplx> d) {
        ComplexMatrix m(d.size(), d.size());
        for (std::size_t i = 0; i < d.size(); ++i) {
            m(i, i) = d[i];
        }
        return m;
    }

    static ComplexMatrix diagonal(std::span<const double> d) {
        ComplexMatrix m(d.size(), d.size());
        for (std::size_t i = 0; i < d.size(); ++i) {
            m(i, i) = d[i];
        }
        return m;
    }

    /// |u><v|
    static ComplexMatrix outer(std::span<const cplx> u, std::span<const cplx> v) {
        ComplexMatrix m(u.size(), v.size());
        for (std::size_t i = 0; i < u.size(); ++i) {
            for (std::size_t j = 0; j < v.size(); ++j) {
                m(i, j) = u[i] * std::conj(v[j]);
            }
        }
        return m;
    }

    [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
    [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
    [[nodiscard]] bool is_square() const noexcept { return rows_ == cols_; }
    [[nodiscard]] bool empty() const noexcept { return data_.empty(); }

    cplx &operator()(std::size_t r, std::size_t c) noexcept {
        return data_[r * cols_ + c];
    }
    const cplx &operator()(std::size_t r, std::size_t c) const noexcept {
        return data_[r * cols_ + c];
    }

    [[nodiscard]] std::span<const cplx> entries() const noexcept { return data_; }
    [[nodiscard]] std::span<cplx> entries() noexcept { return data_; }

    [[nodiscard]] bool all_finite() const noexcept {
        return std::all_of(data_.begin(), data_.end(), [](const cplx &z) {
            return std::isfinite(z.real()) && std::isfinite(z.imag());
        });
    }

    [[nodiscard]] ComplexMatrix adjoint() const {
        ComplexMatrix out(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j) {
                out(j, i) = std::conj((*this)(i, j));
            }
        }
        return out;
    }

    [[nodiscard]] cplx trace() const {
        require_square("trace");
        cplx t = 0.0;
        for (std::size_t i = 0; i < rows_; ++i) {
            t += (*this)(i, i);
        }
        return t;
    }

    [[nodiscard]] double frobenius_norm() const noexcept {
        double s = 0.0;
        for (const auto &z : data_) {
            s += std::norm(z);
        }
        return std::sqrt(s);
    }

    [[nodiscard]] double max_abs() const noexcept {
        double m = 0.0;
        for (const auto &z : data_) {
            m = std::max(m, std::abs(z));
        }
        return m;
    }

    ComplexMatrix &operator+=(const ComplexMatrix &o) {
        require_same_shape(o, "+");
        for (std::size_t i = 0; i < data_.size(); ++i) {
            data_[i] += o.data_[i];
        }
        return *this;
    }

    ComplexMatrix &operator-=(const ComplexMatrix &o) {
        require_same_shape(o, "-");
        for (std::size_t i = 0; i < data_.size(); ++i) {
            data_[i] -= o.data_[i];
        }
        return *this;
    }

    ComplexMatrix &operator*=(cplx s) noexcept {
        for (auto &z : data_) {
            z *= s;
        }
        return *this;
    }

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix &b) {
        a += b;
        return a;
    }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix &b) {
        a -= b;
        return a;
    }
    friend ComplexMatrix operator*(ComplexMatrix a, cplx s) {
        a *= s;
        return a;
    }
    friend ComplexMatrix operator*(cplx s, ComplexMatrix a) {
        a *= s;
        return a;
    }
    friend ComplexMatrix operator*(ComplexMatrix a, double s) {
        a *= cplx{s, 0.0};
        return a;
    }
    friend ComplexMatrix operator*(double s, ComplexMatrix a) {
        a *= cplx{s, 0.0};
        return a;
    }

    friend ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b) {
        if (a.cols_ != b.rows_) {
            throw DimensionError("matrix product: " + a.shape() + " * " + b.shape());
        }
        ComplexMatrix out(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i) {
            cplx *orow = &out.data_[i * out.cols_];
            for (std::size_t l = 0; l < a.cols_; ++l) {
                const cplx ail = a(i, l);
                if (ail == cplx{}) {
                    continue;
                }
                const cplx *brow = &b.data_[l * b.cols_];
                for (std::size_t j = 0; j < b.cols_; ++j) {
                    orow[j] += ail * brow[j];
                }
            }
        }
        return out;
    }

    friend bool operator==(const ComplexMatrix &a, const ComplexMatrix &b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    [[nodiscard]] std::string shape() const {
        return std::to_string(rows_) + "x" + std::to_string(cols_);
    }

  private:
    void require_square(const char *what) const {
        if (!is_square()) {
            throw DimensionError(std::string(what) + ": matrix " + shape() +
                                 " is not square");
        }
    }
    void require_same_shape(const ComplexMatrix &o, const char *op) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) {
            throw DimensionError(std::string("matrix ") + op + ": " + shape() +
                                 " vs " + o.shape());
        }
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    CVector data_;
};

/// Matrix-vector product.
inline CVector mat_vec(const ComplexMatrix &m, std::span<const cplx> v) {
    if (m.cols() != v.size()) {
        throw DimensionError("mat_vec: matrix " + m.shape() + " on vector of size " +
                             std::to_string(v.size()));
    }
    CVector out(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        cplx s = 0.0;
        for (std::size_t j = 0; j < m.cols(); ++j) {
            s += m(i, j) * v[j];
        }
        out[i] = s;
    }
    return out;
}

/// <u|v>, antilinear in the first argument.
inline cplx inner(std::span<const cplx> u, std::span<const cplx> v) {
    if (u.size() != v.size()) {
        throw DimensionError("inner: size mismatch");
    }
    cplx s = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        s += std::conj(u[i]) * v[i];
    }
    return s;
}

inline double vector_norm(std::span<const cplx> v) {
    double s = 0.0;
    for (const auto &z : v) {
        s += std::norm(z);
    }
    return std::sqrt(s);
}

/// Hilbert-Schmidt inner product Tr(A^dagger B).
inline cplx hs_inner(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionError("hs_inner: " + a.shape() + " vs " + b.shape());
    }
    cplx s = 0.0;
    const auto ea = a.entries();
    const auto eb = b.entries();
    for (std::size_t i = 0; i < ea.size(); ++i) {
        s += std::conj(ea[i]) * eb[i];
    }
    return s;
}

/// Kronecker product; throws DimensionError if either result dimension
/// exceeds `cap`.
inline ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b,
                          std::size_t cap = tol::kDefaultDimensionCap) {
    const std::size_t r = a.rows() * b.rows();
    const std::size_t c = a.cols() * b.cols();
    if (r > cap || c > cap) {
        throw DimensionError("kron: result " + std::to_string(r) + "x" +
                             std::to_string(c) + " exceeds dimension cap " +
                             std::to_string(cap));
    }
    ComplexMatrix out(r, c);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const cplx aij = a(i, j);
            if (aij == cplx{}) {
                continue;
            }
            for (std::size_t k = 0; k < b.rows(); ++k) {
                for (std::size_t l = 0; l < b.cols(); ++l) {
                    out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
                }
            }
        }
    }
    return out;
}

inline CVector kron(std::span<const cplx> u, std::span<const cplx> v,
                    std::size_t cap = tol::kDefaultDimensionCap) {
    if (u.size() * v.size() > cap) {
        throw DimensionError("kron: vector dimension " +
                             std::to_string(u.size() * v.size()) +
                             " exceeds dimension cap " + std::to_string(cap));
    }
    CVector out;
    out.reserve(u.size() * v.size());
    for (const auto &a : u) {
        for (const auto &b : v) {
            out.push_back(a * b);
        }
    }
    return out;
}

/// Max entrywise deviation from Hermiticity.
inline double hermiticity_defect(const ComplexMatrix &m) {
    if (!m.is_square()) {
        return INFINITY;
    }
    double d = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = i; j < m.cols(); ++j) {
            d = std::max(d, std::abs(m(i, j) - std::conj(m(j, i))));
        }
    }
    return d;
}

inline bool is_hermitian(const ComplexMatrix &m, double tol = tol::kValidation) {
    return hermiticity_defect(m) <= tol;
}

/// Max entrywise deviation of U^dagger U from the identity.
inline double unitarity_defect(const ComplexMatrix &u) {
    if (!u.is_square()) {
        return INFINITY;
    }
    const ComplexMatrix p = u.adjoint() * u;
    double d = 0.0;
    for (std::size_t i = 0; i < p.rows(); ++i) {
        for (std::size_t j = 0; j < p.cols(); ++j) {
            d = std::max(d, std::abs(p(i, j) - (i == j ? cplx{1.0} : cplx{})));
        }
    }
    return d;
}

inline bool is_unitary(const ComplexMatrix &u, double tol = tol::kValidation) {
    return unitarity_defect(u) <= tol;
}

/// Hermitian part (A + A^dagger)/2, used to scrub round-off asymmetry.
inline ComplexMatrix hermitian_part(const ComplexMatrix &a) {
    ComplexMatrix out = a + a.adjoint();
    out *= cplx{0.5, 0.0};
    return out;
}

inline std::size_t pow2(std::size_t e) { return std::size_t{1} << e; }

/// Qubit count of a power-of-two dimension, or throws.
inline std::size_t qubit_count(std::size_t dim) {
    std::size_t q = 0;
    while ((std::size_t{1} << q) < dim) {
        ++q;
    }
    if ((std::size_t{1} << q) != dim) {
        throw DimensionError("dimension " + std::to_string(dim) +
                             " is not a power of two");
    }
    return q;
}

} // namespace vdqc
