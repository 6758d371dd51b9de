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

#include <catch_amalgamated.hpp>

#include "support.hpp"
#include "vdqc/matrix.hpp"
#include "vdqc/quantum_objects.hpp"

using namespace vdqc;
using vdqc_test::max_abs_diff;

TEST_CASE("kron of identities is the identity", "[matrix]") {
    CHECK(kron(ComplexMatrix::identity(2), ComplexMatrix::identity(2)) ==
          ComplexMatrix::identity(4));
}

TEST_CASE("kron of P(pi) and I2 is diag(1,1,-1,-1)", "[matrix]") {
    const std::vector<double> d{1.0, 1.0, -1.0, -1.0};
    CHECK(max_abs_diff(kron(phase_gate(vdqc_test::kPi), ComplexMatrix::identity(2)),
                       ComplexMatrix::diagonal(std::span<const double>(d))) < 1e-15);
}

TEST_CASE("kron of basis projectors is the two-qubit basis projector", "[matrix]") {
    const ComplexMatrix p0 = PureState::basis(2, 0).projector();
    const ComplexMatrix p1 = PureState::basis(2, 1).projector();
    CHECK(kron(p0, p1) == PureState::basis(4, 1).projector());
}

TEST_CASE("kron respects the dimension cap", "[matrix][errors]") {
    CHECK_THROWS_AS(kron(ComplexMatrix::identity(64), ComplexMatrix::identity(128)),
                    DimensionError);
    CHECK_NOTHROW(kron(ComplexMatrix::identity(4), ComplexMatrix::identity(4), 16));
    CHECK_THROWS_AS(kron(ComplexMatrix::identity(4), ComplexMatrix::identity(8), 16),
                    DimensionError);
    const CVector v(8, cplx{1.0});
    CHECK_THROWS_AS(kron(std::span<const cplx>(v), std::span<const cplx>(v), 32),
                    DimensionError);
}

TEST_CASE("construction and shape errors", "[matrix][errors]") {
    CHECK_THROWS_AS(ComplexMatrix(0, 3), DimensionError);
    CHECK_THROWS_AS(ComplexMatrix(2, 2, CVector(3)), DimensionError);
    CHECK_THROWS_AS(ComplexMatrix(1, 1, CVector{cplx{NAN, 0.0}}), ContractViolation);
    CHECK_THROWS_AS((ComplexMatrix{{1.0, 2.0}, {3.0}}), DimensionError);
    CHECK_THROWS_AS(ComplexMatrix(2, 3) * ComplexMatrix(2, 3), DimensionError);
    CHECK_THROWS_AS(ComplexMatrix(2, 3) + ComplexMatrix(3, 2), DimensionError);
    CHECK_THROWS_AS(ComplexMatrix(2, 3).trace(), DimensionError);
    const CVector v(3);
    CHECK_THROWS_AS(mat_vec(ComplexMatrix::identity(2), v), DimensionError);
    CHECK_THROWS_AS(inner(CVector(2), CVector(3)), DimensionError);
    CHECK_THROWS_AS(hs_inner(ComplexMatrix(2, 2), ComplexMatrix(3, 3)), DimensionError);
    CHECK_THROWS_AS(qubit_count(6), DimensionError);
    CHECK(qubit_count(8) == 3);
}

TEST_CASE("adjoint, trace and Hilbert-Schmidt inner product", "[matrix]") {
    const ComplexMatrix a{{1.0, cplx{0.0, 2.0}}, {3.0, cplx{4.0, -1.0}}};
    const ComplexMatrix ad = a.adjoint();
    CHECK(ad(0, 1) == cplx{3.0, 0.0});
    CHECK(ad(1, 0) == cplx{0.0, -2.0});
    CHECK(a.trace() == cplx{5.0, -1.0});
    CHECK(std::abs(hs_inner(a, a) - cplx{a.frobenius_norm() * a.frobenius_norm()}) < 1e-12);
    CHECK(hermiticity_defect(a) > 1.0);
    CHECK(is_hermitian(hermitian_part(a)));
    CHECK(is_unitary(hadamard()));
    CHECK_FALSE(is_unitary(a));
}

TEST_CASE("property: kron matches the index formula and mixed-product rule", "[matrix][property]") {
    vdqc_test::CaseGen gen(101);
    for (int t = 0; t < vdqc_test::kPropertyCases; ++t) {
        const std::size_t r1 = gen.index(1, 3), c1 = gen.index(1, 3);
        const std::size_t r2 = gen.index(1, 3), c2 = gen.index(1, 3);
        const ComplexMatrix a = gen.gaussian_matrix(r1, c1);
        const ComplexMatrix b = gen.gaussian_matrix(r2, c2);
        REQUIRE(max_abs_diff(kron(a, b), vdqc_test::oracle_kron(a, b)) < 1e-14);
        const ComplexMatrix c = gen.gaussian_matrix(c1, gen.index(1, 3));
        const ComplexMatrix d = gen.gaussian_matrix(c2, gen.index(1, 3));
        // (A (x) B)(C (x) D) = AC (x) BD
        REQUIRE(max_abs_diff(kron(a, b) * kron(c, d), kron(a * c, b * d)) < 1e-11);
        REQUIRE(max_abs_diff(kron(a, b).adjoint(), kron(a.adjoint(), b.adjoint())) < 1e-15);
    }
}

TEST_CASE("property: matrix product agrees with Eigen", "[matrix][property]") {
    vdqc_test::CaseGen gen(102);
    for (int t = 0; t < vdqc_test::kPropertyCases; ++t) {
        const std::size_t n = gen.index(1, 6), m = gen.index(1, 6), p = gen.index(1, 6);
        const ComplexMatrix a = gen.gaussian_matrix(n, m);
        const ComplexMatrix b = gen.gaussian_matrix(m, p);
        const Eigen::MatrixXcd ref = vdqc_test::to_eigen(a) * vdqc_test::to_eigen(b);
        const ComplexMatrix got = a * b;
        double err = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < p; ++j) {
                err = std::max(err, std::abs(got(i, j) - ref(i, j)));
            }
        }
        REQUIRE(err < 1e-12);
    }
}
