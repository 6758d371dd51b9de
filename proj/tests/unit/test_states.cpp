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
#include "vdqc/random.hpp"
#include "vdqc/states.hpp"

using namespace vdqc;
using Catch::Matchers::WithinAbs;
using vdqc_test::max_abs_diff;

TEST_CASE("PureState validates its norm", "[states][errors]") {
    CHECK_NOTHROW(PureState(CVector{1.0, 0.0}));
    CHECK_THROWS_AS(PureState(CVector{1.0, 1.0}), ContractViolation);
    CHECK_THROWS_AS(PureState(CVector{}), DimensionError);
    CHECK_THROWS_AS(PureState::normalized(CVector{0.0, 0.0}), ContractViolation);
    CHECK_THROWS_AS(PureState::basis(2, 2), DimensionError);
    const PureState p = PureState::normalized(CVector{3.0, cplx{0.0, 4.0}});
    CHECK_THAT(std::abs(p[0]), WithinAbs(0.6, 1e-15));
    CHECK_THAT(std::abs(p[1]), WithinAbs(0.8, 1e-15));
}

TEST_CASE("DensityOperator validates Hermiticity, trace and positivity", "[states][errors]") {
    CHECK_NOTHROW(DensityOperator(ComplexMatrix{{0.5, 0.0}, {0.0, 0.5}}));
    CHECK_THROWS_AS(DensityOperator(ComplexMatrix(2, 3)), DimensionError);
    CHECK_THROWS_AS(DensityOperator(ComplexMatrix{{0.5, 0.1}, {0.0, 0.5}}), ContractViolation);
    CHECK_THROWS_AS(DensityOperator(ComplexMatrix{{0.6, 0.0}, {0.0, 0.5}}), ContractViolation);
    CHECK_THROWS_AS(DensityOperator(ComplexMatrix{{1.5, 0.0}, {0.0, -0.5}}), NotPsdError);
}

TEST_CASE("purity, dominant vector and maximally mixed state", "[states]") {
    const DensityOperator mm = DensityOperator::maximally_mixed(4);
    CHECK_THAT(mm.purity(), WithinAbs(0.25, 1e-15));
    CHECK_FALSE(mm.is_pure());
    const PureState psi = PureState::normalized(CVector{1.0, cplx{0.0, 2.0}});
    const DensityOperator rho = DensityOperator::from_pure(psi);
    CHECK(rho.is_pure());
    CHECK_THAT(std::abs(inner(rho.dominant_vector(), psi)), WithinAbs(1.0, 1e-12));
}

TEST_CASE("conjugate and evolve require unitaries", "[states][errors]") {
    const DensityOperator rho = DensityOperator::maximally_mixed(2);
    CHECK_THROWS_AS(conjugate(ComplexMatrix{{1.0, 1.0}, {0.0, 1.0}}, rho), ContractViolation);
    CHECK_THROWS_AS(evolve(ComplexMatrix::identity(3), PureState::basis(2, 0)), DimensionError);
}

TEST_CASE("property: tensor products and conjugation stay valid", "[states][property]") {
    vdqc_test::CaseGen gen(301);
    Rng rng(302);
    for (int t = 0; t < vdqc_test::kPropertyCases; ++t) {
        const std::size_t da = gen.index(1, 4);
        const std::size_t db = gen.index(1, 4);
        const PureState u(gen.unit_vector(da));
        const PureState v(gen.unit_vector(db));
        const PureState uv = tensor(u, v);
        REQUIRE(uv.dim() == da * db);
        REQUIRE(max_abs_diff(uv.projector(), kron(u.projector(), v.projector())) < 1e-14);

        const DensityOperator a(gen.density(da, gen.index(1, da)));
        const DensityOperator b(gen.density(db, gen.index(1, db)));
        const DensityOperator ab = tensor(a, b);
        REQUIRE_THAT(ab.matrix().trace().real(), WithinAbs(1.0, 1e-12));
        REQUIRE_THAT(ab.purity(), WithinAbs(a.purity() * b.purity(), 1e-12));

        const ComplexMatrix w = random_unitary(da, rng);
        REQUIRE(unitarity_defect(w) < 1e-12);
        const DensityOperator c = conjugate(w, a);
        REQUIRE_THAT(c.purity(), WithinAbs(a.purity(), 1e-12));
        // Round trip through the checked constructor.
        REQUIRE_NOTHROW(DensityOperator(c.matrix()));
        const DensityOperator r = random_density(da, rng);
        REQUIRE_THAT(r.matrix().trace().real(), WithinAbs(1.0, 1e-12));
    }
}
