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
#include "vdqc/channel.hpp"
#include "vdqc/comb.hpp"
#include "vdqc/quantum_objects.hpp"
#include "vdqc/random.hpp"

using namespace vdqc;
using Catch::Matchers::WithinAbs;
using vdqc_test::max_abs_diff;

namespace {

// sum_j (K_j (x) 1) rho (K_j (x) 1)^dagger with the Kronecker product
// written out.
ComplexMatrix apply_with_ancilla_oracle(const Channel &ch, const ComplexMatrix &rho,
                                        std::size_t da) {
    const ComplexMatrix id = ComplexMatrix::identity(da);
    ComplexMatrix out(ch.out_dim() * da, ch.out_dim() * da);
    for (const auto &k : ch.kraus()) {
        const ComplexMatrix big = vdqc_test::oracle_kron(k, id);
        out += big * rho * big.adjoint();
    }
    return out;
}

Channel random_gen_channel(vdqc_test::CaseGen &gen, std::size_t d, std::size_t count) {
    // Columns of a Haar unitary on d * count give an isometry d -> d * count.
    const ComplexMatrix v = gen.unitary(d * count);
    std::vector<ComplexMatrix> ks;
    for (std::size_t e = 0; e < count; ++e) {
        ComplexMatrix k(d, d);
        for (std::size_t a = 0; a < d; ++a) {
            for (std::size_t b = 0; b < d; ++b) {
                k(a, b) = v(e * d + a, b);
            }
        }
        ks.push_back(std::move(k));
    }
    return Channel(std::move(ks));
}

} // namespace

TEST_CASE("Channel rejects malformed Kraus lists", "[channel][errors]") {
    CHECK_THROWS_AS(Channel(std::vector<ComplexMatrix>{}), ContractViolation);
    CHECK_THROWS_AS(Channel({ComplexMatrix::identity(2), ComplexMatrix::identity(3)}),
                    DimensionError);
    CHECK_THROWS_AS(Channel({ComplexMatrix::identity(2), ComplexMatrix::identity(2)}),
                    ContractViolation);
    CHECK_THROWS_AS(Channel::unitary(ComplexMatrix{{1.0, 1.0}, {0.0, 1.0}}), ContractViolation);
    CHECK_THROWS_AS(Channel::dephasing(1.5), DomainError);
    CHECK_THROWS_AS(Channel::depolarizing(-0.1), DomainError);
    CHECK_THROWS_AS(Channel::amplitude_damping(NAN), DomainError);
    CHECK_THROWS_AS(Channel::identity(2).apply(ComplexMatrix::identity(3)), DimensionError);
    CHECK_THROWS_AS(compose(Channel::identity(2), Channel::identity(4)), DimensionError);
    CHECK_THROWS_AS(apply_with_ancilla(Channel::identity(2), ComplexMatrix::identity(3), 2),
                    DimensionError);
}

TEST_CASE("standard channels act as expected on |+><+|", "[channel]") {
    const ComplexMatrix plus = plus_state(1).projector();
    CHECK(max_abs_diff(Channel::identity(2).apply(plus), plus) < 1e-15);
    // Full dephasing kills the coherences.
    const ComplexMatrix deph = Channel::dephasing(0.5).apply(plus);
    CHECK(max_abs_diff(deph, ComplexMatrix::identity(2) * cplx{0.5}) < 1e-15);
    // Depolarizing at 3/4 is the completely depolarizing channel.
    const ComplexMatrix dep = Channel::depolarizing(0.75).apply(plus);
    CHECK(max_abs_diff(dep, ComplexMatrix::identity(2) * cplx{0.5}) < 1e-15);
    // Full amplitude damping sends everything to |0>.
    const ComplexMatrix damp = Channel::amplitude_damping(1.0).apply(plus);
    CHECK(max_abs_diff(damp, zero_state(1).projector()) < 1e-15);
    CHECK(Channel::depolarizing(0.3).kraus().size() == 4);
}

TEST_CASE("Choi matrix of the identity channel is the unnormalized Bell projector",
          "[channel]") {
    const ComplexMatrix j = Channel::identity(2).choi();
    ComplexMatrix expect(4, 4);
    for (std::size_t a : {0U, 3U}) {
        for (std::size_t b : {0U, 3U}) {
            expect(a, b) = 1.0;
        }
    }
    CHECK(max_abs_diff(j, expect) < 1e-15);
    CHECK(Channel::identity(2).is_trace_preserving());
    CHECK(Channel::amplitude_damping(0.3).is_trace_preserving());
}

TEST_CASE("compose applies the right-hand channel first", "[channel]") {
    const ComplexMatrix x{{0.0, 1.0}, {1.0, 0.0}};
    const Channel flip = Channel::unitary(x);
    const Channel damp = Channel::amplitude_damping(1.0);
    const ComplexMatrix zero = zero_state(1).projector();
    // damp then flip: |1><1|; flip then damp: |0><0|.
    CHECK(max_abs_diff(compose(flip, damp).apply(zero), x * zero * x) < 1e-15);
    CHECK(max_abs_diff(compose(damp, flip).apply(zero), zero) < 1e-15);
}

TEST_CASE("property: compose matches sequential application", "[channel][property]") {
    vdqc_test::CaseGen gen(1101);
    for (int t = 0; t < vdqc_test::kPropertyCases; ++t) {
        const std::size_t d = gen.index(1, 3);
        const Channel a = random_gen_channel(gen, d, gen.index(1, 3));
        const Channel b = random_gen_channel(gen, d, gen.index(1, 3));
        const ComplexMatrix rho = gen.density(d, gen.index(1, d));
        const Channel ab = compose(a, b);
        REQUIRE(ab.kraus().size() <= d * d);
        REQUIRE(max_abs_diff(ab.apply(rho), a.apply(b.apply(rho))) < 1e-12);
        REQUIRE(ab.trace_preservation_defect() < 1e-9);
    }
}

TEST_CASE("property: canonical Kraus form reproduces the channel", "[channel][property]") {
    vdqc_test::CaseGen gen(1102);
    for (int t = 0; t < vdqc_test::kPropertyCases; ++t) {
        const std::size_t d = gen.index(1, 4);
        const Channel ch = random_gen_channel(gen, d, gen.index(1, 5));
        const Channel canon = ch.canonicalized();
        REQUIRE(canon.kraus().size() <= d * d);
        REQUIRE(max_abs_diff(canon.choi(), ch.choi()) < 1e-12);
        const ComplexMatrix rho = gen.density(d, gen.index(1, d));
        REQUIRE(max_abs_diff(canon.apply(rho), ch.apply(rho)) < 1e-12);
        REQUIRE(ch.is_trace_preserving());
        // Tr J = d for a trace-preserving map.
        REQUIRE_THAT(ch.choi().trace().real(), WithinAbs(static_cast<double>(d), 1e-12));
    }
}

TEST_CASE("property: apply_with_ancilla agrees with the explicit Kronecker product",
          "[channel][property]") {
    vdqc_test::CaseGen gen(1103);
    for (int t = 0; t < vdqc_test::kPropertyCases; ++t) {
        const std::size_t d = gen.index(1, 4);
        const std::size_t da = gen.index(1, 4);
        const Channel ch = random_gen_channel(gen, d, gen.index(1, 3));
        const ComplexMatrix rho = gen.density(d * da, gen.index(1, d * da));
        const ComplexMatrix got = apply_with_ancilla(ch, rho, da);
        REQUIRE(max_abs_diff(got, apply_with_ancilla_oracle(ch, rho, da)) < 1e-12);
        REQUIRE_THAT(got.trace().real(), WithinAbs(1.0, 1e-12));
    }
}

TEST_CASE("library random_channel is trace preserving with the requested rank",
          "[channel]") {
    Rng rng(5);
    for (std::size_t count = 1; count <= 4; ++count) {
        const Channel ch = random_channel(4, count, rng);
        CHECK(ch.kraus().size() == count);
        CHECK(ch.trace_preservation_defect() < 1e-12);
    }
    CHECK_THROWS_AS(random_channel(2, 0, rng), ContractViolation);
}
