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
#include "vdqc/bounds.hpp"
#include "vdqc/monte_carlo.hpp"

using namespace vdqc;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using vdqc_test::kPi;

namespace {

const DensityOperator &plus1() {
    static const DensityOperator rho = DensityOperator::from_pure(plus_state(1));
    return rho;
}

const DensityOperator &zero1() {
    static const DensityOperator rho = DensityOperator::from_pure(PureState::basis(2, 0));
    return rho;
}

const ProofStep &step(const TradeoffReport &r, const std::string &name) {
    for (const auto &s : r.proof_steps) {
        if (s.name == name) {
            return s;
        }
    }
    throw std::runtime_error("missing proof step " + name);
}

TradeoffOptions no_grid() { return {std::nullopt, Placement::Post, false}; }

} // namespace

TEST_CASE("epsilon_h examples", "[bounds]") {
    for (auto m : {SecurityModel::StandAlone, SecurityModel::Composable}) {
        CHECK_THAT(epsilon_h(mix_with_abort(plus1(), 1.0), plus1(), m), WithinAbs(0.0, 1e-12));
        CHECK_THAT(epsilon_h(mix_with_abort(plus1(), 0.9), plus1(), m), WithinAbs(0.1, 1e-10));
        const DensityOperator minus =
            DensityOperator::from_pure(PureState::normalized(CVector{1.0, -1.0}));
        CHECK_THAT(epsilon_h(mix_with_abort(minus, 1.0), plus1(), m), WithinAbs(1.0, 1e-12));
    }
    CHECK_THROWS_AS(epsilon_h(mix_with_abort(plus1(), 1.0), DensityOperator::maximally_mixed(4),
                              SecurityModel::StandAlone),
                    DimensionError);
}

TEST_CASE("epsilon_d_standalone examples", "[bounds]") {
    const double alpha = 0.9;
    const double p_d = 0.6;
    const AbortExtendedState rho =
        mix_with_abort(DensityOperator::from_pure(plus_alpha_state(alpha)), p_d);
    const double s2 = std::pow(std::sin(alpha / 2.0), 2.0);
    CHECK_THAT(epsilon_d_standalone(rho, plus1()), WithinAbs(p_d * s2, 1e-12));
    CHECK_THAT(epsilon_d_standalone_grid(rho, plus1()), WithinAbs(p_d * s2, 1e-6));
    CHECK_THAT(epsilon_d_standalone(ideal_mixture(plus1(), 0.37), plus1()), WithinAbs(0.0, 1e-12));
    CHECK_THAT(epsilon_d_standalone(mix_with_abort(plus1(), 0.0), plus1()), WithinAbs(0.0, 1e-12));
}

TEST_CASE("epsilon_d_composable examples", "[bounds]") {
    const double alpha = 2.2;
    const double p_d = 0.45;
    const AbortExtendedState rho =
        mix_with_abort(DensityOperator::from_pure(plus_alpha_state(alpha)), p_d);
    CHECK_THAT(epsilon_d_composable(rho, plus1()),
               WithinAbs(p_d * std::abs(std::sin(alpha / 2.0)), 1e-12));
    CHECK_THAT(epsilon_d_composable_grid(rho, plus1()),
               WithinAbs(p_d * std::abs(std::sin(alpha / 2.0)), 1e-6));
    CHECK_THAT(epsilon_d_composable(ideal_mixture(plus1(), 0.3), plus1()), WithinAbs(0.0, 1e-12));
    const AbortExtendedState trivial =
        mix_with_abort(DensityOperator::from_pure(plus_alpha_state(0.0)), 0.2);
    CHECK_THAT(epsilon_d_composable(trivial, plus1()), WithinAbs(0.0, 1e-12));
}

TEST_CASE("epsilon_d_composable falls back to the grid for mixed payloads", "[bounds]") {
    const DensityOperator mixed(ComplexMatrix{{0.6, 0.1}, {0.1, 0.4}});
    const AbortExtendedState rho = mix_with_abort(mixed, 0.7);
    CHECK(epsilon_d_composable(rho, plus1()) == epsilon_d_composable_grid(rho, plus1()));
}

TEST_CASE("theorem_bound examples", "[bounds]") {
    using enum SecurityModel;
    CHECK_THAT(theorem_bound(StandAlone, TestVariant::MainText, 10.0), WithinRel(1.0 / 70.0, 1e-15));
    CHECK_THAT(theorem_bound(Composable, TestVariant::MainText, 16.0), WithinRel(0.0625, 1e-15));
    CHECK_THAT(theorem_bound(StandAlone, TestVariant::GeneralTests, 2.0),
               WithinRel(1.0 / 28.0, 1e-15));
    CHECK_THAT(theorem_bound(Composable, TestVariant::GeneralTests, 2.0), WithinRel(0.125, 1e-15));
    CHECK_THROWS_AS(theorem_bound(StandAlone, TestVariant::MainText, 0.0), DomainError);
}

TEST_CASE("run_tradeoff_check on |+> traps at N = 10", "[bounds]") {
    const ProtocolSpec spec = plus_trap_protocol(RoundDistribution::point_mass(10));
    const TradeoffReport r =
        run_tradeoff_check(spec, SecurityModel::StandAlone, TestVariant::MainText);
    const double x = 4.0 / 90.0;
    const double eps_d = std::pow(1.0 - x, 10.0) * x;
    CHECK_THAT(r.eps_h, WithinAbs(0.0, 1e-12));
    CHECK_THAT(r.eps_d, WithinAbs(eps_d, 1e-12));
    CHECK_THAT(r.eps_d, WithinAbs(0.0282, 1e-4));
    CHECK_THAT(r.bound, WithinAbs(1.0 / 70.0, 1e-15));
    CHECK(r.satisfied);
    CHECK(r.passed());
    REQUIRE(r.proof_steps.size() == proof_step_names().size());
    for (std::size_t j = 0; j < r.proof_steps.size(); ++j) {
        CHECK(r.proof_steps[j].name == proof_step_names()[j]);
        CHECK(r.proof_steps[j].holds);
    }
    CHECK(step(r, "grid_agreement").applicable);

    // Independent estimate of p_D by sampling.
    const PhaseAttack atk(r.alpha, Placement::Post);
    const auto mc = monte_carlo_run(spec, atk, plus1(), ComplexMatrix::identity(2), 100000, 17);
    CHECK(std::abs(mc.accept_rate - r.p_d) <= monte_carlo_tolerance(r.p_d, 100000));
}

TEST_CASE("run_tradeoff_check with traps blind to the attack", "[bounds]") {
    for (double n : {1.0, 3.0, 12.0}) {
        const ProtocolSpec spec{RoundDistribution::point_mass(static_cast<std::size_t>(n)), 1,
                                computational_traps(), matched_per_round()};
        const TradeoffReport r =
            run_tradeoff_check(spec, SecurityModel::StandAlone, TestVariant::MainText, no_grid());
        CHECK_THAT(r.p_d, WithinAbs(1.0, 1e-15));
        CHECK_THAT(r.eps_d, WithinAbs(4.0 / (9.0 * n), 1e-12));
        CHECK(r.satisfied);
    }
}

TEST_CASE("alpha override of zero flags the trivial attack", "[bounds]") {
    const ProtocolSpec spec = plus_trap_protocol(RoundDistribution::point_mass(4));
    const TradeoffReport r = run_tradeoff_check(spec, SecurityModel::Composable,
                                                TestVariant::MainText, {0.0, Placement::Pre, true});
    CHECK_THAT(r.eps_d, WithinAbs(0.0, 1e-12));
    CHECK(r.trivial_attack);
    CHECK_FALSE(r.bound_applicable);
    CHECK_FALSE(step(r, "final").applicable);
    CHECK_FALSE(step(r, "chain").applicable);
    CHECK(r.passed());
}

TEST_CASE("run_tradeoff_check rejects N below the arcsin domain", "[bounds][errors]") {
    const ProtocolSpec spec = plus_trap_protocol(RoundDistribution({{0, 0.9}, {1, 0.1}}));
    CHECK_THROWS_AS(run_tradeoff_check(spec, SecurityModel::StandAlone, TestVariant::MainText),
                    DomainError);
}

TEST_CASE("ideal_vs_real_distinguishability examples", "[bounds]") {
    const ComplexMatrix id = ComplexMatrix::identity(2);
    const ProtocolSpec spec = plus_trap_protocol(RoundDistribution::point_mass(3));
    const auto honest = ideal_vs_real_distinguishability(spec, Honest{}, plus1(), id);
    CHECK_THAT(honest.honest_gap, WithinAbs(0.0, 1e-12));

    // Computational traps never see the flip, so p_D = 1 and the payload is
    // orthogonal to the target.
    const ProtocolSpec comp{RoundDistribution::point_mass(2), 1, computational_traps(),
                            matched_per_round()};
    const PhaseAttack flip(kPi, Placement::Post);
    const auto d = ideal_vs_real_distinguishability(comp, flip, plus1(), id);
    const double p_d = overall_acceptance(comp, flip);
    CHECK_THAT(d.dishonest_gap, WithinAbs(p_d, 1e-6));
    CHECK_THAT(d.dishonest_gap,
               WithinAbs(epsilon_d_composable(client_output_state(comp, flip, plus1(), id), plus1()),
                         1e-6));

    const ProtocolSpec leaky{RoundDistribution::point_mass(1), 1, plus_traps(),
                             matched_per_round(0.95)};
    const auto l = ideal_vs_real_distinguishability(leaky, Honest{}, plus1(), id);
    CHECK_THAT(l.honest_gap, WithinAbs(0.05, 1e-12));
}

TEST_CASE("IdealVDQC outputs", "[bounds]") {
    const IdealVDQC ideal(plus1(), hadamard(), 7);
    CHECK_THAT(ideal.output(0).acceptance_weight(), WithinAbs(1.0, 1e-15));
    CHECK(vdqc_test::max_abs_diff(ideal.output(0).payload()->matrix(), zero1().matrix()) < 1e-12);
    CHECK_THAT(ideal.output(1).abort_weight(), WithinAbs(1.0, 1e-15));
    CHECK_THAT(ideal.mixture(0.4).acceptance_weight(), WithinAbs(0.4, 1e-15));
    CHECK(ideal.leakage().register_size == 2);
    CHECK(ideal.leakage().circuit_length_bound == 7);
    CHECK_THROWS_AS(ideal.output(2), DomainError);
    CHECK_THROWS_AS(IdealVDQC(plus1(), ComplexMatrix::identity(4)), ContractViolation);
}

TEST_CASE("property: max_p (sqrt(p) a + sqrt(1-p) b)^2 = a^2 + b^2", "[bounds][property]") {
    vdqc_test::CaseGen gen(901);
    for (int t = 0; t < vdqc_test::kPropertyCases; ++t) {
        const double a = gen.uniform();
        const double b = gen.uniform();
        const auto [p, v] = minimize_over_p([&](double q) {
            const double g = std::sqrt(q) * a + std::sqrt(1.0 - q) * b;
            return -g * g;
        });
        REQUIRE_THAT(-v, WithinAbs(a * a + b * b, 1e-6));
        if (a * a + b * b > 1e-6) {
            REQUIRE_THAT(p, WithinAbs(a * a / (a * a + b * b), 1e-3));
        }
    }
}

TEST_CASE("property: (1 - x/n)^n >= 1 - x on a grid", "[bounds][property]") {
    // Bernoulli's inequality needs an exponent of at least 1.
    for (int ni = 2; ni <= 200; ++ni) {
        const double n = ni * 0.5;
        for (int xi = -20; xi <= 20; ++xi) {
            const double x = n * xi / 20.0;
            REQUIRE(std::pow(1.0 - x / n, n) >= 1.0 - x - 1e-12);
        }
    }
}

TEST_CASE("property: closed-form eps_D agrees with the p-grid", "[bounds][property]") {
    vdqc_test::CaseGen gen(902);
    for (int t = 0; t < vdqc_test::kPropertyCases; ++t) {
        const double p_d = gen.uniform();
        const PureState target(gen.unit_vector(2));
        const PureState payload(gen.unit_vector(2));
        const DensityOperator tgt = DensityOperator::from_pure(target);
        const AbortExtendedState rho = mix_with_abort(DensityOperator::from_pure(payload), p_d);
        REQUIRE_THAT(epsilon_d_standalone(rho, tgt),
                     WithinAbs(epsilon_d_standalone_grid(rho, tgt), 1e-6));
        REQUIRE_THAT(epsilon_d_composable(rho, tgt),
                     WithinAbs(epsilon_d_composable_grid(rho, tgt), 1e-6));
        // Block form: stand-alone eps_D = p_D (1 - |<phi|psi>|^2).
        REQUIRE_THAT(epsilon_d_standalone(rho, tgt),
                     WithinAbs(p_d * (1.0 - std::norm(inner(payload, target))), 1e-10));
    }
}

TEST_CASE("property: eps_H = 1 - p_H in both models for block states", "[bounds][property]") {
    vdqc_test::CaseGen gen(903);
    for (int t = 0; t < vdqc_test::kPropertyCases; ++t) {
        const std::size_t d = gen.index(2, 4);
        const DensityOperator tgt(gen.density(d, gen.index(1, d)));
        const double p = gen.uniform();
        const AbortExtendedState rho = mix_with_abort(tgt, p);
        REQUIRE_THAT(epsilon_h(rho, tgt, SecurityModel::StandAlone), WithinAbs(1.0 - p, 1e-9));
        REQUIRE_THAT(epsilon_h(rho, tgt, SecurityModel::Composable), WithinAbs(1.0 - p, 1e-9));
    }
}

TEST_CASE("theorem sweeps across trap families", "[bounds]") {
    // |+>, random and damped-acceptance families at N in {1, 2, 5, 10, 50, 200}.
    for (double n : {1.0, 2.0, 5.0, 10.0, 50.0, 200.0}) {
        const RoundDistribution om = RoundDistribution::point_mass(static_cast<std::size_t>(n));
        std::vector<ProtocolSpec> specs{plus_trap_protocol(om),
                                        ProtocolSpec{om, 1, random_traps(5), matched_per_round()},
                                        ProtocolSpec{om, 2, plus_traps(), matched_per_round(0.99)}};
        for (const auto &spec : specs) {
            const auto sa =
                run_tradeoff_check(spec, SecurityModel::StandAlone, TestVariant::MainText, no_grid());
            const auto co =
                run_tradeoff_check(spec, SecurityModel::Composable, TestVariant::MainText, no_grid());
            CHECK(sa.eps_h + sa.eps_d >= 1.0 / (7.0 * n) - 1e-12);
            CHECK(co.eps_h + co.eps_d >= 1.0 / (4.0 * std::sqrt(n)) - 1e-12);
            CHECK(sa.passed());
            CHECK(co.passed());
        }
    }
}

TEST_CASE("eps_D at the optimal angle does not increase with N for |+> traps", "[bounds]") {
    for (auto m : {SecurityModel::StandAlone, SecurityModel::Composable}) {
        double prev = INFINITY;
        for (std::size_t n = 1; n <= 60; ++n) {
            const auto r = run_tradeoff_check(plus_trap_protocol(RoundDistribution::point_mass(n)),
                                              m, TestVariant::MainText, no_grid());
            CHECK(r.eps_d <= prev + 1e-15);
            prev = r.eps_d;
        }
    }
}
