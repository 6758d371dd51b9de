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
 * Cut-and-choose with general tests: the trap rounds are plugged into a comb,
 * the client may keep an auxiliary register Y entangled with the test input,
 * and acceptance is a single measurement on the comb output and Y.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <utility>
#include <vector>

#include "bounds.hpp"
#include "comb.hpp"
#include "measures.hpp"
#include "numerical_range.hpp"
#include "protocol.hpp"

namespace vdqc {

/// Test for fixed (n, ell): input chi on X^W (x) Y, unitaries T_1..T_n for
/// the holes, and the accepting measurement element.
struct GeneralTest {
    DensityOperator chi;
    std::size_t aux_dim; ///< dimension of Y
    std::vector<ComplexMatrix> unitaries;
    PovmElement accept;
};

/**
 * @brief Acceptance probability Tr(mu (B(S(T_1), ..., S(T_n)) (x) 1_Y)(chi)).
 */
inline double protocol2_acceptance(const GeneralTest &test, const Comb &comb,
                                   const ServerStrategy &strategy) {
    if (test.unitaries.size() != comb.n_holes()) {
        throw ContractViolation("protocol2_acceptance: " + std::to_string(test.unitaries.size()) +
                                " test unitaries for a comb with " +
                                std::to_string(comb.n_holes()) + " holes");
    }
    const std::size_t d = comb.register_dim() * test.aux_dim;
    if (test.chi.dim() != d || test.accept.dim() != d) {
        throw DimensionError("protocol2_acceptance: test acts on dimension " +
                             std::to_string(test.chi.dim()) + ", comb and Y give " +
                             std::to_string(d));
    }
    std::vector<ComplexMatrix> rounds;
    rounds.reserve(test.unitaries.size());
    for (const auto &t : test.unitaries) {
        rounds.push_back(transform_round(strategy, t, comb.k()));
    }
    const Channel plugged = comb.plug_unitaries(rounds);
    const ComplexMatrix out = apply_with_ancilla(plugged, test.chi.matrix(), test.aux_dim);
    return std::clamp(test.accept.expectation(out), 0.0, 1.0);
}

/// Comb and test used for a given (n, ell).
struct GeneralInstance {
    Comb comb;
    GeneralTest test;
};

struct GeneralSetup {
    RoundDistribution omega;
    std::size_t k;
    OutputRoundRule output_rule;
    /// Called for n >= 1 only: without test rounds the client always accepts.
    std::function<GeneralInstance(std::size_t n, std::size_t ell)> instance;
};

/// p = sum_n Omega(n) sum_ell omega_n(ell) p_{(n, ell)}.
inline double overall_acceptance_general(const GeneralSetup &setup,
                                         const ServerStrategy &strategy) {
    double p = 0.0;
    for (const auto &[n, prob] : setup.omega.support()) {
        if (n == 0) {
            p += prob;
            continue;
        }
        const std::vector<double> w = output_round_weights(setup.output_rule, n);
        for (std::size_t ell = 1; ell <= n + 1; ++ell) {
            if (w[ell - 1] == 0.0) {
                continue;
            }
            const GeneralInstance inst = setup.instance(n, ell);
            if (inst.comb.k() != setup.k) {
                throw DimensionError("general setup (n=" + std::to_string(n) +
                                     ", ell=" + std::to_string(ell) + "): comb k mismatch");
            }
            p += prob * w[ell - 1] * protocol2_acceptance(inst.test, inst.comb, strategy);
        }
    }
    return std::clamp(p, 0.0, 1.0);
}

/// Product state over registers 1..n followed by the client's copy of each
/// register: sum_x |x>_X |x>_Y / 2^{n/2}, i.e. a Bell pair per test round.
inline PureState paired_bell_state(std::size_t n) {
    const std::size_t d = pow2(n);
    CVector v(d * d);
    const double a = 1.0 / std::sqrt(static_cast<double>(d));
    for (std::size_t x = 0; x < d; ++x) {
        v[x * d + x] = a;
    }
    return PureState(std::move(v));
}

/**
 * @brief Bell-pair tests on the trivial parallel comb, k = 1.
 *
 * Round i of n acts on register i, whose qubit is maximally entangled with
 * qubit i of Y. T_i = 1 for odd i and H for even i. The client accepts on the
 * projector onto the honest output. Against the phase attack every hole
 * passes with probability cos^2(alpha/2).
 */
inline GeneralSetup bell_test_setup(RoundDistribution omega,
                                    OutputRoundRule output_rule = UniformOutputRound{}) {
    if (omega.max_n() > 4) {
        throw DimensionError("bell_test_setup: n = " + std::to_string(omega.max_n()) +
                             " exceeds the supported maximum of 4");
    }
    auto make = [](std::size_t n, std::size_t) {
        const PureState chi = paired_bell_state(n);
        std::vector<ComplexMatrix> ts;
        ComplexMatrix layer = ComplexMatrix::identity(1);
        for (std::size_t i = 1; i <= n; ++i) {
            ts.push_back(i % 2 == 1 ? ComplexMatrix::identity(2) : hadamard());
            layer = kron(layer, ts.back());
        }
        const ComplexMatrix full = kron(layer, ComplexMatrix::identity(pow2(n)));
        return GeneralInstance{Comb::parallel(1, n),
                               GeneralTest{DensityOperator::from_pure(chi), pow2(n), ts,
                                           PovmElement::projector(evolve(full, chi))}};
    };
    return GeneralSetup{std::move(omega), 1, std::move(output_rule), make};
}

/**
 * @brief Embeds a main-text protocol into the general framework: parallel
 * comb with one register per test round, trivial Y, chi the product of the
 * trap inputs, and mu the product of the per-round elements (or the global
 * element).
 */
inline GeneralSetup general_setup_from_protocol(const ProtocolSpec &spec) {
    auto make = [spec](std::size_t n, std::size_t ell) {
        detail::check_round_index(n, ell);
        CVector chi{cplx{1.0}};
        std::vector<ComplexMatrix> ts;
        const auto *per_round = std::get_if<PerRoundAcceptance>(&spec.acceptance);
        PovmElement mu = PovmElement::identity(1);
        for (std::size_t i = 1; i <= n + 1; ++i) {
            if (i == ell) {
                continue;
            }
            const TrapRound trap = spec.traps(spec.k, n, i);
            chi = kron(chi, trap.input.amplitudes(), spec.dimension_cap);
            if (per_round != nullptr) {
                mu = tensor(mu, per_round->element(spec.k, n, i, trap), spec.dimension_cap);
            }
            ts.push_back(trap.unitary);
        }
        if (per_round == nullptr) {
            mu = std::get<GlobalAcceptance>(spec.acceptance).element(spec.k, n, ell);
        }
        return GeneralInstance{
            Comb::parallel(spec.k, n),
            GeneralTest{DensityOperator::from_pure(PureState(std::move(chi))), 1, std::move(ts),
                        std::move(mu)}};
    };
    return GeneralSetup{spec.omega, spec.k, spec.output_rule, make};
}

/**
 * @brief General tests on a fixed comb.
 *
 * Registers start in the trap inputs chi_1..chi_W (or, with `bell_inputs`,
 * each qubit maximally entangled with a qubit of Y). The holes receive the
 * trap unitaries of the rounds other than ell, in round order; with
 * `bell_inputs` they alternate 1 and H^{(x) k}. The accepting element is the
 * projector onto the dominant eigenvector of the honest output, which is the
 * honest output itself when all teeth are unitary.
 */
inline GeneralSetup comb_setup(RoundDistribution omega, std::size_t k, TrapGenerator traps,
                               Comb comb, bool bell_inputs) {
    if (comb.k() != k) {
        throw DimensionError("comb_setup: comb has k=" + std::to_string(comb.k()) +
                             ", protocol has k=" + std::to_string(k));
    }
    for (const auto &e : omega.support()) {
        if (e.n != 0 && e.n != comb.n_holes()) {
            throw ContractViolation("comb_setup: Omega puts mass on n=" + std::to_string(e.n) +
                                    " but the comb has " + std::to_string(comb.n_holes()) +
                                    " holes");
        }
    }
    auto make = [k, traps, comb, bell_inputs](std::size_t n, std::size_t ell) {
        detail::check_round_index(n, ell);
        const std::size_t w = comb.registers();
        CVector chi;
        std::size_t aux = 1;
        if (bell_inputs) {
            const PureState bell = paired_bell_state(k * w);
            chi.assign(bell.amplitudes().begin(), bell.amplitudes().end());
            aux = pow2(k * w);
        } else {
            chi = CVector{cplx{1.0}};
            for (std::size_t r = 0; r < w; ++r) {
                chi = kron(chi, traps(k, n, r + 1).input.amplitudes());
            }
        }
        std::vector<ComplexMatrix> ts;
        ComplexMatrix h = ComplexMatrix::identity(1);
        for (std::size_t q = 0; q < k; ++q) {
            h = kron(h, hadamard());
        }
        std::size_t hole = 0;
        for (std::size_t i = 1; i <= n + 1; ++i) {
            if (i == ell) {
                continue;
            }
            ++hole;
            if (bell_inputs) {
                ts.push_back(hole % 2 == 1 ? ComplexMatrix::identity(pow2(k)) : h);
            } else {
                ts.push_back(traps(k, n, i).unitary);
            }
        }
        const DensityOperator chi_rho = DensityOperator::from_pure(PureState(std::move(chi)));
        const Channel honest = comb.plug_unitaries(ts);
        const ComplexMatrix out = apply_with_ancilla(honest, chi_rho.matrix(), aux);
        const HermitianEigen e = hermitian_eig(hermitian_part(out));
        CVector top(out.rows());
        for (std::size_t r = 0; r < out.rows(); ++r) {
            top[r] = e.vectors(r, out.rows() - 1);
        }
        return GeneralInstance{comb, GeneralTest{chi_rho, aux, std::move(ts),
                                                 PovmElement::projector(
                                                     PureState::normalized(std::move(top)))}};
    };
    return GeneralSetup{std::move(omega), k, UniformOutputRound{}, make};
}

struct GeneralRoundOutcome {
    std::size_t n;
    std::size_t ell;
    double weight;
    double p;
};

/// p_{(n, ell)} for every (n, ell) with n >= 1 in the support.
inline std::vector<GeneralRoundOutcome> general_round_table(const GeneralSetup &setup,
                                                            const ServerStrategy &strategy) {
    std::vector<GeneralRoundOutcome> rows;
    for (const auto &[n, prob] : setup.omega.support()) {
        if (n == 0) {
            rows.push_back({0, 1, prob, 1.0});
            continue;
        }
        const std::vector<double> w = output_round_weights(setup.output_rule, n);
        for (std::size_t ell = 1; ell <= n + 1; ++ell) {
            const GeneralInstance inst = setup.instance(n, ell);
            rows.push_back(
                {n, ell, prob * w[ell - 1], protocol2_acceptance(inst.test, inst.comb, strategy)});
        }
    }
    return rows;
}

/**
 * @brief Random general setup for property runs, k = 1.
 *
 * Omega has up to three support points in 0..max_n, at least one of them
 * positive. Each (n, ell) gets a random comb, a random mixed chi on
 * X^W (x) Y with dim Y in {1, 2}, Haar T_i and a random accepting element.
 * Everything is a deterministic function of `seed`.
 */
inline GeneralSetup random_general_setup(std::uint64_t seed, std::size_t max_n = 3) {
    Rng rng(seed);
    const std::size_t points = 1 + static_cast<std::size_t>(rng.below(3));
    std::vector<RoundDistribution::Entry> entries;
    double total = 0.0;
    for (std::size_t j = 0; j < points; ++j) {
        const double w = 0.05 + rng.uniform();
        // The first support point always has at least one test round.
        const std::size_t n = j == 0 ? 1 + static_cast<std::size_t>(rng.below(max_n))
                                     : static_cast<std::size_t>(rng.below(max_n + 1));
        entries.push_back({n, w});
        total += w;
    }
    for (auto &e : entries) {
        e.probability /= total;
    }
    RoundDistribution omega = RoundDistribution::renormalized(std::move(entries), 1e-9);
    const bool uniform = rng.bernoulli(0.5);
    OutputRoundRule rule = UniformOutputRound{};
    if (!uniform) {
        rule = ExplicitOutputRound{[seed](std::size_t n) {
            Rng r(seed ^ (0x5bd1e995ULL * (n + 1)));
            std::vector<double> w(n + 1);
            double s = 0.0;
            for (auto &x : w) {
                x = 0.1 + r.uniform();
                s += x;
            }
            for (auto &x : w) {
                x /= s;
            }
            return w;
        }};
    }
    auto make = [seed](std::size_t n, std::size_t ell) {
        Rng r(seed * 0x9e3779b97f4a7c15ULL + 1000 * n + ell);
        Comb comb = random_comb(n, r);
        const std::size_t aux = 1 + static_cast<std::size_t>(r.below(2));
        const std::size_t d = comb.register_dim() * aux;
        std::vector<ComplexMatrix> ts;
        for (std::size_t i = 0; i < n; ++i) {
            ts.push_back(random_unitary(2, r));
        }
        DensityOperator chi = random_density(d, r, 1 + static_cast<std::size_t>(r.below(2)));
        const ComplexMatrix basis = random_unitary(d, r);
        std::vector<double> spec(d);
        for (auto &x : spec) {
            x = r.uniform();
        }
        ComplexMatrix m = basis * ComplexMatrix::diagonal(std::span<const double>(spec)) *
                          basis.adjoint();
        return GeneralInstance{std::move(comb),
                               GeneralTest{std::move(chi), aux, std::move(ts),
                                           PovmElement(hermitian_part(m))}};
    };
    return GeneralSetup{std::move(omega), 1, std::move(rule), make};
}

/**
 * @brief (1/2)|||U . U^dagger - V . V^dagger|||_diamond for unitary channels.
 *
 * With the eigenphases of U^dagger V on the unit circle, let theta be the
 * length of the shortest arc containing all of them. If theta >= pi the
 * convex hull contains 0 and the distance is 1; otherwise the point of the
 * hull closest to 0 has modulus nu = cos(theta/2) and the distance is
 * sqrt(1 - nu^2).
 */
inline double diamond_distance_unitaries(const ComplexMatrix &u, const ComplexMatrix &v) {
    if (!u.is_square() || u.rows() != v.rows() || v.cols() != u.cols()) {
        throw DimensionError("diamond_distance_unitaries: shapes " + u.shape() + " and " +
                             v.shape());
    }
    if (!is_unitary(u, tol::kIdentity) || !is_unitary(v, tol::kIdentity)) {
        throw ContractViolation("diamond_distance_unitaries: input is not unitary");
    }
    const std::vector<cplx> eig = unitary_eigenvalues(u.adjoint() * v);
    std::vector<double> phases;
    phases.reserve(eig.size());
    for (const cplx &z : eig) {
        double a = std::arg(z);
        if (a < 0.0) {
            a += 2.0 * std::numbers::pi;
        }
        phases.push_back(a);
    }
    std::sort(phases.begin(), phases.end());
    double max_gap = 2.0 * std::numbers::pi - (phases.back() - phases.front());
    for (std::size_t j = 1; j < phases.size(); ++j) {
        max_gap = std::max(max_gap, phases[j] - phases[j - 1]);
    }
    const double arc = 2.0 * std::numbers::pi - max_gap;
    if (arc >= std::numbers::pi) {
        return 1.0;
    }
    const double nu = std::cos(arc / 2.0);
    return std::sqrt(std::max(0.0, 1.0 - nu * nu));
}

struct DiamondSearchResult {
    double value;   ///< trace distance at the best input found
    PureState input; ///< maximizing input on C^d (x) C^d
};

/**
 * @brief Lower estimate of the same distance by direct search over pure
 * inputs on C^d (x) C^d.
 *
 * Minimizes |<u|(U^dagger V (x) 1)|u>|^2 by local descent, then evaluates
 * (1/2)||(U (x) 1)|u><u|(U (x) 1)^dagger - (V (x) 1)|u><u|(V (x) 1)^dagger||_1
 * with a full trace-norm computation.
 */
inline DiamondSearchResult diamond_distance_pure_search(const ComplexMatrix &u,
                                                        const ComplexMatrix &v, int trials,
                                                        std::uint64_t seed) {
    if (!u.is_square() || u.rows() != v.rows() || v.cols() != u.cols()) {
        throw DimensionError("diamond_distance_pure_search: shapes " + u.shape() + " and " +
                             v.shape());
    }
    const std::size_t d = u.rows();
    const ComplexMatrix id = ComplexMatrix::identity(d);
    const auto best = min_numerical_range_modulus(kron(u.adjoint() * v, id), trials, seed);
    const CVector a = mat_vec(kron(u, id), best.state.amplitudes());
    const CVector b = mat_vec(kron(v, id), best.state.amplitudes());
    const ComplexMatrix diff = ComplexMatrix::outer(a, a) - ComplexMatrix::outer(b, b);
    return {0.5 * trace_norm(diff), best.state};
}

struct Lemma1Check {
    double gap;
    double bound;
    bool holds;
};

/// |p_H - p_D| against N |sin(alpha/2)| for the phase attack.
inline Lemma1Check lemma1_check(const GeneralSetup &setup, double alpha,
                                Placement placement = Placement::Post) {
    const double p_h = overall_acceptance_general(setup, Honest{});
    const double p_d = overall_acceptance_general(setup, PhaseAttack(alpha, placement));
    const double gap = std::abs(p_h - p_d);
    const double bound = setup.omega.mean() * std::abs(std::sin(alpha / 2.0));
    return {gap, bound, gap <= bound + 1e-10};
}

/**
 * @brief Trade-off report for a general-test setup with psi = |+>^{(x) k},
 * U = 1 and the general-test attack angle for N = mean(Omega).
 */
inline TradeoffReport general_tradeoff_check(SecurityModel model, const GeneralSetup &setup,
                                             const TradeoffOptions &options = {}) {
    const double n_expected = setup.omega.mean();
    const double alpha = options.alpha_override
                             ? PhaseAttack::canonicalize(*options.alpha_override)
                             : optimal_alpha(model, TestVariant::GeneralTests, n_expected);
    const DensityOperator psi = DensityOperator::from_pure(plus_state(setup.k));
    const ComplexMatrix u = ComplexMatrix::identity(pow2(setup.k));
    const ServerStrategy attack = PhaseAttack(alpha, options.placement);

    const double p_h = overall_acceptance_general(setup, Honest{});
    const double p_d = overall_acceptance_general(setup, attack);
    const AbortExtendedState rho_h = mix_with_abort(psi, p_h);
    const AbortExtendedState rho_d =
        mix_with_abort(conjugate(transform_round(attack, u, setup.k), psi), p_d);

    ReportInputs in{model,
                    TestVariant::GeneralTests,
                    n_expected,
                    alpha,
                    p_h,
                    p_d,
                    epsilon_h(rho_h, psi, model),
                    model == SecurityModel::StandAlone ? epsilon_d_standalone(rho_d, psi)
                                                       : epsilon_d_composable(rho_d, psi),
                    options.alpha_override.has_value(),
                    std::nullopt};
    if (options.grid_cross_check) {
        in.eps_d_grid = model == SecurityModel::StandAlone
                            ? epsilon_d_standalone_grid(rho_d, psi)
                            : epsilon_d_composable_grid(rho_d, psi);
    }
    return assemble_report(in);
}

} // namespace vdqc
