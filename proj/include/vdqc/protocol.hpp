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
 * Exact model of the cut-and-choose protocol with separable pure traps.
 *
 * The client draws the number of test rounds n from a finite distribution,
 * hides the computation at output round ell in {1..n+1}, delegates a trap
 * (T_i, chi_i) in every other round and accepts according to a measurement
 * on the trap outputs. Strategies are i.i.d. across rounds, so acceptance
 * and the output payload are evaluated independently of the round order.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "quantum_objects.hpp"
#include "random.hpp"
#include "strategy.hpp"

namespace vdqc {

/// Finite distribution over the number n of test rounds.
class RoundDistribution {
  public:
    struct Entry {
        std::size_t n;
        double probability;
        friend bool operator==(const Entry &, const Entry &) = default;
    };

    /// Entries must be sorted by strictly increasing n, non-negative, and sum
    /// to 1 within 1e-12.
    explicit RoundDistribution(std::vector<Entry> support) : support_(std::move(support)) {
        if (support_.empty()) {
            throw ContractViolation("RoundDistribution: empty support");
        }
        double sum = 0.0;
        for (std::size_t j = 0; j < support_.size(); ++j) {
            const auto &e = support_[j];
            if (!(e.probability >= 0.0) || !std::isfinite(e.probability)) {
                throw ContractViolation("RoundDistribution: probability for n=" +
                                        std::to_string(e.n) + " is negative or non-finite");
            }
            if (j > 0 && support_[j - 1].n >= e.n) {
                throw ContractViolation("RoundDistribution: support not strictly sorted by n");
            }
            sum += e.probability;
        }
        if (std::abs(sum - 1.0) > 1e-12) {
            throw ContractViolation("RoundDistribution: probabilities sum to " +
                                    std::to_string(sum));
        }
    }

    static RoundDistribution point_mass(std::size_t n) {
        return RoundDistribution({{n, 1.0}});
    }

    /// Distribution with mean exactly `mean`, supported on floor/ceil(mean).
    static RoundDistribution with_mean(double mean) {
        if (!(mean >= 0.0) || !std::isfinite(mean)) {
            throw DomainError("RoundDistribution::with_mean: mean must be >= 0");
        }
        const double lo = std::floor(mean);
        const double frac = mean - lo;
        const auto n_lo = static_cast<std::size_t>(lo);
        if (frac == 0.0) {
            return point_mass(n_lo);
        }
        return RoundDistribution({{n_lo, 1.0 - frac}, {n_lo + 1, frac}});
    }

    /// Sorts, merges duplicates and rescales to unit mass. Rejects totals
    /// further than `tolerance` from 1.
    static RoundDistribution renormalized(std::vector<Entry> entries, double tolerance) {
        std::sort(entries.begin(), entries.end(),
                  [](const Entry &a, const Entry &b) { return a.n < b.n; });
        std::vector<Entry> merged;
        double sum = 0.0;
        for (const auto &e : entries) {
            if (!(e.probability >= 0.0) || !std::isfinite(e.probability)) {
                throw ContractViolation("RoundDistribution: probability for n=" +
                                        std::to_string(e.n) + " is negative or non-finite");
            }
            sum += e.probability;
            if (!merged.empty() && merged.back().n == e.n) {
                merged.back().probability += e.probability;
            } else {
                merged.push_back(e);
            }
        }
        if (std::abs(sum - 1.0) > tolerance) {
            throw ContractViolation("RoundDistribution: probabilities sum to " +
                                    std::to_string(sum));
        }
        for (auto &e : merged) {
            e.probability /= sum;
        }
        double total = 0.0;
        for (const auto &e : merged) {
            total += e.probability;
        }
        // Absorb residual rounding in the largest entry.
        auto it = std::max_element(merged.begin(), merged.end(),
                                   [](const Entry &a, const Entry &b) {
                                       return a.probability < b.probability;
                                   });
        it->probability += 1.0 - total;
        return RoundDistribution(std::move(merged));
    }

    [[nodiscard]] const std::vector<Entry> &support() const noexcept { return support_; }

    /// Expected number of test rounds N.
    [[nodiscard]] double mean() const {
        double m = 0.0;
        for (const auto &e : support_) {
            m += e.probability * static_cast<double>(e.n);
        }
        return m;
    }

    [[nodiscard]] std::size_t max_n() const noexcept { return support_.back().n; }

    friend bool operator==(const RoundDistribution &, const RoundDistribution &) = default;

  private:
    std::vector<Entry> support_;
};

/// Test computation for one round: unitary T_i applied to input chi_i.
struct TrapRound {
    ComplexMatrix unitary;
    PureState input;
};

/// Trap family Theta_{k,n}: (k, n, round index i in 1..n+1) -> (T_i, chi_i).
class TrapGenerator {
  public:
    using Fn = std::function<TrapRound(std::size_t k, std::size_t n, std::size_t i)>;

    TrapGenerator(std::string name, Fn fn) : name_(std::move(name)), fn_(std::move(fn)) {}

    [[nodiscard]] const std::string &name() const noexcept { return name_; }

    TrapRound operator()(std::size_t k, std::size_t n, std::size_t i) const {
        TrapRound r = fn_(k, n, i);
        if (r.unitary.rows() != pow2(k) || r.input.dim() != pow2(k)) {
            throw DimensionError("trap '" + name_ + "' round " + std::to_string(i) +
                                 ": wrong dimension for k=" + std::to_string(k));
        }
        if (!is_unitary(r.unitary)) {
            throw ContractViolation("trap '" + name_ + "' round " + std::to_string(i) +
                                    ": T_i is not unitary");
        }
        return r;
    }

  private:
    std::string name_;
    Fn fn_;
};

/// T_i = 1, chi_i = |+>^{(x) k}.
inline TrapGenerator plus_traps() {
    return TrapGenerator("plus", [](std::size_t k, std::size_t, std::size_t) {
        return TrapRound{ComplexMatrix::identity(pow2(k)), plus_state(k)};
    });
}

/// T_i = 1, chi_i = |0...0>. The phase attack leaves these invariant.
inline TrapGenerator computational_traps() {
    return TrapGenerator("computational", [](std::size_t k, std::size_t, std::size_t) {
        return TrapRound{ComplexMatrix::identity(pow2(k)), zero_state(k)};
    });
}

/// Haar-random (T_i, chi_i), a deterministic function of (seed, k, n, i).
inline TrapGenerator random_traps(std::uint64_t seed) {
    return TrapGenerator("random", [seed](std::size_t k, std::size_t n, std::size_t i) {
        std::uint64_t s = seed;
        for (std::uint64_t x : {std::uint64_t{k}, std::uint64_t{n}, std::uint64_t{i}}) {
            s ^= x + 0x9e3779b97f4a7c15ULL + (s << 6) + (s >> 2);
        }
        Rng rng(s);
        ComplexMatrix u = random_unitary(pow2(k), rng);
        PureState chi = random_pure_state(pow2(k), rng);
        return TrapRound{std::move(u), std::move(chi)};
    });
}

/// Accept iff every trap round accepts; e_i acts on one round's output.
struct PerRoundAcceptance {
    std::function<PovmElement(std::size_t k, std::size_t n, std::size_t i,
                              const TrapRound &trap)>
        element;
};

/// One element mu on the ordered tensor product of the n trap outputs.
struct GlobalAcceptance {
    std::function<PovmElement(std::size_t k, std::size_t n, std::size_t ell)> element;
};

using AcceptanceRule = std::variant<PerRoundAcceptance, GlobalAcceptance>;

/// e_i = weight * T_i|chi_i><chi_i|T_i^dagger: the projector onto the honest
/// output, optionally damped so that honest runs also reject.
inline PerRoundAcceptance matched_per_round(double weight = 1.0) {
    return PerRoundAcceptance{[weight](std::size_t, std::size_t, std::size_t,
                                       const TrapRound &trap) {
        return PovmElement::projector(evolve(trap.unitary, trap.input)).scaled(weight);
    }};
}

struct UniformOutputRound {};

/// omega_n(ell), ell = 1..n+1, as a vector of length n+1.
struct ExplicitOutputRound {
    std::function<std::vector<double>(std::size_t n)> weights;
};

using OutputRoundRule = std::variant<UniformOutputRound, ExplicitOutputRound>;

inline std::vector<double> output_round_weights(const OutputRoundRule &rule, std::size_t n) {
    if (std::holds_alternative<UniformOutputRound>(rule)) {
        return std::vector<double>(n + 1, 1.0 / static_cast<double>(n + 1));
    }
    std::vector<double> w = std::get<ExplicitOutputRound>(rule).weights(n);
    if (w.size() != n + 1) {
        throw ContractViolation("output round rule for n=" + std::to_string(n) +
                                " returned " + std::to_string(w.size()) + " weights");
    }
    double s = 0.0;
    for (double x : w) {
        if (!(x >= 0.0)) {
            throw ContractViolation("output round rule for n=" + std::to_string(n) +
                                    ": negative weight");
        }
        s += x;
    }
    if (std::abs(s - 1.0) > 1e-12) {
        throw ContractViolation("output round rule for n=" + std::to_string(n) +
                                ": weights sum to " + std::to_string(s));
    }
    return w;
}

/// One cut-and-choose instance.
struct ProtocolSpec {
    RoundDistribution omega;
    std::size_t k;
    TrapGenerator traps;
    AcceptanceRule acceptance;
    OutputRoundRule output_rule = UniformOutputRound{};
    std::size_t dimension_cap = tol::kDefaultDimensionCap;
};

/// Default |+>-trap protocol on k qubits with per-round projective checks.
inline ProtocolSpec plus_trap_protocol(RoundDistribution omega, std::size_t k = 1) {
    return ProtocolSpec{std::move(omega), k, plus_traps(), matched_per_round()};
}

namespace detail {

inline void check_round_index(std::size_t n, std::size_t ell) {
    if (ell < 1 || ell > n + 1) {
        throw ContractViolation("output round ell=" + std::to_string(ell) +
                                " outside 1..n+1 for n=" + std::to_string(n));
    }
}

// Output vector S(T_i)|chi_i> of round i under the strategy.
inline CVector trap_output(const ProtocolSpec &spec, const ServerStrategy &strategy,
                           const TrapRound &trap) {
    return mat_vec(transform_round(strategy, trap.unitary, spec.k), trap.input.amplitudes());
}

} // namespace detail

/**
 * @brief Per-round acceptance <e_i, S(T_i)(|chi_i><chi_i|)> for i = 1..n+1.
 *
 * Index 0 of the result is round 1. Only meaningful for PerRound rules.
 */
inline std::vector<double> per_round_acceptance(const ProtocolSpec &spec,
                                                const ServerStrategy &strategy,
                                                std::size_t n) {
    const auto *rule = std::get_if<PerRoundAcceptance>(&spec.acceptance);
    if (rule == nullptr) {
        throw ContractViolation("per_round_acceptance: acceptance rule is global");
    }
    std::vector<double> out(n + 1);
    for (std::size_t i = 1; i <= n + 1; ++i) {
        const TrapRound trap = spec.traps(spec.k, n, i);
        const PovmElement e = rule->element(spec.k, n, i, trap);
        if (e.dim() != pow2(spec.k)) {
            throw DimensionError("acceptance element for round " + std::to_string(i) +
                                 " has wrong dimension");
        }
        out[i - 1] = std::clamp(e.expectation(detail::trap_output(spec, strategy, trap)),
                                0.0, 1.0);
    }
    return out;
}

/// Global-mode acceptance: builds the full tensor state of the n trap
/// outputs and evaluates Tr(mu * state).
inline double global_acceptance(const ProtocolSpec &spec, const ServerStrategy &strategy,
                                std::size_t n, std::size_t ell) {
    const auto &rule = std::get<GlobalAcceptance>(spec.acceptance);
    detail::check_round_index(n, ell);
    if (n == 0) {
        return 1.0;
    }
    if (spec.k * n >= 63 || pow2(spec.k * n) > spec.dimension_cap) {
        throw DimensionError("global acceptance: 2^(k n) = 2^" +
                             std::to_string(spec.k * n) + " exceeds dimension cap (n=" +
                             std::to_string(n) + ", ell=" + std::to_string(ell) + ")");
    }
    CVector psi{cplx{1.0}};
    for (std::size_t i = 1; i <= n + 1; ++i) {
        if (i == ell) {
            continue;
        }
        const TrapRound trap = spec.traps(spec.k, n, i);
        psi = kron(psi, detail::trap_output(spec, strategy, trap), spec.dimension_cap);
    }
    const PovmElement mu = rule.element(spec.k, n, ell);
    if (mu.dim() != psi.size()) {
        throw DimensionError("global acceptance element for n=" + std::to_string(n) +
                             " has dimension " + std::to_string(mu.dim()) + ", expected " +
                             std::to_string(psi.size()));
    }
    return std::clamp(mu.expectation(psi), 0.0, 1.0);
}

/**
 * @brief Acceptance probability p_{(n, ell)} for fixed test count and output
 * round.
 *
 * PerRound rules give prod_{i != ell} <e_i, S(T_i)(chi_i)>; the empty product
 * (n = 0) is 1.
 */
inline double acceptance_probability(const ProtocolSpec &spec, const ServerStrategy &strategy,
                                     std::size_t n, std::size_t ell) {
    detail::check_round_index(n, ell);
    if (std::holds_alternative<GlobalAcceptance>(spec.acceptance)) {
        return global_acceptance(spec, strategy, n, ell);
    }
    const std::vector<double> rounds = per_round_acceptance(spec, strategy, n);
    double p = 1.0;
    for (std::size_t i = 1; i <= n + 1; ++i) {
        if (i != ell) {
            p *= rounds[i - 1];
        }
    }
    return p;
}

struct RoundOutcome {
    std::size_t n;
    std::size_t ell;
    double weight; ///< Omega(n) * omega_n(ell)
    double p;      ///< acceptance probability p_{(n, ell)}
};

/// All p_{(n, ell)} over the support of Omega, with their mixture weights.
inline std::vector<RoundOutcome> round_outcome_table(const ProtocolSpec &spec,
                                                     const ServerStrategy &strategy) {
    std::vector<RoundOutcome> table;
    const bool per_round = std::holds_alternative<PerRoundAcceptance>(spec.acceptance);
    for (const auto &[n, prob] : spec.omega.support()) {
        const std::vector<double> w = output_round_weights(spec.output_rule, n);
        std::vector<double> rounds;
        std::vector<double> prefix;
        std::vector<double> suffix;
        if (per_round) {
            rounds = per_round_acceptance(spec, strategy, n);
            // prod_{i != ell} via prefix/suffix products.
            prefix.assign(n + 2, 1.0);
            suffix.assign(n + 2, 1.0);
            for (std::size_t i = 0; i <= n; ++i) {
                prefix[i + 1] = prefix[i] * rounds[i];
            }
            for (std::size_t i = n + 1; i-- > 0;) {
                suffix[i] = suffix[i + 1] * rounds[i];
            }
        }
        for (std::size_t ell = 1; ell <= n + 1; ++ell) {
            const double p = per_round ? prefix[ell - 1] * suffix[ell]
                                       : global_acceptance(spec, strategy, n, ell);
            table.push_back({n, ell, prob * w[ell - 1], p});
        }
    }
    return table;
}

/// p = sum_n Omega(n) sum_ell omega_n(ell) p_{(n, ell)}.
inline double overall_acceptance(const ProtocolSpec &spec, const ServerStrategy &strategy) {
    double p = 0.0;
    for (const auto &row : round_outcome_table(spec, strategy)) {
        p += row.weight * row.p;
    }
    return std::clamp(p, 0.0, 1.0);
}

/**
 * @brief The client's output: the strategy-transformed computation applied
 * to `input`, accepted with the overall acceptance probability, otherwise
 * abort.
 *
 * Every ServerStrategy acts identically on each round, so the payload does
 * not depend on (n, ell).
 */
inline AbortExtendedState client_output_state(const ProtocolSpec &spec,
                                              const ServerStrategy &strategy,
                                              const DensityOperator &input,
                                              const ComplexMatrix &target_unitary) {
    if (input.dim() != pow2(spec.k)) {
        throw DimensionError("client_output_state: input dimension " +
                             std::to_string(input.dim()) + " != 2^k");
    }
    const ComplexMatrix v = transform_round(strategy, target_unitary, spec.k);
    return mix_with_abort(conjugate(v, input), overall_acceptance(spec, strategy));
}

/// |<chi_i| T_i^dagger S(T_i) |chi_i>|^2 for round i.
inline double round_overlap(const ProtocolSpec &spec, const ServerStrategy &strategy,
                            std::size_t n, std::size_t i) {
    const TrapRound trap = spec.traps(spec.k, n, i);
    const CVector honest = mat_vec(trap.unitary, trap.input.amplitudes());
    const CVector actual = detail::trap_output(spec, strategy, trap);
    return std::norm(inner(honest, actual));
}

/// sqrt(1 - prod_{i != ell} overlap_i): Holevo-Helstrom bound on
/// |p^H_{(n,ell)} - p^D_{(n,ell)}| for product pure trap outputs.
inline double helstrom_round_bound(const ProtocolSpec &spec, const ServerStrategy &strategy,
                                   std::size_t n, std::size_t ell) {
    detail::check_round_index(n, ell);
    double prod = 1.0;
    for (std::size_t i = 1; i <= n + 1; ++i) {
        if (i != ell) {
            prod *= round_overlap(spec, strategy, n, i);
        }
    }
    return std::sqrt(std::max(0.0, 1.0 - prod));
}

/// sqrt(1 - cos(alpha/2)^{2N}): aggregate bound on |p_H - p_D| for the phase
/// attack in the main-text protocol.
inline double acceptance_gap_bound(double alpha, double n_expected) {
    const double c2 = std::pow(std::cos(alpha / 2.0), 2.0);
    return std::sqrt(std::max(0.0, 1.0 - std::pow(c2, n_expected)));
}

struct JensenCheck {
    double lhs;
    double rhs;
    bool holds;
};

/**
 * @brief Jensen step for the concave map n -> sqrt(1 - c^{2n}):
 * sum_n Omega(n) sqrt(1 - c^{2n}) <= sqrt(1 - c^{2N}).
 */
inline JensenCheck jensen_gap_check(const RoundDistribution &omega, double c) {
    if (!(c >= 0.0 && c <= 1.0)) {
        throw DomainError("jensen_gap_check: c must lie in [0, 1]");
    }
    double lhs = 0.0;
    for (const auto &[n, p] : omega.support()) {
        lhs += p * std::sqrt(std::max(0.0, 1.0 - std::pow(c, 2.0 * static_cast<double>(n))));
    }
    const double rhs = std::sqrt(std::max(0.0, 1.0 - std::pow(c, 2.0 * omega.mean())));
    return {lhs, rhs, lhs <= rhs + 1e-12};
}

} // namespace vdqc
