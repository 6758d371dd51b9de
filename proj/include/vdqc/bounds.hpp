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
 * Correctness and security errors under the fidelity-based (stand-alone) and
 * trace-distance (composable) definitions, the trade-off lower bounds, and
 * per-step checks of the inequality chain that leads to them.
 */

#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "measures.hpp"
#include "protocol.hpp"
#include "quantum_objects.hpp"
#include "strategy.hpp"

namespace vdqc {

namespace detail {

inline void check_target(const AbortExtendedState &rho, const DensityOperator &target) {
    if (rho.payload_dim() != target.dim()) {
        throw DimensionError("payload dimension " + std::to_string(rho.payload_dim()) +
                             " != target dimension " + std::to_string(target.dim()));
    }
}

// Golden-section search for the minimum of a unimodal f on [lo, hi].
inline std::pair<double, double> golden_min(const std::function<double(double)> &f,
                                            double lo, double hi) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = f(x1);
    double f2 = f(x2);
    for (int it = 0; it < 120 && hi - lo > 1e-14; ++it) {
        if (f1 <= f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        }
    }
    const double x = 0.5 * (lo + hi);
    return {x, f(x)};
}

} // namespace detail

/// Grid minimization over p in [0, 1] followed by golden-section refinement
/// around the best grid point. Returns (argmin, min).
inline std::pair<double, double> minimize_over_p(const std::function<double(double)> &f,
                                                 double step = 1e-4) {
    const auto count = static_cast<std::size_t>(std::llround(1.0 / step));
    double best_p = 0.0;
    double best = f(0.0);
    for (std::size_t j = 1; j <= count; ++j) {
        const double p = std::min(1.0, static_cast<double>(j) * step);
        const double v = f(p);
        if (v < best) {
            best = v;
            best_p = p;
        }
    }
    const auto [p_ref, v_ref] =
        detail::golden_min(f, std::max(0.0, best_p - step), std::min(1.0, best_p + step));
    if (v_ref < best) {
        return {p_ref, v_ref};
    }
    return {best_p, best};
}

/**
 * @brief Correctness error of the honest output against U(psi).
 *
 * Stand-alone: 1 - F(rho_H, U(psi)); composable: (1/2)||rho_H - U(psi)||_1,
 * with the target embedded in the abort-extended space.
 */
inline double epsilon_h(const AbortExtendedState &rho_h, const DensityOperator &target,
                        SecurityModel model) {
    detail::check_target(rho_h, target);
    const AbortExtendedState ideal = embed(target);
    if (model == SecurityModel::StandAlone) {
        return std::max(0.0, 1.0 - fidelity(rho_h.state(), ideal.state()));
    }
    return trace_distance(rho_h.state(), ideal.state());
}

/// sigma_p = p U(psi) + (1 - p)|abort><abort|
inline AbortExtendedState ideal_mixture(const DensityOperator &target, double p) {
    return mix_with_abort(target, p);
}

/**
 * @brief Stand-alone security error 1 - max_p F(rho_D, sigma_p), closed form.
 *
 * Both states are block diagonal with orthogonal blocks, so
 * F(rho_D, sigma_p) = (sqrt(p F_payload) + sqrt((1-p)(1-p_D)))^2 where
 * F_payload = F(p_D phi, U(psi)); maximizing over p gives
 * F_payload + (1 - p_D).
 */
inline double epsilon_d_standalone(const AbortExtendedState &rho_d,
                                   const DensityOperator &target) {
    detail::check_target(rho_d, target);
    const double f_payload = psd_fidelity(rho_d.payload_block(), target.matrix());
    return std::clamp(1.0 - f_payload - rho_d.abort_weight(), 0.0, 1.0);
}

/// 1 - max_p F(rho_D, sigma_p) by grid search over p on the full states.
inline double epsilon_d_standalone_grid(const AbortExtendedState &rho_d,
                                        const DensityOperator &target, double step = 1e-4) {
    detail::check_target(rho_d, target);
    const ComplexMatrix sqrt_rho = psd_sqrt(rho_d.matrix());
    auto neg_fid = [&](double p) {
        const ComplexMatrix sigma = ideal_mixture(target, p).matrix();
        const double t = trace_sqrt(hermitian_part(sqrt_rho * sigma * sqrt_rho));
        return -t * t;
    };
    const auto [p, v] = minimize_over_p(neg_fid, step);
    return std::clamp(1.0 + v, 0.0, 1.0);
}

/// min_p (1/2)||rho_D - sigma_p||_1 by grid search over p.
inline double epsilon_d_composable_grid(const AbortExtendedState &rho_d,
                                        const DensityOperator &target, double step = 1e-4) {
    detail::check_target(rho_d, target);
    auto dist = [&](double p) {
        return 0.5 * trace_norm(rho_d.matrix() - ideal_mixture(target, p).matrix());
    };
    return minimize_over_p(dist, step).second;
}

/**
 * @brief Composable security error min_p (1/2)||rho_D - sigma_p||_1.
 *
 * With pure payload and target the minimum sits at p = p_D and equals
 * p_D * sqrt(1 - |<phi|U psi>|^2). Mixed payloads fall back to the grid.
 */
inline double epsilon_d_composable(const AbortExtendedState &rho_d,
                                   const DensityOperator &target) {
    detail::check_target(rho_d, target);
    const double p_d = rho_d.acceptance_weight();
    if (p_d <= tol::kNormalization) {
        return 0.0;
    }
    const auto phi = rho_d.payload();
    if (phi && phi->is_pure() && target.is_pure()) {
        return p_d * pure_trace_distance(phi->dominant_vector(), target.dominant_vector());
    }
    return epsilon_d_composable_grid(rho_d, target);
}

/**
 * Trade-off lower bound on eps_H + eps_D:
 *  1/(7N) and 1/(4 sqrt N) for the main-text protocol,
 *  1/(7N^2) and 1/(4N) for general tests.
 */
inline double theorem_bound(SecurityModel model, TestVariant variant, double n_expected) {
    if (!(n_expected > 0.0)) {
        throw DomainError("theorem_bound: N must be positive");
    }
    if (variant == TestVariant::MainText) {
        return model == SecurityModel::StandAlone ? 1.0 / (7.0 * n_expected)
                                                  : 1.0 / (4.0 * std::sqrt(n_expected));
    }
    return model == SecurityModel::StandAlone ? 1.0 / (7.0 * n_expected * n_expected)
                                              : 1.0 / (4.0 * n_expected);
}

struct ProofStep {
    std::string name;
    double lhs;
    double rhs;
    bool holds;
    bool applicable = true;
    std::string relation = ">="; ///< holds means lhs >= rhs (or <= when relation is "<=")
};

struct TradeoffReport {
    SecurityModel model;
    TestVariant variant;
    double n_expected;
    double alpha;
    double p_h;
    double p_d;
    double eps_h;
    double eps_d;
    double bound;
    bool satisfied;        ///< eps_h + eps_d >= bound - 1e-12
    bool bound_applicable; ///< false when alpha was overridden
    bool trivial_attack;   ///< sin(alpha/2) == 0
    std::vector<ProofStep> proof_steps;

    /// Every applicable proof step holds, and the bound holds where it applies.
    [[nodiscard]] bool passed() const {
        for (const auto &s : proof_steps) {
            if (s.applicable && !s.holds) {
                return false;
            }
        }
        return !bound_applicable || satisfied;
    }
};

/// Fixed order of proof-step names in every report.
inline const std::vector<std::string> &proof_step_names() {
    static const std::vector<std::string> names{
        "eps_h_lower", "eps_d_lower", "sum_vs_gap", "gap_bound",
        "bernoulli",   "chain",       "final",      "grid_agreement"};
    return names;
}

struct ReportInputs {
    SecurityModel model;
    TestVariant variant;
    double n_expected;
    double alpha;
    double p_h;
    double p_d;
    double eps_h;
    double eps_d;
    bool alpha_overridden;
    std::optional<double> eps_d_grid; ///< independent grid value, if computed
};

/**
 * @brief Evaluates the inequality chain for one (model, variant, N, alpha).
 *
 * Steps, with s = sin^2(alpha/2) (stand-alone) or |sin(alpha/2)| (composable):
 *  eps_h_lower   eps_H >= 1 - p_H
 *  eps_d_lower   eps_D >= p_D s
 *  sum_vs_gap    eps_H + eps_D >= s (1 - |p_H - p_D|)
 *  gap_bound     |p_H - p_D| <= sqrt(1 - cos(alpha/2)^{2N})  (main text)
 *                |p_H - p_D| <= N |sin(alpha/2)|            (general tests)
 *  bernoulli     (1 - x/N)^N >= 1 - x with x = N sin^2(alpha/2)
 *  chain         s (1 - gap bound) >= theorem bound
 *  final         eps_H + eps_D >= theorem bound
 *  grid_agreement |eps_D - grid eps_D| <= 1e-6
 */
inline TradeoffReport assemble_report(const ReportInputs &in) {
    const double sin_half = std::abs(std::sin(in.alpha / 2.0));
    const double s = in.model == SecurityModel::StandAlone ? sin_half * sin_half : sin_half;
    const double gap = std::abs(in.p_h - in.p_d);
    const double gap_bound = in.variant == TestVariant::MainText
                                 ? acceptance_gap_bound(in.alpha, in.n_expected)
                                 : in.n_expected * sin_half;
    const double bound = theorem_bound(in.model, in.variant, in.n_expected);
    const double sum = in.eps_h + in.eps_d;
    const bool applicable = !in.alpha_overridden;
    constexpr double t = tol::kIdentity;

    TradeoffReport r{in.model, in.variant, in.n_expected, in.alpha, in.p_h, in.p_d,
                     in.eps_h, in.eps_d,   bound,         sum >= bound - tol::kBound,
                     applicable, sin_half < 1e-15, {}};

    auto ge = [&](std::string name, double lhs, double rhs, bool app, double slack) {
        r.proof_steps.push_back({std::move(name), lhs, rhs, lhs >= rhs - slack, app, ">="});
    };
    auto le = [&](std::string name, double lhs, double rhs, bool app, double slack) {
        r.proof_steps.push_back({std::move(name), lhs, rhs, lhs <= rhs + slack, app, "<="});
    };

    ge("eps_h_lower", in.eps_h, 1.0 - in.p_h, true, t);
    ge("eps_d_lower", in.eps_d, in.p_d * s, true, t);
    ge("sum_vs_gap", sum, s * (1.0 - gap), true, t);
    le("gap_bound", gap, gap_bound, true, 1e-10);
    const double x = in.n_expected * sin_half * sin_half;
    ge("bernoulli", std::pow(1.0 - x / in.n_expected, in.n_expected), 1.0 - x, x <= in.n_expected,
       tol::kBound);
    ge("chain", s * (1.0 - gap_bound), bound, applicable, tol::kBound);
    ge("final", sum, bound, applicable, tol::kBound);
    if (in.eps_d_grid) {
        le("grid_agreement", std::abs(in.eps_d - *in.eps_d_grid), 1e-6, true, 0.0);
    } else {
        r.proof_steps.push_back({"grid_agreement", 0.0, 1e-6, true, false, "<="});
    }
    return r;
}

struct TradeoffOptions {
    std::optional<double> alpha_override;
    Placement placement = Placement::Post;
    bool grid_cross_check = true;
};

/**
 * @brief Runs the honest and attacked protocol on psi = |+>^{(x) k}, U = 1
 * and evaluates the trade-off report.
 *
 * The attack angle is the theorem-optimal one for N = mean(Omega) unless
 * overridden.
 */
inline TradeoffReport run_tradeoff_check(const ProtocolSpec &spec, SecurityModel model,
                                         TestVariant variant,
                                         const TradeoffOptions &options = {}) {
    const double n_expected = spec.omega.mean();
    const double alpha = options.alpha_override
                             ? PhaseAttack::canonicalize(*options.alpha_override)
                             : optimal_alpha(model, variant, n_expected);
    const DensityOperator psi = DensityOperator::from_pure(plus_state(spec.k));
    const ComplexMatrix u = ComplexMatrix::identity(pow2(spec.k));
    const ServerStrategy honest = Honest{};
    const ServerStrategy attack = PhaseAttack(alpha, options.placement);

    const AbortExtendedState rho_h = client_output_state(spec, honest, psi, u);
    const AbortExtendedState rho_d = client_output_state(spec, attack, psi, u);

    ReportInputs in{model,
                    variant,
                    n_expected,
                    alpha,
                    rho_h.acceptance_weight(),
                    rho_d.acceptance_weight(),
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

/// Leakage l^psi of the ideal resource: register size and a bound on the
/// circuit length. Carried for completeness; no bound depends on it.
struct Leakage {
    std::size_t register_size;
    std::size_t circuit_length_bound;
};

/**
 * @brief Ideal VDQC resource: outputs U(psi) when the server's control bit
 * is c = 0 and abort when c = 1.
 */
class IdealVDQC {
  public:
    IdealVDQC(DensityOperator input, ComplexMatrix unitary, std::size_t circuit_length_bound = 0)
        : input_(std::move(input)), unitary_(std::move(unitary)),
          leakage_{input_.dim(), circuit_length_bound} {
        if (unitary_.rows() != input_.dim() || !is_unitary(unitary_)) {
            throw ContractViolation("IdealVDQC: unitary must match the input dimension");
        }
    }

    [[nodiscard]] AbortExtendedState output(int control_bit) const {
        if (control_bit != 0 && control_bit != 1) {
            throw DomainError("IdealVDQC: control bit must be 0 or 1");
        }
        return mix_with_abort(conjugate(unitary_, input_), control_bit == 0 ? 1.0 : 0.0);
    }

    /// The best a dishonest server can do against the ideal resource: c = 0
    /// with probability p, c = 1 otherwise.
    [[nodiscard]] AbortExtendedState mixture(double p) const {
        return mix_with_abort(conjugate(unitary_, input_), p);
    }

    [[nodiscard]] const Leakage &leakage() const noexcept { return leakage_; }

  private:
    DensityOperator input_;
    ComplexMatrix unitary_;
    Leakage leakage_;
};

struct Distinguishability {
    double honest_gap;    ///< (1/2)||rho_H - ideal(c=0)||_1
    double dishonest_gap; ///< min_p (1/2)||rho_D - ideal mixture(p)||_1
};

/// Compares real protocol outputs against the ideal resource.
inline Distinguishability ideal_vs_real_distinguishability(const ProtocolSpec &spec,
                                                           const ServerStrategy &strategy,
                                                           const DensityOperator &input,
                                                           const ComplexMatrix &unitary) {
    const IdealVDQC ideal(input, unitary);
    const AbortExtendedState rho_h = client_output_state(spec, Honest{}, input, unitary);
    const AbortExtendedState rho_d = client_output_state(spec, strategy, input, unitary);
    const double honest_gap = trace_distance(rho_h.state(), ideal.output(0).state());
    const double dishonest_gap =
        minimize_over_p([&](double p) {
            return trace_distance(rho_d.state(), ideal.mixture(p).state());
        }).second;
    return {honest_gap, dishonest_gap};
}

} // namespace vdqc
