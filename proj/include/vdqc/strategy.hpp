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
 * Server strategies: honest execution and the single-qubit phase rotation
 * inserted before or after every delegated unitary.
 */

#pragma once

#include <cmath>
#include <numbers>
#include <string>
#include <string_view>
#include <variant>

#include "quantum_objects.hpp"

namespace vdqc {

enum class Placement { Pre, Post };

enum class SecurityModel { StandAlone, Composable };

/// Main-text protocol (separable pure traps, uniform output round) or the
/// general-test protocol built on combs.
enum class TestVariant { MainText, GeneralTests };

struct Honest {
    friend bool operator==(const Honest &, const Honest &) = default;
};

/// Applies 1^{(k-1)} (x) P(alpha) before (Pre) or after (Post) each delegated
/// unitary. The angle is stored canonicalized to [0, 2 pi).
class PhaseAttack {
  public:
    PhaseAttack(double alpha, Placement placement)
        : alpha_(canonicalize(alpha)), placement_(placement) {}

    [[nodiscard]] double alpha() const noexcept { return alpha_; }
    [[nodiscard]] Placement placement() const noexcept { return placement_; }

    friend bool operator==(const PhaseAttack &, const PhaseAttack &) = default;

    static double canonicalize(double alpha) {
        if (!std::isfinite(alpha)) {
            throw DomainError("PhaseAttack: non-finite angle");
        }
        constexpr double two_pi = 2.0 * std::numbers::pi;
        double a = std::fmod(alpha, two_pi);
        if (a < 0.0) {
            a += two_pi;
        }
        if (a >= two_pi) {
            a = 0.0;
        }
        return a;
    }

  private:
    double alpha_;
    Placement placement_;
};

/// Closed set of strategies; every member acts identically and independently
/// on each round.
using ServerStrategy = std::variant<Honest, PhaseAttack>;

inline bool is_honest(const ServerStrategy &s) { return std::holds_alternative<Honest>(s); }

/**
 * @brief The unitary the server actually implements when asked for `t`.
 *
 * Honest returns `t`; PhaseAttack returns A*t (Post) or t*A (Pre) with
 * A = attack_operator(alpha, k).
 */
inline ComplexMatrix transform_round(const ServerStrategy &strategy,
                                     const ComplexMatrix &delegated, std::size_t k) {
    if (!delegated.is_square() || delegated.rows() != pow2(k)) {
        throw DimensionError("transform_round: delegated unitary is " + delegated.shape() +
                             ", expected dimension 2^" + std::to_string(k));
    }
    if (!is_unitary(delegated)) {
        throw ContractViolation("transform_round: delegated operation is not unitary");
    }
    if (const auto *atk = std::get_if<PhaseAttack>(&strategy)) {
        const ComplexMatrix a = attack_operator(atk->alpha(), k);
        return atk->placement() == Placement::Post ? a * delegated : delegated * a;
    }
    return delegated;
}

/// sin(alpha/2) of the theorem-optimal attack for expected test count N.
inline double optimal_sin_half(SecurityModel model, TestVariant variant, double n_expected) {
    if (!(n_expected > 0.0) || !std::isfinite(n_expected)) {
        throw DomainError("optimal_alpha: N must be positive and finite");
    }
    double x = 0.0;
    if (variant == TestVariant::MainText) {
        x = model == SecurityModel::StandAlone ? 2.0 / (3.0 * std::sqrt(n_expected))
                                               : 1.0 / (2.0 * std::sqrt(n_expected));
    } else {
        x = model == SecurityModel::StandAlone ? 2.0 / (3.0 * n_expected)
                                               : 1.0 / (2.0 * n_expected);
    }
    if (x > 1.0) {
        throw DomainError("optimal_alpha: N = " + std::to_string(n_expected) +
                          " too small, sin(alpha/2) = " + std::to_string(x) + " > 1");
    }
    return x;
}

/**
 * Attack angle that maximizes the trade-off lower bound:
 *  - stand-alone, main text:    sin^2(alpha/2) = 4/(9N)
 *  - composable, main text:     sin(alpha/2)   = 1/(2 sqrt N)
 *  - stand-alone, general:      sin(alpha/2)   = 2/(3N)
 *  - composable, general:       sin(alpha/2)   = 1/(2N)
 */
inline double optimal_alpha(SecurityModel model, TestVariant variant, double n_expected) {
    return 2.0 * std::asin(optimal_sin_half(model, variant, n_expected));
}

inline std::string_view to_string(Placement p) { return p == Placement::Pre ? "pre" : "post"; }

inline std::string_view to_string(SecurityModel m) {
    return m == SecurityModel::StandAlone ? "stand-alone" : "composable";
}

inline std::string_view to_string(TestVariant v) {
    return v == TestVariant::MainText ? "main-text" : "general-tests";
}

} // namespace vdqc
