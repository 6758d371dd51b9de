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
 * Built-in invariant suite, run by `vdqc selftest`. Each check compares the
 * engines against closed forms or against each other.
 */

#pragma once

#include <cmath>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "bounds.hpp"
#include "general_protocol.hpp"
#include "monte_carlo.hpp"
#include "protocol.hpp"

namespace vdqc {

struct SelfTestResult {
    std::string name;
    bool passed;
    std::string detail;
};

namespace detail {

inline std::string worst(const char *label, double value) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%s %.3g", label, value);
    return buf;
}

inline SelfTestResult check_main_text_theorems() {
    double err = 0.0;
    bool ok = true;
    for (double n : {1.0, 2.0, 5.0, 10.0, 50.0, 200.0}) {
        const ProtocolSpec spec =
            plus_trap_protocol(RoundDistribution::point_mass(static_cast<std::size_t>(n)));
        const auto sa = run_tradeoff_check(spec, SecurityModel::StandAlone, TestVariant::MainText,
                                           {std::nullopt, Placement::Post, false});
        const auto co = run_tradeoff_check(spec, SecurityModel::Composable, TestVariant::MainText,
                                           {std::nullopt, Placement::Post, false});
        const double x = 4.0 / (9.0 * n);
        const double y = 1.0 / (4.0 * n);
        err = std::max(err, std::abs(sa.eps_d - std::pow(1.0 - x, n) * x));
        err = std::max(err, std::abs(co.eps_d - std::pow(1.0 - y, n) / (2.0 * std::sqrt(n))));
        ok = ok && sa.passed() && co.passed();
    }
    return {"main-text trade-off sweep", ok && err <= 1e-9, worst("max |eps_D - closed form|", err)};
}

inline SelfTestResult check_general_theorems() {
    bool ok = true;
    double margin = 1.0;
    for (std::size_t n = 1; n <= 4; ++n) {
        const GeneralSetup setup = bell_test_setup(RoundDistribution::point_mass(n));
        for (auto m : {SecurityModel::StandAlone, SecurityModel::Composable}) {
            const auto r = general_tradeoff_check(m, setup, {std::nullopt, Placement::Post, false});
            ok = ok && r.passed();
            margin = std::min(margin, r.eps_h + r.eps_d - r.bound);
        }
    }
    return {"general-test trade-off, Bell tests", ok, worst("min margin", margin)};
}

inline SelfTestResult check_pure_trace_distance() {
    Rng rng(11);
    double err = 0.0;
    for (int t = 0; t < 200; ++t) {
        const std::size_t d = 2 + static_cast<std::size_t>(rng.below(4));
        const PureState u = random_pure_state(d, rng);
        const PureState v = random_pure_state(d, rng);
        const double direct = 0.5 * trace_norm(u.projector() - v.projector());
        err = std::max(err, std::abs(direct - pure_trace_distance(u, v)));
    }
    return {"pure-state trace distance", err <= 1e-9, worst("max error", err)};
}

inline SelfTestResult check_diamond() {
    double err = 0.0;
    for (int j = 0; j < 50; ++j) {
        const double a = 2.0 * std::numbers::pi * (j + 0.5) / 50.0;
        err = std::max(err, std::abs(diamond_distance_unitaries(ComplexMatrix::identity(2),
                                                                phase_gate(a)) -
                                     std::abs(std::sin(a / 2.0))));
    }
    return {"diamond distance of the phase gate", err <= 1e-9, worst("max error", err)};
}

inline SelfTestResult check_jensen() {
    Rng rng(7);
    bool ok = true;
    for (int t = 0; t < 100; ++t) {
        std::vector<RoundDistribution::Entry> e;
        double s = 0.0;
        for (std::size_t n = 0; n < 1 + rng.below(8); ++n) {
            const double w = rng.uniform();
            e.push_back({n * (1 + rng.below(5)), w});
            s += w;
        }
        for (auto &x : e) {
            x.probability /= s;
        }
        const RoundDistribution om = RoundDistribution::renormalized(e, 1e-9);
        for (double c : {0.5, 0.9, 0.99}) {
            ok = ok && jensen_gap_check(om, c).holds;
        }
    }
    return {"Jensen step", ok, ""};
}

inline SelfTestResult check_lemma1() {
    bool ok = true;
    double ratio = 0.0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const GeneralSetup setup = random_general_setup(seed);
        const double alpha = 0.2 + 0.15 * static_cast<double>(seed);
        const Lemma1Check c = lemma1_check(setup, alpha);
        ok = ok && c.holds;
        if (c.bound > 0.0) {
            ratio = std::max(ratio, c.gap / c.bound);
        }
    }
    return {"acceptance gap under random combs", ok, worst("max gap/bound", ratio)};
}

inline SelfTestResult check_trivial_comb() {
    double err = 0.0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        Rng rng(100 + seed);
        std::vector<RoundDistribution::Entry> e{{1 + rng.below(3), 0.5}, {rng.below(4), 0.5}};
        ProtocolSpec spec = plus_trap_protocol(RoundDistribution::renormalized(e, 1e-9));
        if (seed % 2 == 1) {
            spec.traps = random_traps(seed);
        }
        const GeneralSetup g = general_setup_from_protocol(spec);
        for (const ServerStrategy &s :
             {ServerStrategy{Honest{}}, ServerStrategy{PhaseAttack(0.3 + 0.2 * seed, Placement::Pre)}}) {
            err = std::max(err,
                           std::abs(overall_acceptance(spec, s) - overall_acceptance_general(g, s)));
        }
    }
    return {"trivial comb matches the main-text engine", err <= 1e-10, worst("max error", err)};
}

inline SelfTestResult check_monte_carlo() {
    bool ok = true;
    const DensityOperator psi = DensityOperator::from_pure(plus_state(1));
    for (std::size_t n : {1, 3, 8}) {
        const ProtocolSpec spec = plus_trap_protocol(RoundDistribution::point_mass(n));
        const PhaseAttack atk(1.0, Placement::Post);
        const double exact = overall_acceptance(spec, atk);
        const auto mc = monte_carlo_run(spec, atk, psi, ComplexMatrix::identity(2), 20000, n);
        ok = ok && std::abs(mc.accept_rate - exact) <= monte_carlo_tolerance(exact, mc.trials);
    }
    return {"Monte-Carlo agrees with the exact sum", ok, ""};
}

} // namespace detail

inline std::vector<std::function<SelfTestResult()>> selftest_suite() {
    return {detail::check_main_text_theorems, detail::check_general_theorems,
            detail::check_pure_trace_distance, detail::check_diamond,
            detail::check_jensen,              detail::check_lemma1,
            detail::check_trivial_comb,        detail::check_monte_carlo};
}

/// Runs every check; exceptions become failed results.
inline std::vector<SelfTestResult> run_selftest() {
    std::vector<SelfTestResult> out;
    for (const auto &check : selftest_suite()) {
        try {
            out.push_back(check());
        } catch (const std::exception &e) {
            out.push_back({"(check raised)", false, e.what()});
        }
    }
    return out;
}

} // namespace vdqc
