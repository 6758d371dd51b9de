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
 * Seeded sampling of protocol runs, as a stochastic cross-check of the exact
 * acceptance sums.
 */

#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "protocol.hpp"

namespace vdqc {

struct MonteCarloResult {
    double accept_rate;
    double abort_rate;
    std::uint64_t trials;
    std::uint64_t seed;
    AbortExtendedState output; ///< empirical client output
};

/// Half-width 4 sqrt(p(1-p)/trials) used to compare an estimate with p.
inline double monte_carlo_tolerance(double p, std::uint64_t trials) {
    return 4.0 * std::sqrt(std::max(0.0, p * (1.0 - p)) / static_cast<double>(trials));
}

/**
 * @brief Simulates `trials` independent protocol runs.
 *
 * Each run samples n ~ Omega and ell from the output-round rule, then accepts
 * round by round with the per-round acceptance probabilities (or with
 * p_{(n,ell)} for a global rule). Deterministic for a fixed seed. Each call
 * owns its generator, so concurrent calls do not interact.
 */
inline MonteCarloResult monte_carlo_run(const ProtocolSpec &spec,
                                        const ServerStrategy &strategy,
                                        const DensityOperator &input,
                                        const ComplexMatrix &target_unitary,
                                        std::uint64_t trials, std::uint64_t seed) {
    if (trials < 1) {
        throw DomainError("monte_carlo_run: trials must be >= 1");
    }
    if (input.dim() != pow2(spec.k)) {
        throw DimensionError("monte_carlo_run: input dimension != 2^k");
    }
    const DensityOperator payload =
        conjugate(transform_round(strategy, target_unitary, spec.k), input);

    const auto &support = spec.omega.support();
    std::vector<double> cumulative;
    double acc = 0.0;
    for (const auto &e : support) {
        acc += e.probability;
        cumulative.push_back(acc);
    }

    const bool per_round = std::holds_alternative<PerRoundAcceptance>(spec.acceptance);
    std::map<std::size_t, std::vector<double>> round_probs;
    std::map<std::size_t, std::vector<double>> ell_weights;
    std::map<std::pair<std::size_t, std::size_t>, double> global_probs;

    Rng rng(seed);
    std::uint64_t accepted = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        const double u = rng.uniform();
        std::size_t idx = 0;
        while (idx + 1 < support.size() && u >= cumulative[idx]) {
            ++idx;
        }
        const std::size_t n = support[idx].n;

        std::size_t ell = 0;
        if (std::holds_alternative<UniformOutputRound>(spec.output_rule)) {
            ell = 1 + static_cast<std::size_t>(rng.below(n + 1));
        } else {
            auto it = ell_weights.find(n);
            if (it == ell_weights.end()) {
                it = ell_weights.emplace(n, output_round_weights(spec.output_rule, n)).first;
            }
            const double v = rng.uniform();
            double c = 0.0;
            ell = n + 1;
            for (std::size_t j = 0; j <= n; ++j) {
                c += it->second[j];
                if (v < c) {
                    ell = j + 1;
                    break;
                }
            }
        }

        bool ok = true;
        if (per_round) {
            auto it = round_probs.find(n);
            if (it == round_probs.end()) {
                it = round_probs.emplace(n, per_round_acceptance(spec, strategy, n)).first;
            }
            for (std::size_t i = 1; i <= n + 1 && ok; ++i) {
                if (i != ell) {
                    ok = rng.bernoulli(it->second[i - 1]);
                }
            }
        } else {
            const auto key = std::make_pair(n, ell);
            auto it = global_probs.find(key);
            if (it == global_probs.end()) {
                it = global_probs.emplace(key, global_acceptance(spec, strategy, n, ell)).first;
            }
            ok = rng.bernoulli(it->second);
        }
        accepted += ok ? 1 : 0;
    }

    const double rate = static_cast<double>(accepted) / static_cast<double>(trials);
    return {rate, 1.0 - rate, trials, seed, mix_with_abort(payload, rate)};
}

} // namespace vdqc
