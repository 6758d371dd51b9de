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

#include <fstream>
#include <sstream>

#include "support.hpp"
#include "vdqc/report.hpp"
#include "vdqc/scenario.hpp"

using namespace vdqc;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinAbs;

namespace {

std::string config_file(const std::string &name) {
    std::ifstream f(std::string(VDQC_SOURCE_DIR) + "/configs/" + name);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

// Field errors of a document that must fail to parse.
std::vector<std::string> errors_of(const std::string &text) {
    try {
        parse_config(text);
    } catch (const ConfigError &e) {
        return e.field_errors();
    }
    FAIL("expected a ConfigError");
    return {};
}

bool any_contains(const std::vector<std::string> &errs, const std::string &needle) {
    return std::any_of(errs.begin(), errs.end(),
                       [&](const std::string &e) { return e.find(needle) != std::string::npos; });
}

constexpr const char *kMinimal = R"({
  "name": "minimal",
  "protocol": {"omega": [{"n": 3, "p": 1.0}], "traps": {"family": "plus"},
               "acceptance": {"family": "per-round"}},
  "strategy": {"type": "honest"}
})";

} // namespace

TEST_CASE("the minimal config parses with defaults filled in", "[scenario]") {
    const ScenarioConfig cfg = parse_config(kMinimal);
    CHECK(cfg.name == "minimal");
    REQUIRE(cfg.omega.size() == 1);
    CHECK(cfg.omega[0].n == 3);
    CHECK(cfg.k == 1);
    CHECK(cfg.strategy.type == "honest");
    CHECK(cfg.models == std::vector<SecurityModel>{SecurityModel::StandAlone});
    CHECK(cfg.variant == TestVariant::MainText);
    CHECK_FALSE(cfg.sweep.has_value());
    CHECK_FALSE(cfg.monte_carlo.has_value());
}

TEST_CASE("every shipped config parses and runs to a passing report", "[scenario]") {
    for (const char *name : {"minimal.json", "standalone_sweep.json", "composable_log_sweep.json",
                             "bell_general.json", "custom_comb.json", "monte_carlo.json"}) {
        INFO(name);
        const std::string text = config_file(name);
        REQUIRE_FALSE(text.empty());
        const ScenarioConfig cfg = parse_config(text);
        CHECK(run_scenario(cfg).passed());
    }
}

TEST_CASE("omega probabilities must sum to one", "[scenario][errors]") {
    const auto errs = errors_of(R"({
      "protocol": {"omega": [{"n": 1, "p": 0.5}, {"n": 2, "p": 0.48}]},
      "strategy": {"type": "honest"}
    })");
    REQUIRE(errs.size() == 1);
    CHECK_THAT(errs[0], ContainsSubstring("protocol.omega"));
    CHECK_THAT(errs[0], ContainsSubstring("0.98"));
}

TEST_CASE("field-level errors name the offending path", "[scenario][errors]") {
    CHECK(any_contains(errors_of(R"({"protocol": {"omega": [{"n": 1, "p": 1}]},
                                     "strategy": {"type": "honest"}, "colour": 1})"),
                       "colour: unknown field"));
    CHECK(any_contains(errors_of(R"({"protocol": {"omega": [{"n": 1, "p": 1}], "k": 9},
                                     "strategy": {"type": "honest"}})"),
                       "protocol.k"));
    CHECK(any_contains(errors_of(R"({"protocol": {"omega": [{"n": -1, "p": 1}]},
                                     "strategy": {"type": "honest"}})"),
                       "protocol.omega[0].n"));
    CHECK(any_contains(errors_of(R"({"protocol": {"omega": [{"n": 1, "p": 1}]}})"),
                       "strategy: missing required field"));
    CHECK(any_contains(errors_of(R"({"protocol": {"omega": [{"n": 1, "p": 1}]},
                                     "strategy": {"type": "phase-attack", "alpha": "best"}})"),
                       "strategy.alpha"));
    CHECK(any_contains(errors_of(R"({"protocol": {"omega": [{"n": 1, "p": 1}]},
                                     "strategy": {"type": "honest", "alpha": 0.3}})"),
                       "strategy.alpha: only valid"));
    CHECK(any_contains(errors_of(R"({"protocol": {}, "strategy": {"type": "honest"},
                                     "sweep": {"N": [1], "N_log": {"min": 1, "max": 2, "count": 2}}})"),
                       "sweep: give exactly one"));
    CHECK(any_contains(errors_of("{not json"), "invalid JSON"));
    // Several problems are reported together.
    CHECK(errors_of(R"({"protocol": {"omega": [{"n": 1, "p": 1}], "k": 0},
                        "strategy": {"type": "magic"}, "models": ["x"]})")
              .size() >= 3);
}

TEST_CASE("cross-field consistency is enforced", "[scenario][errors]") {
    CHECK(any_contains(errors_of(R"({"protocol": {"omega": [{"n": 1, "p": 1}],
                                                  "traps": {"family": "bell"}},
                                     "strategy": {"type": "honest"}})"),
                       "requires variant general-tests"));
    CHECK(any_contains(errors_of(R"({"protocol": {"omega": [{"n": 1, "p": 1}]},
                                     "strategy": {"type": "honest"},
                                     "comb": {"layout": "parallel"}})"),
                       "comb: only valid with variant general-tests"));
    CHECK(any_contains(errors_of(R"({"protocol": {"omega": [{"n": 1, "p": 1}],
                                                  "traps": {"family": "bell"}},
                                     "strategy": {"type": "honest"}, "variant": "general-tests",
                                     "monte_carlo": {}})"),
                       "monte_carlo: only supported"));
    CHECK(any_contains(errors_of(R"({"protocol": {}, "strategy": {"type": "honest"}})"),
                       "protocol.omega: required"));
    CHECK(any_contains(errors_of(R"({"protocol": {"omega": [{"n": 1, "p": 1}],
                                                  "traps": {"family": "plus", "seed": 3}},
                                     "strategy": {"type": "honest"}})"),
                       "protocol.traps.seed"));
    CHECK(any_contains(errors_of(R"({"protocol": {"omega": [{"n": 2, "p": 1}]},
                                     "strategy": {"type": "honest"}, "variant": "general-tests",
                                     "comb": {"layout": "custom", "registers": 2,
                                              "holes": [0, 2]}})"),
                       "comb.holes[1]"));
    CHECK(any_contains(errors_of(R"({"protocol": {"omega": [{"n": 1, "p": 1}]},
                                     "strategy": {"type": "honest"}, "variant": "general-tests",
                                     "comb": {"layout": "custom", "registers": 1, "holes": [0],
                                              "teeth": [{"ops": [{"gate": "cnot", "wires": [0]}]},
                                                        {}]}})"),
                       "comb.teeth[0].ops[0].wires"));
}

TEST_CASE("theorem-optimal alpha is resolved per sweep point", "[scenario]") {
    const ScenarioConfig cfg = parse_config(config_file("standalone_sweep.json"));
    CHECK_FALSE(cfg.strategy.alpha.has_value());
    const ReportBundle b = run_scenario(cfg);
    REQUIRE(b.tradeoffs.size() == 12);
    for (const auto &r : b.tradeoffs) {
        const double s = std::sin(r.alpha / 2.0);
        if (r.model == SecurityModel::StandAlone) {
            CHECK_THAT(s * s, WithinAbs(4.0 / (9.0 * r.n_expected), 1e-12));
        } else {
            CHECK_THAT(s, WithinAbs(1.0 / (2.0 * std::sqrt(r.n_expected)), 1e-12));
        }
    }
}

TEST_CASE("to_json round-trips through parse_config", "[scenario]") {
    for (const char *name : {"minimal.json", "standalone_sweep.json", "composable_log_sweep.json",
                             "bell_general.json", "custom_comb.json", "monte_carlo.json"}) {
        INFO(name);
        const ScenarioConfig cfg = parse_config(config_file(name));
        const ScenarioConfig again = parse_config(to_json(cfg).dump());
        CHECK(again == cfg);
        CHECK(config_hash(again) == config_hash(cfg));
    }
}

TEST_CASE("config_hash is deterministic and sensitive to content", "[scenario]") {
    const ScenarioConfig a = parse_config(kMinimal);
    ScenarioConfig b = parse_config(kMinimal);
    CHECK(config_hash(a) == config_hash(b));
    CHECK(config_hash(a).size() == 16);
    b.k = 2;
    CHECK(config_hash(a) != config_hash(b));
}

TEST_CASE("sweep_points expands each sweep form", "[scenario]") {
    ScenarioConfig cfg = parse_config(kMinimal);
    auto pts = sweep_points(cfg);
    REQUIRE(pts.size() == 1);
    CHECK(pts[0].n_expected == 3.0);

    cfg.sweep = SweepConfig{{1.0, 2.5}, std::nullopt, {}};
    pts = sweep_points(cfg);
    REQUIRE(pts.size() == 2);
    CHECK_THAT(pts[1].omega.mean(), WithinAbs(2.5, 1e-12));
    CHECK(pts[1].omega.support().size() == 2);

    cfg.sweep = SweepConfig{{}, LogSweep{1.0, 100.0, 3}, {}};
    pts = sweep_points(cfg);
    REQUIRE(pts.size() == 3);
    CHECK_THAT(pts[1].n_expected, WithinAbs(10.0, 1e-12));
    CHECK(pts[2].n_expected == 100.0);

    cfg.sweep = SweepConfig{{}, std::nullopt, {{{1, 0.5}, {3, 0.5}}}};
    pts = sweep_points(cfg);
    REQUIRE(pts.size() == 1);
    CHECK_THAT(pts[0].n_expected, WithinAbs(2.0, 1e-15));
}

TEST_CASE("the composable log sweep passes with margin", "[scenario]") {
    const ReportBundle b = run_scenario(parse_config(config_file("composable_log_sweep.json")));
    REQUIRE(b.tradeoffs.size() == 20);
    for (const auto &r : b.tradeoffs) {
        CHECK(r.passed());
        CHECK((r.eps_h + r.eps_d) / r.bound >= 1.0);
    }
    CHECK(b.passed());
}

TEST_CASE("Monte-Carlo rows accompany the exact values", "[scenario]") {
    ScenarioConfig cfg = parse_config(config_file("monte_carlo.json"));
    cfg.monte_carlo->trials = 20000;
    const ReportBundle b = run_scenario(cfg);
    REQUIRE(b.monte_carlo.size() == 4);
    for (const auto &m : b.monte_carlo) {
        CHECK(m.trials == 20000);
        CHECK(m.within);
        CHECK_THAT(m.tolerance, WithinAbs(monte_carlo_tolerance(m.exact, 20000), 1e-15));
    }
    CHECK(b.monte_carlo[0].strategy == "honest");
    CHECK(b.monte_carlo[0].exact == 1.0);
    CHECK(b.metadata.seed == 2026);
    RunOptions o;
    o.seed = 77;
    CHECK(run_scenario(cfg, o).metadata.seed == 77);
}

TEST_CASE("round tables list every (n, ell) for both strategies", "[scenario]") {
    RunOptions o;
    o.rounds = true;
    const ReportBundle b = run_scenario(parse_config(kMinimal), o);
    // n = 3: four output rounds, honest and attack rows.
    REQUIRE(b.rounds.size() == 8);
    double w = 0.0;
    for (const auto &r : b.rounds) {
        if (r.strategy == "honest") {
            w += r.weight;
            CHECK_THAT(r.p, WithinAbs(1.0, 1e-12));
        }
    }
    CHECK_THAT(w, WithinAbs(1.0, 1e-12));
}

TEST_CASE("runtime errors carry the sweep index, N and stage", "[scenario][errors]") {
    const ScenarioConfig bad_bound = parse_config(R"({
      "protocol": {"traps": {"family": "bell"}},
      "strategy": {"type": "phase-attack"}, "variant": "general-tests",
      "sweep": {"N": [1, 0.1]}
    })");
    CHECK_THROWS_WITH(run_scenario(bad_bound),
                      ContainsSubstring("sweep[1] (N=0.1): bounds-verifier:"));
    const ScenarioConfig too_big = parse_config(R"({
      "protocol": {"traps": {"family": "bell"}},
      "strategy": {"type": "phase-attack"}, "variant": "general-tests",
      "sweep": {"N": [5]}
    })");
    CHECK_THROWS_WITH(run_scenario(too_big), ContainsSubstring("sweep[0] (N=5): comb-engine:"));
}

TEST_CASE("parallel evaluation matches serial evaluation", "[scenario]") {
    ScenarioConfig cfg = parse_config(config_file("monte_carlo.json"));
    cfg.monte_carlo->trials = 5000;
    cfg.sweep = SweepConfig{{1.0, 2.0, 3.5, 6.0}, std::nullopt, {}};
    RunOptions serial;
    serial.rounds = true;
    RunOptions par = serial;
    par.parallel = true;
    const ReportBundle a = run_scenario(cfg, serial);
    const ReportBundle b = run_scenario(cfg, par);
    CHECK(bundle_to_json(a).dump() == bundle_to_json(b).dump());
    CHECK(rounds_csv(a) == rounds_csv(b));
    CHECK(monte_carlo_csv(a) == monte_carlo_csv(b));
}
