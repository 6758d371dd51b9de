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

// vdqc: run scenario files and the built-in invariant suite.
//
//   vdqc check    --config F [--out P] [--format csv|json]
//   vdqc sweep    --config F [--out P] [--format csv|json] [--parallel true]
//   vdqc mc       --config F [--out P] [--format csv|json] [--seed S]
//   vdqc selftest
//
// Exit status: 0 when every bound check and Monte-Carlo comparison passes,
// 1 when a check fails, 2 on a configuration or runtime error.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "vdqc/report.hpp"
#include "vdqc/scenario.hpp"
#include "vdqc/selftest.hpp"

namespace {

struct CommonArgs {
    std::string config;
    std::string out;
    std::string format = "csv";
    std::optional<std::uint64_t> seed;
    bool parallel = false;
};

enum class Mode { Check, Sweep, MonteCarlo };

void add_common(CLI::App *cmd, CommonArgs &args, bool with_seed, bool with_parallel) {
    cmd->add_option("--config", args.config, "Scenario file (JSON)")->required();
    cmd->add_option("--out", args.out, "Output path; defaults to the config's output section");
    cmd->add_option("--format", args.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}));
    if (with_seed) {
        cmd->add_option("--seed", args.seed, "Monte-Carlo seed override");
    }
    if (with_parallel) {
        cmd->add_flag("--parallel", args.parallel, "Evaluate sweep points on worker threads");
    }
}

int run_mode(Mode mode, const CommonArgs &args) {
    const auto start = std::chrono::steady_clock::now();
    vdqc::ScenarioConfig cfg = vdqc::parse_config(vdqc::read_text(args.config));
    vdqc::RunOptions opts;
    opts.parallel = args.parallel;
    opts.seed = args.seed;
    switch (mode) {
    case Mode::Check:
        if (cfg.omega.empty()) {
            throw vdqc::ConfigError({"protocol.omega: required by the check command"});
        }
        cfg.sweep.reset();
        cfg.monte_carlo.reset();
        opts.rounds = true;
        break;
    case Mode::Sweep:
        if (!cfg.sweep) {
            throw vdqc::ConfigError({"sweep: required by the sweep command"});
        }
        cfg.monte_carlo.reset();
        break;
    case Mode::MonteCarlo:
        if (!cfg.monte_carlo) {
            cfg.monte_carlo = vdqc::MonteCarloConfig{};
        }
        if (cfg.variant != vdqc::TestVariant::MainText) {
            throw vdqc::ConfigError({"variant: the mc command needs variant main-text"});
        }
        break;
    }
    const vdqc::ReportBundle bundle = vdqc::run_scenario(cfg, opts);
    const auto format = args.format == "json" ? vdqc::ReportFormat::Json : vdqc::ReportFormat::Csv;
    std::string primary;
    if (format == vdqc::ReportFormat::Json) {
        primary = vdqc::render(bundle, format);
    } else if (mode == Mode::MonteCarlo) {
        primary = vdqc::monte_carlo_csv(bundle);
    } else {
        primary = vdqc::tradeoff_csv(bundle);
    }

    if (!args.out.empty()) {
        vdqc::write_text(args.out, primary);
    } else {
        const auto &o = bundle.config.output;
        const std::string &path = format == vdqc::ReportFormat::Json ? o.json
                                  : mode == Mode::MonteCarlo         ? o.mc_csv
                                                                     : o.csv;
        if (path.empty()) {
            std::cout << primary;
        } else {
            vdqc::write_text(path, primary);
        }
        if (!o.rounds_csv.empty() && !bundle.rounds.empty()) {
            vdqc::write_text(o.rounds_csv, vdqc::rounds_csv(bundle));
        }
    }

    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::size_t failed = 0;
    for (const auto &r : bundle.tradeoffs) {
        failed += r.passed() ? 0 : 1;
    }
    for (const auto &m : bundle.monte_carlo) {
        failed += m.within ? 0 : 1;
    }
    std::fprintf(stderr, "%zu report row(s), %zu Monte-Carlo row(s), %zu failing, %.2f s\n",
                 bundle.tradeoffs.size(), bundle.monte_carlo.size(), failed, secs);
    return bundle.passed() ? 0 : 1;
}

int run_selftest() {
    int failures = 0;
    for (const auto &r : vdqc::run_selftest()) {
        std::printf("%s  %s%s%s\n", r.passed ? "PASS" : "FAIL", r.name.c_str(),
                    r.detail.empty() ? "" : "  ", r.detail.c_str());
        failures += r.passed ? 0 : 1;
    }
    return failures == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Cut-and-choose verification trade-off calculator"};
    app.require_subcommand(1);
    CommonArgs check_args;
    CommonArgs sweep_args;
    CommonArgs mc_args;
    auto *check = app.add_subcommand("check", "Evaluate the protocol.omega point of a scenario");
    add_common(check, check_args, false, false);
    auto *sweep = app.add_subcommand("sweep", "Evaluate every point of the scenario's sweep");
    add_common(sweep, sweep_args, false, true);
    auto *mc = app.add_subcommand("mc", "Compare Monte-Carlo estimates with exact acceptance");
    add_common(mc, mc_args, true, true);
    auto *self = app.add_subcommand("selftest", "Run the built-in invariant suite");

    CLI11_PARSE(app, argc, argv);

    try {
        if (check->parsed()) {
            return run_mode(Mode::Check, check_args);
        }
        if (sweep->parsed()) {
            return run_mode(Mode::Sweep, sweep_args);
        }
        if (mc->parsed()) {
            return run_mode(Mode::MonteCarlo, mc_args);
        }
        if (self->parsed()) {
            return run_selftest();
        }
    } catch (const vdqc::Error &e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 2;
}
