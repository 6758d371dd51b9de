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
 * CSV and JSON rendering of a ReportBundle. Numbers carry 12 significant
 * digits in both formats.
 */

#pragma once

#include <cerrno>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "scenario.hpp"

namespace vdqc {

enum class ReportFormat { Csv, Json };

namespace detail {

inline std::string num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

inline nlohmann::json num_json(double x) {
    if (!std::isfinite(x)) {
        return nullptr;
    }
    return std::stod(num(x));
}

inline const char *flag(bool b) { return b ? "true" : "false"; }

} // namespace detail

/// Trade-off table header: fixed columns followed by lhs, rhs and holds for
/// every proof step.
inline std::vector<std::string> tradeoff_csv_columns() {
    std::vector<std::string> cols{"model", "variant", "N",     "alpha",     "p_H",
                                  "p_D",   "eps_h",   "eps_d", "bound",     "satisfied",
                                  "bound_applicable"};
    for (const auto &s : proof_step_names()) {
        cols.push_back(s + "_lhs");
        cols.push_back(s + "_rhs");
        cols.push_back(s + "_holds");
    }
    return cols;
}

inline std::string join_csv(const std::vector<std::string> &cells) {
    std::string line;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        line += (i == 0 ? "" : ",") + cells[i];
    }
    return line + "\n";
}

inline std::string tradeoff_csv(const ReportBundle &b) {
    std::string out = join_csv(tradeoff_csv_columns());
    for (const auto &r : b.tradeoffs) {
        std::vector<std::string> row{std::string(to_string(r.model)),
                                     std::string(to_string(r.variant)),
                                     detail::num(r.n_expected),
                                     detail::num(r.alpha),
                                     detail::num(r.p_h),
                                     detail::num(r.p_d),
                                     detail::num(r.eps_h),
                                     detail::num(r.eps_d),
                                     detail::num(r.bound),
                                     detail::flag(r.satisfied),
                                     detail::flag(r.bound_applicable)};
        for (const auto &name : proof_step_names()) {
            const auto it = std::find_if(r.proof_steps.begin(), r.proof_steps.end(),
                                         [&](const ProofStep &s) { return s.name == name; });
            if (it == r.proof_steps.end() || !it->applicable) {
                row.insert(row.end(), {"", "", "n/a"});
            } else {
                row.insert(row.end(),
                           {detail::num(it->lhs), detail::num(it->rhs), detail::flag(it->holds)});
            }
        }
        out += join_csv(row);
    }
    return out;
}

inline std::string rounds_csv(const ReportBundle &b) {
    std::string out = join_csv(
        {"sweep_index", "N", "model", "strategy", "alpha", "n", "ell", "weight", "p"});
    for (const auto &r : b.rounds) {
        out += join_csv({std::to_string(r.sweep_index), detail::num(r.n_expected),
                         std::string(to_string(r.model)), r.strategy, detail::num(r.alpha),
                         std::to_string(r.n), std::to_string(r.ell), detail::num(r.weight),
                         detail::num(r.p)});
    }
    return out;
}

inline std::string monte_carlo_csv(const ReportBundle &b) {
    std::string out = join_csv({"sweep_index", "N", "model", "strategy", "alpha", "trials",
                                "seed", "exact", "empirical", "tolerance", "within"});
    for (const auto &m : b.monte_carlo) {
        out += join_csv({std::to_string(m.sweep_index), detail::num(m.n_expected),
                         std::string(to_string(m.model)), m.strategy, detail::num(m.alpha),
                         std::to_string(m.trials), std::to_string(m.seed), detail::num(m.exact),
                         detail::num(m.empirical), detail::num(m.tolerance),
                         detail::flag(m.within)});
    }
    return out;
}

/// The whole bundle, including the canonical config it was produced from.
inline nlohmann::json bundle_to_json(const ReportBundle &b) {
    using nlohmann::json;
    using detail::num_json;
    json tradeoffs = json::array();
    for (const auto &r : b.tradeoffs) {
        json steps = json::array();
        for (const auto &s : r.proof_steps) {
            steps.push_back({{"name", s.name},
                             {"lhs", num_json(s.lhs)},
                             {"rhs", num_json(s.rhs)},
                             {"relation", s.relation},
                             {"holds", s.holds},
                             {"applicable", s.applicable}});
        }
        tradeoffs.push_back({{"model", std::string(to_string(r.model))},
                             {"variant", std::string(to_string(r.variant))},
                             {"N", num_json(r.n_expected)},
                             {"alpha", num_json(r.alpha)},
                             {"p_H", num_json(r.p_h)},
                             {"p_D", num_json(r.p_d)},
                             {"eps_h", num_json(r.eps_h)},
                             {"eps_d", num_json(r.eps_d)},
                             {"bound", num_json(r.bound)},
                             {"satisfied", r.satisfied},
                             {"bound_applicable", r.bound_applicable},
                             {"trivial_attack", r.trivial_attack},
                             {"proof_steps", steps}});
    }
    json rounds = json::array();
    for (const auto &r : b.rounds) {
        rounds.push_back({{"sweep_index", r.sweep_index},
                          {"N", num_json(r.n_expected)},
                          {"model", std::string(to_string(r.model))},
                          {"strategy", r.strategy},
                          {"alpha", num_json(r.alpha)},
                          {"n", r.n},
                          {"ell", r.ell},
                          {"weight", num_json(r.weight)},
                          {"p", num_json(r.p)}});
    }
    json mc = json::array();
    for (const auto &m : b.monte_carlo) {
        mc.push_back({{"sweep_index", m.sweep_index},
                      {"N", num_json(m.n_expected)},
                      {"model", std::string(to_string(m.model))},
                      {"strategy", m.strategy},
                      {"alpha", num_json(m.alpha)},
                      {"trials", m.trials},
                      {"seed", m.seed},
                      {"exact", num_json(m.exact)},
                      {"empirical", num_json(m.empirical)},
                      {"tolerance", num_json(m.tolerance)},
                      {"within", m.within}});
    }
    return {{"config", to_json(b.config)},
            {"metadata",
             {{"config_hash", b.metadata.config_hash},
              {"seed", b.metadata.seed},
              {"version", b.metadata.version}}},
            {"tradeoffs", tradeoffs},
            {"rounds", rounds},
            {"monte_carlo", mc},
            {"passed", b.passed()}};
}

inline std::string render(const ReportBundle &b, ReportFormat format) {
    return format == ReportFormat::Csv ? tradeoff_csv(b) : bundle_to_json(b).dump(2) + "\n";
}

/// Writes `content` to `path`, replacing any existing file.
inline void write_text(const std::string &path, const std::string &content) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) {
        throw IoError("cannot open '" + path + "' for writing: " + std::strerror(errno));
    }
    f << content;
    f.flush();
    if (!f) {
        throw IoError("write to '" + path + "' failed");
    }
}

inline std::string read_text(const std::string &path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) {
        throw IoError("cannot open '" + path + "' for reading: " + std::strerror(errno));
    }
    return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

inline void emit(const ReportBundle &b, ReportFormat format, const std::string &path) {
    write_text(path, render(b, format));
}

} // namespace vdqc
