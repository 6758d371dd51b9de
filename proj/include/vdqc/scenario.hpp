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
 * Scenario configuration (JSON), its validation, and the orchestration of a
 * scenario into a ReportBundle. See docs/scenario.schema.json for the format.
 */

#pragma once

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <exception>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <json.hpp>

#include "bounds.hpp"
#include "general_protocol.hpp"
#include "monte_carlo.hpp"
#include "protocol.hpp"
#include "strategy.hpp"

namespace vdqc {

inline constexpr const char *kVersion = "0.1.0";

using OmegaEntries = std::vector<RoundDistribution::Entry>;

struct TrapConfig {
    std::string family = "plus"; ///< plus, computational, random, bell
    std::uint64_t seed = 0;      ///< random family only
    friend bool operator==(const TrapConfig &, const TrapConfig &) = default;
};

struct AcceptanceConfig {
    std::string family = "per-round"; ///< per-round, global
    double weight = 1.0;              ///< per-round only
    friend bool operator==(const AcceptanceConfig &, const AcceptanceConfig &) = default;
};

struct StrategyConfig {
    std::string type = "phase-attack"; ///< honest, phase-attack
    std::optional<double> alpha;       ///< empty: theorem-optimal
    Placement placement = Placement::Post;
    friend bool operator==(const StrategyConfig &, const StrategyConfig &) = default;
};

struct CombConfig {
    std::string layout = "parallel"; ///< parallel, custom
    std::size_t registers = 1;
    std::size_t memory_qubits = 0;
    std::vector<std::size_t> holes;
    std::vector<ToothDescriptor> teeth; ///< empty: identity teeth
    friend bool operator==(const CombConfig &, const CombConfig &) = default;
};

struct LogSweep {
    double min = 1.0;
    double max = 1.0;
    std::size_t count = 1;
    friend bool operator==(const LogSweep &, const LogSweep &) = default;
};

/// Exactly one of the three forms is used.
struct SweepConfig {
    std::vector<double> n_values;
    std::optional<LogSweep> n_log;
    std::vector<OmegaEntries> omegas;
    friend bool operator==(const SweepConfig &, const SweepConfig &) = default;
};

struct MonteCarloConfig {
    std::uint64_t trials = 100000;
    std::uint64_t seed = 1;
    friend bool operator==(const MonteCarloConfig &, const MonteCarloConfig &) = default;
};

struct OutputConfig {
    std::string csv;
    std::string json;
    std::string rounds_csv;
    std::string mc_csv;
    friend bool operator==(const OutputConfig &, const OutputConfig &) = default;
};

struct ScenarioConfig {
    std::string name;
    OmegaEntries omega; ///< may be empty when a sweep is given
    std::size_t k = 1;
    TrapConfig traps;
    AcceptanceConfig acceptance;
    StrategyConfig strategy;
    std::vector<SecurityModel> models{SecurityModel::StandAlone};
    TestVariant variant = TestVariant::MainText;
    CombConfig comb;
    std::optional<SweepConfig> sweep;
    std::optional<MonteCarloConfig> monte_carlo;
    OutputConfig output;
    friend bool operator==(const ScenarioConfig &, const ScenarioConfig &) = default;
};

namespace detail {

using nlohmann::json;

// Collects field-level errors while walking a JSON document.
class FieldReader {
  public:
    void error(const std::string &path, const std::string &msg) {
        errors_.push_back(path + ": " + msg);
    }

    [[nodiscard]] const std::vector<std::string> &errors() const noexcept { return errors_; }

    bool object(const json &j, const std::string &path, const std::vector<std::string> &allowed) {
        if (!j.is_object()) {
            error(path, "expected an object");
            return false;
        }
        for (const auto &[key, value] : j.items()) {
            if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
                error(join(path, key), "unknown field");
            }
        }
        return true;
    }

    static std::string join(const std::string &path, const std::string &key) {
        return path.empty() ? key : path + "." + key;
    }

    static std::string index(const std::string &path, std::size_t i) {
        return path + "[" + std::to_string(i) + "]";
    }

    std::optional<std::string> string(const json &j, const std::string &path) {
        if (!j.is_string()) {
            error(path, "expected a string");
            return std::nullopt;
        }
        return j.get<std::string>();
    }

    std::optional<std::string> choice(const json &j, const std::string &path,
                                      const std::vector<std::string> &options) {
        auto s = string(j, path);
        if (s && std::find(options.begin(), options.end(), *s) == options.end()) {
            std::string list;
            for (const auto &o : options) {
                list += (list.empty() ? "" : ", ") + o;
            }
            error(path, "'" + *s + "' is not one of: " + list);
            return std::nullopt;
        }
        return s;
    }

    std::optional<double> number(const json &j, const std::string &path) {
        if (!j.is_number()) {
            error(path, "expected a number");
            return std::nullopt;
        }
        const double v = j.get<double>();
        if (!std::isfinite(v)) {
            error(path, "expected a finite number");
            return std::nullopt;
        }
        return v;
    }

    std::optional<std::uint64_t> unsigned_int(const json &j, const std::string &path) {
        if (!j.is_number_integer() || (j.is_number_integer() && !j.is_number_unsigned() &&
                                       j.get<std::int64_t>() < 0)) {
            error(path, "expected a non-negative integer");
            return std::nullopt;
        }
        return j.get<std::uint64_t>();
    }

    std::optional<bool> boolean(const json &j, const std::string &path) {
        if (!j.is_boolean()) {
            error(path, "expected true or false");
            return std::nullopt;
        }
        return j.get<bool>();
    }

  private:
    std::vector<std::string> errors_;
};

inline std::optional<OmegaEntries> read_omega(FieldReader &r, const json &j,
                                              const std::string &path) {
    if (!j.is_array() || j.empty()) {
        r.error(path, "expected a non-empty array of {n, p}");
        return std::nullopt;
    }
    OmegaEntries out;
    double sum = 0.0;
    bool ok = true;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string p = FieldReader::index(path, i);
        if (!r.object(j[i], p, {"n", "p"})) {
            ok = false;
            continue;
        }
        if (!j[i].contains("n") || !j[i].contains("p")) {
            r.error(p, "requires both n and p");
            ok = false;
            continue;
        }
        const auto n = r.unsigned_int(j[i]["n"], FieldReader::join(p, "n"));
        const auto prob = r.number(j[i]["p"], FieldReader::join(p, "p"));
        if (prob && *prob < 0.0) {
            r.error(FieldReader::join(p, "p"), "probability must be non-negative");
            ok = false;
            continue;
        }
        if (!n || !prob) {
            ok = false;
            continue;
        }
        out.push_back({static_cast<std::size_t>(*n), *prob});
        sum += *prob;
    }
    if (!ok) {
        return std::nullopt;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "probabilities sum to %.12g, expected 1 within 1e-9", sum);
        r.error(path, buf);
        return std::nullopt;
    }
    return out;
}

inline void read_protocol(FieldReader &r, const json &j, ScenarioConfig &cfg) {
    const std::string path = "protocol";
    if (!r.object(j, path, {"omega", "k", "traps", "acceptance", "output_round"})) {
        return;
    }
    if (j.contains("omega")) {
        if (auto om = read_omega(r, j["omega"], "protocol.omega")) {
            cfg.omega = std::move(*om);
        }
    }
    if (j.contains("k")) {
        if (auto k = r.unsigned_int(j["k"], "protocol.k")) {
            if (*k < 1 || *k > 6) {
                r.error("protocol.k", "must lie in 1..6");
            } else {
                cfg.k = static_cast<std::size_t>(*k);
            }
        }
    }
    if (j.contains("traps")) {
        const json &t = j["traps"];
        if (r.object(t, "protocol.traps", {"family", "seed"})) {
            if (!t.contains("family")) {
                r.error("protocol.traps.family", "missing required field");
            } else if (auto f = r.choice(t["family"], "protocol.traps.family",
                                         {"plus", "computational", "random", "bell"})) {
                cfg.traps.family = *f;
            }
            if (t.contains("seed")) {
                if (cfg.traps.family != "random") {
                    r.error("protocol.traps.seed", "only valid for the random family");
                } else if (auto s = r.unsigned_int(t["seed"], "protocol.traps.seed")) {
                    cfg.traps.seed = *s;
                }
            }
        }
    }
    if (j.contains("acceptance")) {
        const json &a = j["acceptance"];
        if (r.object(a, "protocol.acceptance", {"family", "weight"})) {
            if (!a.contains("family")) {
                r.error("protocol.acceptance.family", "missing required field");
            } else if (auto f = r.choice(a["family"], "protocol.acceptance.family",
                                         {"per-round", "global"})) {
                cfg.acceptance.family = *f;
            }
            if (a.contains("weight")) {
                if (cfg.acceptance.family != "per-round") {
                    r.error("protocol.acceptance.weight", "only valid for the per-round family");
                } else if (auto w = r.number(a["weight"], "protocol.acceptance.weight")) {
                    if (*w < 0.0 || *w > 1.0) {
                        r.error("protocol.acceptance.weight", "must lie in [0, 1]");
                    } else {
                        cfg.acceptance.weight = *w;
                    }
                }
            }
        }
    }
    if (j.contains("output_round")) {
        r.choice(j["output_round"], "protocol.output_round", {"uniform"});
    }
}

inline void read_strategy(FieldReader &r, const json &j, ScenarioConfig &cfg) {
    if (!r.object(j, "strategy", {"type", "alpha", "placement"})) {
        return;
    }
    if (!j.contains("type")) {
        r.error("strategy.type", "missing required field");
    } else if (auto t = r.choice(j["type"], "strategy.type", {"honest", "phase-attack"})) {
        cfg.strategy.type = *t;
    }
    const bool attack = cfg.strategy.type == "phase-attack";
    if (j.contains("alpha")) {
        if (!attack) {
            r.error("strategy.alpha", "only valid for type phase-attack");
        } else if (j["alpha"].is_string()) {
            r.choice(j["alpha"], "strategy.alpha", {"theorem-optimal"});
        } else if (auto a = r.number(j["alpha"], "strategy.alpha")) {
            cfg.strategy.alpha = *a;
        }
    }
    if (j.contains("placement")) {
        if (!attack) {
            r.error("strategy.placement", "only valid for type phase-attack");
        } else if (auto p = r.choice(j["placement"], "strategy.placement", {"pre", "post"})) {
            cfg.strategy.placement = *p == "pre" ? Placement::Pre : Placement::Post;
        }
    }
}

inline void read_comb(FieldReader &r, const json &j, ScenarioConfig &cfg) {
    if (!r.object(j, "comb", {"layout", "registers", "memory_qubits", "holes", "teeth"})) {
        return;
    }
    CombConfig &c = cfg.comb;
    if (j.contains("layout")) {
        if (auto l = r.choice(j["layout"], "comb.layout", {"parallel", "custom"})) {
            c.layout = *l;
        }
    }
    const bool custom = c.layout == "custom";
    for (const char *key : {"registers", "memory_qubits", "holes", "teeth"}) {
        if (j.contains(key) && !custom) {
            r.error(std::string("comb.") + key, "only valid for layout custom");
        }
    }
    if (!custom) {
        return;
    }
    if (!j.contains("registers")) {
        r.error("comb.registers", "missing required field");
    } else if (auto w = r.unsigned_int(j["registers"], "comb.registers")) {
        if (*w < 1 || *w > 4) {
            r.error("comb.registers", "must lie in 1..4");
        } else {
            c.registers = static_cast<std::size_t>(*w);
        }
    }
    if (j.contains("memory_qubits")) {
        if (auto m = r.unsigned_int(j["memory_qubits"], "comb.memory_qubits")) {
            if (*m > 2) {
                r.error("comb.memory_qubits", "must lie in 0..2");
            } else {
                c.memory_qubits = static_cast<std::size_t>(*m);
            }
        }
    }
    if (!j.contains("holes") || !j["holes"].is_array()) {
        r.error("comb.holes", "expected an array of register indices");
    } else {
        for (std::size_t i = 0; i < j["holes"].size(); ++i) {
            const std::string p = FieldReader::index("comb.holes", i);
            if (auto h = r.unsigned_int(j["holes"][i], p)) {
                if (*h >= c.registers) {
                    r.error(p, "register index outside 0.." + std::to_string(c.registers - 1));
                } else {
                    c.holes.push_back(static_cast<std::size_t>(*h));
                }
            }
        }
        if (c.holes.empty() || c.holes.size() > 4) {
            r.error("comb.holes", "must list 1..4 holes");
        }
    }
    const std::size_t wires = cfg.k * c.registers + c.memory_qubits;
    if (j.contains("teeth")) {
        const json &t = j["teeth"];
        if (!t.is_array()) {
            r.error("comb.teeth", "expected an array of tooth descriptors");
            return;
        }
        if (t.size() != c.holes.size() + 1) {
            r.error("comb.teeth", "expected " + std::to_string(c.holes.size() + 1) +
                                      " teeth for " + std::to_string(c.holes.size()) + " holes");
        }
        for (std::size_t i = 0; i < t.size(); ++i) {
            const std::string p = FieldReader::index("comb.teeth", i);
            ToothDescriptor tooth;
            if (!r.object(t[i], p, {"permutation", "ops"})) {
                continue;
            }
            if (t[i].contains("permutation")) {
                const json &perm = t[i]["permutation"];
                const std::string pp = FieldReader::join(p, "permutation");
                if (!perm.is_array() || perm.size() != c.registers) {
                    r.error(pp, "expected " + std::to_string(c.registers) + " register indices");
                } else {
                    std::vector<bool> seen(c.registers, false);
                    for (std::size_t a = 0; a < perm.size(); ++a) {
                        auto v = r.unsigned_int(perm[a], FieldReader::index(pp, a));
                        if (v && *v < c.registers && !seen[*v]) {
                            seen[*v] = true;
                            tooth.permutation.push_back(static_cast<std::size_t>(*v));
                        } else if (v) {
                            r.error(FieldReader::index(pp, a), "not a permutation entry");
                        }
                    }
                }
            }
            if (t[i].contains("ops")) {
                const json &ops = t[i]["ops"];
                const std::string op_path = FieldReader::join(p, "ops");
                if (!ops.is_array()) {
                    r.error(op_path, "expected an array");
                    continue;
                }
                for (std::size_t a = 0; a < ops.size(); ++a) {
                    const std::string q = FieldReader::index(op_path, a);
                    if (!r.object(ops[a], q, {"gate", "wires", "parameter"})) {
                        continue;
                    }
                    PaletteOp op;
                    if (!ops[a].contains("gate")) {
                        r.error(FieldReader::join(q, "gate"), "missing required field");
                        continue;
                    }
                    if (auto g = r.choice(ops[a]["gate"], FieldReader::join(q, "gate"),
                                          palette_gates())) {
                        op.gate = *g;
                    } else {
                        continue;
                    }
                    const std::size_t arity = op.gate == "cnot" ? 2 : 1;
                    const std::string wp = FieldReader::join(q, "wires");
                    if (!ops[a].contains("wires") || !ops[a]["wires"].is_array() ||
                        ops[a]["wires"].size() != arity) {
                        r.error(wp, "expected " + std::to_string(arity) + " wire index(es)");
                        continue;
                    }
                    for (std::size_t b = 0; b < arity; ++b) {
                        auto wv = r.unsigned_int(ops[a]["wires"][b], FieldReader::index(wp, b));
                        if (wv && *wv < wires) {
                            op.wires.push_back(static_cast<std::size_t>(*wv));
                        } else if (wv) {
                            r.error(FieldReader::index(wp, b),
                                    "wire outside 0.." + std::to_string(wires - 1));
                        }
                    }
                    if (arity == 2 && op.wires.size() == 2 && op.wires[0] == op.wires[1]) {
                        r.error(wp, "wires must differ");
                    }
                    const bool noisy = op.gate == "dephasing" || op.gate == "depolarizing" ||
                                       op.gate == "amplitude-damping";
                    if (ops[a].contains("parameter")) {
                        const std::string pp = FieldReader::join(q, "parameter");
                        if (auto v = r.number(ops[a]["parameter"], pp)) {
                            if (noisy && (*v < 0.0 || *v > 1.0)) {
                                r.error(pp, "probability must lie in [0, 1]");
                            } else if (!noisy && op.gate != "phase") {
                                r.error(pp, "gate '" + op.gate + "' takes no parameter");
                            } else {
                                op.parameter = *v;
                            }
                        }
                    }
                    tooth.ops.push_back(std::move(op));
                }
            }
            c.teeth.push_back(std::move(tooth));
        }
    }
}

inline void read_sweep(FieldReader &r, const json &j, ScenarioConfig &cfg) {
    if (!r.object(j, "sweep", {"N", "N_log", "omegas"})) {
        return;
    }
    const int forms = static_cast<int>(j.contains("N")) + static_cast<int>(j.contains("N_log")) +
                      static_cast<int>(j.contains("omegas"));
    if (forms != 1) {
        r.error("sweep", "give exactly one of N, N_log, omegas");
        return;
    }
    SweepConfig s;
    if (j.contains("N")) {
        if (!j["N"].is_array()) {
            r.error("sweep.N", "expected an array of positive numbers");
        } else {
            for (std::size_t i = 0; i < j["N"].size(); ++i) {
                const std::string p = FieldReader::index("sweep.N", i);
                if (auto v = r.number(j["N"][i], p)) {
                    if (*v <= 0.0) {
                        r.error(p, "must be positive");
                    } else {
                        s.n_values.push_back(*v);
                    }
                }
            }
        }
    } else if (j.contains("N_log")) {
        const json &l = j["N_log"];
        if (r.object(l, "sweep.N_log", {"min", "max", "count"})) {
            LogSweep ls;
            bool ok = true;
            for (const char *key : {"min", "max", "count"}) {
                if (!l.contains(key)) {
                    r.error(std::string("sweep.N_log.") + key, "missing required field");
                    ok = false;
                }
            }
            if (ok) {
                auto lo = r.number(l["min"], "sweep.N_log.min");
                auto hi = r.number(l["max"], "sweep.N_log.max");
                auto count = r.unsigned_int(l["count"], "sweep.N_log.count");
                if (lo && *lo <= 0.0) {
                    r.error("sweep.N_log.min", "must be positive");
                } else if (lo && hi && *hi < *lo) {
                    r.error("sweep.N_log.max", "must be >= min");
                } else if (count && *count < 1) {
                    r.error("sweep.N_log.count", "must be >= 1");
                } else if (lo && hi && count) {
                    ls = {*lo, *hi, static_cast<std::size_t>(*count)};
                    s.n_log = ls;
                }
            }
        }
    } else {
        if (!j["omegas"].is_array()) {
            r.error("sweep.omegas", "expected an array of omega lists");
        } else {
            for (std::size_t i = 0; i < j["omegas"].size(); ++i) {
                if (auto om = read_omega(r, j["omegas"][i], FieldReader::index("sweep.omegas", i))) {
                    s.omegas.push_back(std::move(*om));
                }
            }
        }
    }
    cfg.sweep = std::move(s);
}

inline void check_cross_fields(FieldReader &r, const json &j, const ScenarioConfig &cfg) {
    const bool general = cfg.variant == TestVariant::GeneralTests;
    if (cfg.traps.family == "bell" && !general) {
        r.error("protocol.traps.family", "the bell family requires variant general-tests");
    }
    if (cfg.traps.family == "bell" && cfg.comb.layout == "parallel" && cfg.k != 1) {
        r.error("protocol.k", "the bell family on the parallel comb requires k = 1");
    }
    if (j.contains("comb") && !general) {
        r.error("comb", "only valid with variant general-tests");
    }
    if (cfg.monte_carlo && general) {
        r.error("monte_carlo", "only supported with variant main-text");
    }
    const bool has_omega = j.contains("protocol") && j["protocol"].is_object() &&
                           j["protocol"].contains("omega");
    if (!has_omega && !cfg.sweep) {
        r.error("protocol.omega", "required when no sweep is given");
    }
    if (general && cfg.comb.layout == "custom" && cfg.acceptance.family != "per-round") {
        r.error("protocol.acceptance.family",
                "a custom comb measures the honest output; use per-round");
    }
}

} // namespace detail

/**
 * @brief Parses and validates a scenario document.
 *
 * Throws ConfigError carrying every field-level problem found (unknown
 * fields, missing required fields, bad values, inconsistent combinations).
 */
inline ScenarioConfig parse_config(const std::string &text) {
    using detail::json;
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error &e) {
        throw ConfigError({std::string("<document>: invalid JSON: ") + e.what()});
    }
    detail::FieldReader r;
    ScenarioConfig cfg;
    if (!r.object(j, "<document>", {"name", "protocol", "strategy", "models", "variant", "comb",
                                     "sweep", "monte_carlo", "output"})) {
        throw ConfigError(r.errors());
    }
    if (j.contains("name")) {
        if (auto s = r.string(j["name"], "name")) {
            cfg.name = *s;
        }
    }
    if (j.contains("variant")) {
        if (auto v = r.choice(j["variant"], "variant", {"main-text", "general-tests"})) {
            cfg.variant = *v == "main-text" ? TestVariant::MainText : TestVariant::GeneralTests;
        }
    }
    if (!j.contains("protocol")) {
        r.error("protocol", "missing required field");
    } else {
        detail::read_protocol(r, j["protocol"], cfg);
    }
    if (!j.contains("strategy")) {
        r.error("strategy", "missing required field");
    } else {
        detail::read_strategy(r, j["strategy"], cfg);
    }
    if (j.contains("models")) {
        const auto &m = j["models"];
        if (!m.is_array() || m.empty()) {
            r.error("models", "expected a non-empty array");
        } else {
            cfg.models.clear();
            for (std::size_t i = 0; i < m.size(); ++i) {
                if (auto s = r.choice(m[i], detail::FieldReader::index("models", i),
                                      {"stand-alone", "composable"})) {
                    cfg.models.push_back(*s == "stand-alone" ? SecurityModel::StandAlone
                                                             : SecurityModel::Composable);
                }
            }
        }
    }
    if (j.contains("comb")) {
        detail::read_comb(r, j["comb"], cfg);
    }
    if (j.contains("sweep")) {
        detail::read_sweep(r, j["sweep"], cfg);
    }
    if (j.contains("monte_carlo")) {
        const auto &mc = j["monte_carlo"];
        if (r.object(mc, "monte_carlo", {"trials", "seed"})) {
            MonteCarloConfig m;
            if (mc.contains("trials")) {
                if (auto t = r.unsigned_int(mc["trials"], "monte_carlo.trials")) {
                    if (*t < 1) {
                        r.error("monte_carlo.trials", "must be >= 1");
                    }
                    m.trials = *t;
                }
            }
            if (mc.contains("seed")) {
                if (auto s = r.unsigned_int(mc["seed"], "monte_carlo.seed")) {
                    m.seed = *s;
                }
            }
            cfg.monte_carlo = m;
        }
    }
    if (j.contains("output")) {
        const auto &o = j["output"];
        if (r.object(o, "output", {"csv", "json", "rounds_csv", "mc_csv"})) {
            auto read = [&](const char *key, std::string &dst) {
                if (o.contains(key)) {
                    if (auto s = r.string(o[key], std::string("output.") + key)) {
                        dst = *s;
                    }
                }
            };
            read("csv", cfg.output.csv);
            read("json", cfg.output.json);
            read("rounds_csv", cfg.output.rounds_csv);
            read("mc_csv", cfg.output.mc_csv);
        }
    }
    detail::check_cross_fields(r, j, cfg);
    if (!r.errors().empty()) {
        throw ConfigError(r.errors());
    }
    return cfg;
}

namespace detail {

inline json omega_to_json(const OmegaEntries &om) {
    json a = json::array();
    for (const auto &e : om) {
        a.push_back({{"n", e.n}, {"p", e.probability}});
    }
    return a;
}

} // namespace detail

/// Canonical JSON form: every field present, defaults written out.
inline nlohmann::json to_json(const ScenarioConfig &cfg) {
    using detail::json;
    json protocol = {{"k", cfg.k}, {"output_round", "uniform"}};
    if (!cfg.omega.empty()) {
        protocol["omega"] = detail::omega_to_json(cfg.omega);
    }
    protocol["traps"] = {{"family", cfg.traps.family}};
    if (cfg.traps.family == "random") {
        protocol["traps"]["seed"] = cfg.traps.seed;
    }
    protocol["acceptance"] = {{"family", cfg.acceptance.family}};
    if (cfg.acceptance.family == "per-round") {
        protocol["acceptance"]["weight"] = cfg.acceptance.weight;
    }
    json strategy = {{"type", cfg.strategy.type}};
    if (cfg.strategy.type == "phase-attack") {
        strategy["alpha"] = cfg.strategy.alpha ? json(*cfg.strategy.alpha) : json("theorem-optimal");
        strategy["placement"] = std::string(to_string(cfg.strategy.placement));
    }
    json models = json::array();
    for (auto m : cfg.models) {
        models.push_back(std::string(to_string(m)));
    }
    json j = {{"name", cfg.name},
              {"protocol", protocol},
              {"strategy", strategy},
              {"models", models},
              {"variant", std::string(to_string(cfg.variant))}};
    if (cfg.variant == TestVariant::GeneralTests) {
        json comb = {{"layout", cfg.comb.layout}};
        if (cfg.comb.layout == "custom") {
            comb["registers"] = cfg.comb.registers;
            comb["memory_qubits"] = cfg.comb.memory_qubits;
            comb["holes"] = cfg.comb.holes;
            if (!cfg.comb.teeth.empty()) {
                json teeth = json::array();
                for (const auto &t : cfg.comb.teeth) {
                    json tj = json::object();
                    if (!t.permutation.empty()) {
                        tj["permutation"] = t.permutation;
                    }
                    json ops = json::array();
                    for (const auto &op : t.ops) {
                        json oj = {{"gate", op.gate}, {"wires", op.wires}};
                        if (op.gate != "identity" && op.gate != "hadamard" && op.gate != "cnot") {
                            oj["parameter"] = op.parameter;
                        }
                        ops.push_back(oj);
                    }
                    tj["ops"] = ops;
                    teeth.push_back(tj);
                }
                comb["teeth"] = teeth;
            }
        }
        j["comb"] = comb;
    }
    if (cfg.sweep) {
        json s = json::object();
        if (cfg.sweep->n_log) {
            s["N_log"] = {{"min", cfg.sweep->n_log->min},
                          {"max", cfg.sweep->n_log->max},
                          {"count", cfg.sweep->n_log->count}};
        } else if (!cfg.sweep->omegas.empty()) {
            json list = json::array();
            for (const auto &om : cfg.sweep->omegas) {
                list.push_back(detail::omega_to_json(om));
            }
            s["omegas"] = list;
        } else {
            s["N"] = cfg.sweep->n_values;
        }
        j["sweep"] = s;
    }
    if (cfg.monte_carlo) {
        j["monte_carlo"] = {{"trials", cfg.monte_carlo->trials}, {"seed", cfg.monte_carlo->seed}};
    }
    json out = json::object();
    for (const auto &[key, value] : {std::pair<const char *, const std::string &>{"csv", cfg.output.csv},
                                     {"json", cfg.output.json},
                                     {"rounds_csv", cfg.output.rounds_csv},
                                     {"mc_csv", cfg.output.mc_csv}}) {
        if (!value.empty()) {
            out[key] = value;
        }
    }
    j["output"] = out;
    return j;
}

/// FNV-1a (64-bit) of the canonical JSON dump, as 16 hex digits.
inline std::string config_hash(const ScenarioConfig &cfg) {
    const std::string text = to_json(cfg).dump();
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
    return buf;
}

/// One evaluation point of a scenario.
struct SweepPoint {
    double n_expected;
    RoundDistribution omega;
};

/// Sweep points in order. Plain N values use the distribution with that mean
/// supported on floor(N) and ceil(N) (a point mass for integers).
inline std::vector<SweepPoint> sweep_points(const ScenarioConfig &cfg) {
    std::vector<SweepPoint> pts;
    auto from_entries = [](const OmegaEntries &om) {
        RoundDistribution d = RoundDistribution::renormalized(om, 1e-9);
        return SweepPoint{d.mean(), d};
    };
    if (!cfg.sweep) {
        pts.push_back(from_entries(cfg.omega));
        return pts;
    }
    const SweepConfig &s = *cfg.sweep;
    if (s.n_log) {
        const auto &l = *s.n_log;
        for (std::size_t j = 0; j < l.count; ++j) {
            const double t = l.count == 1 ? 0.0
                                          : static_cast<double>(j) /
                                                static_cast<double>(l.count - 1);
            const double n = j + 1 == l.count ? l.max : l.min * std::pow(l.max / l.min, t);
            pts.push_back({n, RoundDistribution::with_mean(n)});
        }
    } else if (!s.omegas.empty()) {
        for (const auto &om : s.omegas) {
            pts.push_back(from_entries(om));
        }
    } else {
        for (double n : s.n_values) {
            pts.push_back({n, RoundDistribution::with_mean(n)});
        }
    }
    return pts;
}

/// Trap generator named in the config.
inline TrapGenerator make_traps(const TrapConfig &t) {
    if (t.family == "computational") {
        return computational_traps();
    }
    if (t.family == "random") {
        return random_traps(t.seed);
    }
    return plus_traps();
}

/// Main-text protocol for one sweep point.
inline ProtocolSpec make_protocol(const ScenarioConfig &cfg, const RoundDistribution &omega) {
    TrapGenerator traps = make_traps(cfg.traps);
    AcceptanceRule acc = matched_per_round(cfg.acceptance.weight);
    if (cfg.acceptance.family == "global") {
        acc = GlobalAcceptance{[traps](std::size_t k, std::size_t n, std::size_t ell) {
            CVector psi{cplx{1.0}};
            for (std::size_t i = 1; i <= n + 1; ++i) {
                if (i != ell) {
                    const TrapRound t = traps(k, n, i);
                    psi = kron(psi, mat_vec(t.unitary, t.input.amplitudes()));
                }
            }
            return PovmElement::projector(PureState::normalized(std::move(psi)));
        }};
    }
    return ProtocolSpec{omega, cfg.k, traps, acc};
}

/// General-test setup for one sweep point.
inline GeneralSetup make_general_setup(const ScenarioConfig &cfg, const RoundDistribution &omega) {
    const bool bell = cfg.traps.family == "bell";
    if (cfg.comb.layout == "parallel") {
        return bell ? bell_test_setup(omega) : general_setup_from_protocol(make_protocol(cfg, omega));
    }
    const CombConfig &c = cfg.comb;
    std::vector<Channel> teeth;
    const std::size_t d = pow2(cfg.k * c.registers + c.memory_qubits);
    for (std::size_t j = 0; j <= c.holes.size(); ++j) {
        teeth.push_back(c.teeth.empty() ? Channel::identity(d)
                                        : build_tooth(c.teeth[j], cfg.k, c.registers,
                                                      c.memory_qubits));
    }
    Comb comb(cfg.k, c.registers, c.memory_qubits, c.holes, std::move(teeth));
    return comb_setup(omega, cfg.k, make_traps(cfg.traps), std::move(comb), bell);
}

struct RoundRow {
    std::size_t sweep_index;
    double n_expected;
    SecurityModel model;
    std::string strategy; ///< honest or attack
    double alpha;
    std::size_t n;
    std::size_t ell;
    double weight;
    double p;
};

struct MonteCarloRow {
    std::size_t sweep_index;
    double n_expected;
    SecurityModel model;
    std::string strategy;
    double alpha;
    std::uint64_t trials;
    std::uint64_t seed;
    double exact;
    double empirical;
    double tolerance;
    bool within;
};

struct RunMetadata {
    std::string config_hash;
    std::uint64_t seed;
    std::string version;
};

struct ReportBundle {
    ScenarioConfig config;
    RunMetadata metadata;
    std::vector<TradeoffReport> tradeoffs;
    std::vector<RoundRow> rounds;
    std::vector<MonteCarloRow> monte_carlo;

    /// Every report passes and every Monte-Carlo estimate is within tolerance.
    [[nodiscard]] bool passed() const {
        for (const auto &t : tradeoffs) {
            if (!t.passed()) {
                return false;
            }
        }
        for (const auto &m : monte_carlo) {
            if (!m.within) {
                return false;
            }
        }
        return true;
    }
};

struct RunOptions {
    bool rounds = false;      ///< include the per-(n, ell) tables
    bool parallel = false;    ///< evaluate sweep points on worker threads
    std::optional<std::uint64_t> seed; ///< overrides monte_carlo.seed
};

namespace detail {

struct PointResult {
    std::vector<TradeoffReport> tradeoffs;
    std::vector<RoundRow> rounds;
    std::vector<MonteCarloRow> monte_carlo;
};

inline std::string format_n(double n) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", n);
    return buf;
}

inline PointResult run_point(const ScenarioConfig &cfg, const RunOptions &opts, std::size_t index,
                             const SweepPoint &pt) {
    PointResult out;
    const bool general = cfg.variant == TestVariant::GeneralTests;
    const bool honest = cfg.strategy.type == "honest";
    std::string stage = general ? "comb-engine" : "protocol-engine";
    try {
        std::optional<ProtocolSpec> spec;
        std::optional<GeneralSetup> setup;
        if (general) {
            setup = make_general_setup(cfg, pt.omega);
        } else {
            spec = make_protocol(cfg, pt.omega);
        }
        for (std::size_t mi = 0; mi < cfg.models.size(); ++mi) {
            const SecurityModel model = cfg.models[mi];
            TradeoffOptions to;
            to.placement = cfg.strategy.placement;
            if (honest) {
                to.alpha_override = 0.0;
            } else if (cfg.strategy.alpha) {
                to.alpha_override = *cfg.strategy.alpha;
            }
            stage = "bounds-verifier";
            TradeoffReport rep = general ? general_tradeoff_check(model, *setup, to)
                                         : run_tradeoff_check(*spec, model, cfg.variant, to);
            const double alpha = rep.alpha;
            out.tradeoffs.push_back(std::move(rep));

            const std::vector<std::pair<std::string, ServerStrategy>> strategies{
                {"honest", Honest{}}, {"attack", PhaseAttack(alpha, cfg.strategy.placement)}};
            if (opts.rounds) {
                stage = general ? "comb-engine" : "protocol-engine";
                for (const auto &[label, s] : strategies) {
                    if (general) {
                        for (const auto &r : general_round_table(*setup, s)) {
                            out.rounds.push_back(
                                {index, pt.n_expected, model, label, alpha, r.n, r.ell, r.weight, r.p});
                        }
                    } else {
                        for (const auto &r : round_outcome_table(*spec, s)) {
                            out.rounds.push_back(
                                {index, pt.n_expected, model, label, alpha, r.n, r.ell, r.weight, r.p});
                        }
                    }
                }
            }
            if (cfg.monte_carlo) {
                stage = "monte-carlo";
                const DensityOperator psi = DensityOperator::from_pure(plus_state(cfg.k));
                const ComplexMatrix u = ComplexMatrix::identity(pow2(cfg.k));
                const std::uint64_t base = opts.seed.value_or(cfg.monte_carlo->seed);
                for (std::size_t si = 0; si < strategies.size(); ++si) {
                    const auto &[label, s] = strategies[si];
                    const std::uint64_t seed = base + 1000003ULL * index + 1009ULL * mi + si;
                    const double exact = overall_acceptance(*spec, s);
                    const auto mc =
                        monte_carlo_run(*spec, s, psi, u, cfg.monte_carlo->trials, seed);
                    const double tol = monte_carlo_tolerance(exact, mc.trials);
                    out.monte_carlo.push_back({index, pt.n_expected, model, label, alpha,
                                               mc.trials, seed, exact, mc.accept_rate, tol,
                                               std::abs(mc.accept_rate - exact) <= tol});
                }
            }
        }
    } catch (const Error &e) {
        throw Error("sweep[" + std::to_string(index) + "] (N=" + format_n(pt.n_expected) +
                    "): " + stage + ": " + e.what());
    }
    return out;
}

} // namespace detail

/**
 * @brief Runs every sweep point and model. Pure: writes nothing. Sweep
 * points may run on worker threads; results are assembled in sweep order.
 */
inline ReportBundle run_scenario(const ScenarioConfig &config, const RunOptions &opts = {}) {
    ScenarioConfig cfg = config;
    if (opts.seed && cfg.monte_carlo) {
        cfg.monte_carlo->seed = *opts.seed;
    }
    const std::vector<SweepPoint> pts = sweep_points(cfg);
    std::vector<detail::PointResult> results(pts.size());
    if (opts.parallel && pts.size() > 1) {
        const std::size_t workers =
            std::max<std::size_t>(1, std::min<std::size_t>(std::thread::hardware_concurrency(),
                                                           pts.size()));
        std::vector<std::exception_ptr> errors(pts.size());
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                for (std::size_t i = w; i < pts.size(); i += workers) {
                    try {
                        results[i] = detail::run_point(cfg, opts, i, pts[i]);
                    } catch (...) {
                        errors[i] = std::current_exception();
                    }
                }
            });
        }
        for (auto &t : pool) {
            t.join();
        }
        for (const auto &e : errors) {
            if (e) {
                std::rethrow_exception(e);
            }
        }
    } else {
        for (std::size_t i = 0; i < pts.size(); ++i) {
            results[i] = detail::run_point(cfg, opts, i, pts[i]);
        }
    }
    ReportBundle bundle{cfg,
                        {config_hash(cfg), cfg.monte_carlo ? cfg.monte_carlo->seed : 0, kVersion},
                        {},
                        {},
                        {}};
    for (auto &r : results) {
        for (auto &t : r.tradeoffs) {
            bundle.tradeoffs.push_back(std::move(t));
        }
        bundle.rounds.insert(bundle.rounds.end(), r.rounds.begin(), r.rounds.end());
        bundle.monte_carlo.insert(bundle.monte_carlo.end(), r.monte_carlo.begin(),
                                  r.monte_carlo.end());
    }
    return bundle;
}

} // namespace vdqc
