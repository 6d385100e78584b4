#pragma once

/**
 * @file config.hpp
 * @brief JSON experiment configuration with line/column and field diagnostics.
 *
 * {
 *   "name": "luroth-classical",
 *   "kind": "distributional",           // or "weak_law"
 *   "mode": "classical_luroth",
 *   "master_seed": 271828,
 *   "n_grid": [100, 1000, 10000],
 *   "replications": 5000,
 *   "family":  { "kind": "discrete_beta", "param": "constant:0.5" },
 *   "weights": { "kind": "power_alpha", "alpha": 0.5, "rho": "constant", "rho_value": 1 },
 *   "epsilon": 0.3,
 *   "t_grid": [0.5, 1, 2],
 *   "ell": null,
 *   "check_conditions": true
 * }
 * Unknown keys are rejected so typos surface as errors.
 */

#include "oppenheim/errors.hpp"
#include "oppenheim/experiments.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

namespace oppenheim::config {

using json = nlohmann::json;

namespace detail {

inline std::string location(const std::string& text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

inline void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& prefix) {
    for (const auto& [k, v] : obj.items())
        if (!allowed.count(k)) throw ConfigError(prefix + k, "unknown key");
}

template <class T>
T get(const json& obj, const std::string& key, const std::string& field, const T& fallback) {
    if (!obj.contains(key)) return fallback;
    try {
        return obj.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ConfigError(field, std::string("wrong type: ") + e.what());
    }
}

} // namespace detail

/// Parses configuration text; `source` names the input in error messages.
inline experiments::ExperimentConfig parse_config(const std::string& text, const std::string& source = "<config>") {
    json j;
    try {
        j = json::parse(text, nullptr, true, true);
    } catch (const json::parse_error& e) {
        throw ConfigError(source, "syntax error at " + detail::location(text, e.byte > 0 ? e.byte - 1 : 0) + ": " + e.what());
    }
    if (!j.is_object()) throw ConfigError(source, "top level must be an object");

    try {
        detail::reject_unknown(j,
                               {"name", "kind", "mode", "master_seed", "n_grid", "replications", "family", "weights",
                                "epsilon", "t_grid", "ell", "check_conditions"},
                               "");
        experiments::ExperimentConfig c;
        c.name = detail::get<std::string>(j, "name", "name", c.name);
        const auto kind = detail::get<std::string>(j, "kind", "kind", "weak_law");
        if (kind == "weak_law") c.kind = experiments::RunKind::weak_law;
        else if (kind == "distributional") c.kind = experiments::RunKind::distributional;
        else throw ConfigError("kind", "must be \"weak_law\" or \"distributional\"");
        c.mode = detail::get<std::string>(j, "mode", "mode", c.kind == experiments::RunKind::weak_law ? "luroth"
                                                                                                     : "classical_luroth");
        c.master_seed = detail::get<std::uint64_t>(j, "master_seed", "master_seed", c.master_seed);
        c.n_grid = detail::get<std::vector<std::size_t>>(j, "n_grid", "n_grid", c.n_grid);
        c.replications = detail::get<std::size_t>(j, "replications", "replications", c.replications);
        c.epsilon = detail::get<double>(j, "epsilon", "epsilon", c.epsilon);
        c.t_grid = detail::get<std::vector<double>>(j, "t_grid", "t_grid", c.t_grid);
        c.check_conditions = detail::get<bool>(j, "check_conditions", "check_conditions", c.check_conditions);
        if (j.contains("ell") && !j.at("ell").is_null()) c.ell = detail::get<double>(j, "ell", "ell", 0.0);

        if (j.contains("family")) {
            const auto& f = j.at("family");
            if (!f.is_object()) throw ConfigError("family", "must be an object");
            detail::reject_unknown(f, {"kind", "param"}, "family.");
            c.family.kind = detail::get<std::string>(f, "kind", "family.kind", c.family.kind);
            if (f.contains("param")) {
                const auto& p = f.at("param");
                if (p.is_string()) c.family.param = p.get<std::string>();
                else if (p.is_number()) c.family.param = "constant:" + p.dump();
                else if (p.is_array()) c.family.param = p.dump();
                else throw ConfigError("family.param", "must be a tag string, a number or an array of numbers");
            }
        }
        if (j.contains("weights")) {
            const auto& w = j.at("weights");
            if (!w.is_object()) throw ConfigError("weights", "must be an object");
            detail::reject_unknown(w, {"kind", "alpha", "r", "rho", "rho_value", "table"}, "weights.");
            c.weights.kind = detail::get<std::string>(w, "kind", "weights.kind", c.weights.kind);
            c.weights.alpha = detail::get<double>(w, "alpha", "weights.alpha", c.weights.alpha);
            c.weights.r = detail::get<int>(w, "r", "weights.r", c.weights.r);
            c.weights.rho = detail::get<std::string>(w, "rho", "weights.rho", c.weights.rho);
            c.weights.rho_value = detail::get<double>(w, "rho_value", "weights.rho_value", c.weights.rho_value);
            c.weights.table = detail::get<std::string>(w, "table", "weights.table", c.weights.table);
        }
        c.validate();
        // Surface family/weight construction errors now rather than mid-run.
        const auto family = c.family.make();
        if (family.kind() != distributions::FamilyKind::uniform)
            for (std::size_t k = 1; k <= std::min<std::size_t>(c.n_grid.back(), 10000); ++k) (void)family.param(k);
        if (c.weights.kind != "custom_table") (void)c.weights.make();
        return c;
    } catch (const ConfigError& e) {
        if (e.field().empty()) throw ConfigError("", source + ": " + e.message());
        throw ConfigError(e.field(), source + ": field '" + e.field() + "': " + e.message());
    } catch (const std::logic_error& e) {
        // Domain and argument errors raised while building the family or weights.
        throw ConfigError("", source + ": " + e.what());
    }
}

inline experiments::ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("", "cannot open config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str(), path);
}

} // namespace oppenheim::config
