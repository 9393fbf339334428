#pragma once

#include <charconv>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "rrsim/sim.hpp"

namespace rrsim {

namespace detail {

inline std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t");
    auto e = s.find_last_not_of(" \t");
    if (b == std::string::npos) return "";
    return s.substr(b, e - b + 1);
}

inline double parse_number(const std::string& key, const std::string& value) {
    double v = 0;
    auto [p, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc() || p != value.data() + value.size())
        throw InputError("config key '" + key + "': bad number '" + value + "'");
    return v;
}

}  // namespace detail

// Flat key = value config file. '#' starts a comment. Every recognized key
// has a default; unknown keys are hard errors rather than silent no-ops.
inline SimConfig parse_config_text(const std::map<std::string, std::string>& kv) {
    SimConfig cfg;
    for (const auto& [key, value] : kv) {
        if (key == "horizon") cfg.horizon = detail::parse_number(key, value);
        else if (key == "epsilon") cfg.window.length = detail::parse_number(key, value);
        else if (key == "step") cfg.window.step = detail::parse_number(key, value);
        else if (key == "tau") cfg.window.max_wait = detail::parse_number(key, value);
        else if (key == "gamma") cfg.window.max_detour = detail::parse_number(key, value);
        else if (key == "beta") cfg.pricing.discount = detail::parse_number(key, value);
        else if (key == "o") cfg.pricing.commission = detail::parse_number(key, value);
        else if (key == "mu") cfg.pricing.base_fare = detail::parse_number(key, value);
        else if (key == "alpha_d") cfg.pricing.alpha_d = detail::parse_number(key, value);
        else if (key == "alpha_t") cfg.pricing.alpha_t = detail::parse_number(key, value);
        else if (key == "speed_mph")
            cfg.pricing.mean_speed = mph_to_miles_per_min(detail::parse_number(key, value));
        else if (key == "psi") cfg.psi = detail::parse_number(key, value);
        else if (key == "shares") {
            cfg.shares.weights.clear();
            std::string rest = value;
            while (!rest.empty()) {
                auto comma = rest.find(',');
                std::string tok = detail::trim(rest.substr(0, comma));
                if (!tok.empty()) cfg.shares.weights.push_back(detail::parse_number(key, tok));
                rest = comma == std::string::npos ? "" : rest.substr(comma + 1);
            }
        } else if (key == "mechanism") cfg.mechanism = parse_mechanism(value);
        else if (key == "scenario") {
            if (value != "all") parse_scenario(value);  // validates
            cfg.scenario_key = value;
        } else if (key == "replications")
            cfg.replications = int(detail::parse_number(key, value));
        else if (key == "seed") cfg.seed = std::uint64_t(detail::parse_number(key, value));
        else if (key == "collaboration_willingness")
            cfg.collaboration_willingness = detail::parse_number(key, value);
        else if (key == "access_mode") cfg.access.mode = parse_access_mode(value);
        else if (key == "access_param") cfg.access.parameter = detail::parse_number(key, value);
        else if (key == "endpoint_candidates")
            cfg.endpoint_candidates = std::size_t(detail::parse_number(key, value));
        else
            throw InputError("unknown config key '" + key + "'");
    }
    cfg.access.seed = cfg.seed;
    return cfg;
}

inline SimConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open config file: " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw InputError(path + ":" + std::to_string(lineno) + ": expected key = value");
        std::string key = detail::trim(line.substr(0, eq));
        std::string value = detail::trim(line.substr(eq + 1));
        if (kv.count(key))
            throw InputError(path + ":" + std::to_string(lineno) + ": duplicate key '" + key + "'");
        kv[key] = value;
    }
    return parse_config_text(kv);
}

// Resolved key/value view of a config, used for the run manifest.
inline std::map<std::string, std::string> config_snapshot(const SimConfig& cfg) {
    std::map<std::string, std::string> kv;
    kv["horizon"] = csv::format_double(cfg.horizon);
    kv["epsilon"] = csv::format_double(cfg.window.length);
    kv["step"] = csv::format_double(cfg.window.step);
    kv["tau"] = csv::format_double(cfg.window.max_wait);
    kv["gamma"] = csv::format_double(cfg.window.max_detour);
    kv["beta"] = csv::format_double(cfg.pricing.discount);
    kv["o"] = csv::format_double(cfg.pricing.commission);
    kv["mu"] = csv::format_double(cfg.pricing.base_fare);
    kv["alpha_d"] = csv::format_double(cfg.pricing.alpha_d);
    kv["alpha_t"] = csv::format_double(cfg.pricing.alpha_t);
    kv["speed_mph"] = csv::format_double(cfg.pricing.mean_speed * 60.0);
    kv["psi"] = csv::format_double(cfg.psi);
    std::string shares;
    for (std::size_t i = 0; i < cfg.shares.weights.size(); ++i) {
        if (i) shares += ",";
        shares += csv::format_double(cfg.shares.weights[i]);
    }
    kv["shares"] = shares;
    kv["mechanism"] = to_string(cfg.mechanism);
    kv["scenario"] = cfg.scenario_key;
    kv["replications"] = std::to_string(cfg.replications);
    kv["seed"] = std::to_string(cfg.seed);
    kv["collaboration_willingness"] = csv::format_double(cfg.collaboration_willingness);
    kv["access_mode"] = cfg.access.mode == VehicleAccessModel::Mode::Zero ? "zero"
                        : cfg.access.mode == VehicleAccessModel::Mode::Constant ? "constant"
                                                                                : "uniform-random";
    kv["access_param"] = csv::format_double(cfg.access.parameter);
    kv["endpoint_candidates"] = std::to_string(cfg.endpoint_candidates);
    return kv;
}

}  // namespace rrsim
