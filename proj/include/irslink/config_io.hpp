// irslink - link-level Monte Carlo simulator for IRS-aided multi-user MIMO downlink
// Copyright (C) 2026 the irslink authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------
//
// Flat key=value config format, override handling, canonical serialization
// and the content digest of a resolved config.

#ifndef IRSLINK_CONFIG_IO_HPP
#define IRSLINK_CONFIG_IO_HPP

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "scenario.hpp"
#include "types.hpp"

namespace irslink {

namespace detail {

inline std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos)
        return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split_list(const std::string& value)
{
    std::vector<std::string> out;
    std::string token;
    for (char c : value) {
        if (c == ',' || c == ' ' || c == '\t') {
            if (!token.empty())
                out.push_back(token);
            token.clear();
        } else {
            token.push_back(c);
        }
    }
    if (!token.empty())
        out.push_back(token);
    return out;
}

inline double parse_double(const std::string& key, const std::string& value)
{
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size())
            throw std::invalid_argument("");
        return v;
    } catch (...) {
        throw std::invalid_argument("config key '" + key + "': expected number, got '" + value
                                    + "'");
    }
}

inline long long parse_int(const std::string& key, const std::string& value)
{
    try {
        std::size_t pos = 0;
        const long long v = std::stoll(value, &pos);
        if (pos != value.size())
            throw std::invalid_argument("");
        return v;
    } catch (...) {
        throw std::invalid_argument("config key '" + key + "': expected integer, got '" + value
                                    + "'");
    }
}

inline std::uint64_t parse_uint64(const std::string& key, const std::string& value)
{
    try {
        std::size_t pos = 0;
        const std::uint64_t v = std::stoull(value, &pos);
        if (pos != value.size())
            throw std::invalid_argument("");
        return v;
    } catch (...) {
        throw std::invalid_argument("config key '" + key + "': expected unsigned integer, got '"
                                    + value + "'");
    }
}

inline bool parse_bool(const std::string& key, const std::string& value)
{
    if (value == "true" || value == "1")
        return true;
    if (value == "false" || value == "0")
        return false;
    throw std::invalid_argument("config key '" + key + "': expected true/false, got '" + value
                                + "'");
}

inline Vec2 parse_vec2(const std::string& key, const std::string& value)
{
    const auto parts = split_list(value);
    if (parts.size() != 2)
        throw std::invalid_argument("config key '" + key + "': expected two numbers, got '"
                                    + value + "'");
    return {parse_double(key, parts[0]), parse_double(key, parts[1])};
}

inline Scheme parse_scheme(const std::string& key, const std::string& value)
{
    if (value == "tdma")
        return Scheme::tdma;
    if (value == "fdma")
        return Scheme::fdma;
    if (value == "noma")
        return Scheme::noma;
    throw std::invalid_argument("config key '" + key + "': unknown scheme '" + value + "'");
}

inline std::string f17(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// Applies one key=value assignment onto a config; unknown keys and type
// errors name the offending key.
inline void apply_config_entry(ScenarioConfig& cfg, const std::string& key,
                               const std::string& value)
{
    if (key == "n_elements") cfg.n_elements = static_cast<int>(parse_int(key, value));
    else if (key == "n_antennas") cfg.n_antennas = static_cast<int>(parse_int(key, value));
    else if (key == "n_users") cfg.n_users = static_cast<int>(parse_int(key, value));
    else if (key == "tx_power") cfg.tx_power = parse_double(key, value);
    else if (key == "bandwidth") cfg.bandwidth = parse_double(key, value);
    else if (key == "noise_figure") cfg.noise_figure = parse_double(key, value);
    else if (key == "temperature") cfg.temperature = parse_double(key, value);
    else if (key == "rician_factor") cfg.rician_factor = parse_double(key, value);
    else if (key == "bs_position") cfg.bs_position = parse_vec2(key, value);
    else if (key == "irs_position") cfg.irs_position = parse_vec2(key, value);
    else if (key == "bs_height") cfg.bs_height = parse_double(key, value);
    else if (key == "irs_height") cfg.irs_height = parse_double(key, value);
    else if (key == "ue_height") cfg.ue_height = parse_double(key, value);
    else if (key == "center_radius") cfg.center_radius = parse_double(key, value);
    else if (key == "edge_radius") cfg.edge_radius = parse_double(key, value);
    else if (key == "min_distance") cfg.min_distance = parse_double(key, value);
    else if (key == "carrier_freq") cfg.carrier_freq = parse_double(key, value);
    else if (key == "shadow_sigma") cfg.shadow_sigma = parse_double(key, value);
    else if (key == "los_ref_loss") cfg.los_ref_loss = parse_double(key, value);
    else if (key == "los_exponent") cfg.los_exponent = parse_double(key, value);
    else if (key == "break_d0") cfg.break_d0 = parse_double(key, value);
    else if (key == "break_d1") cfg.break_d1 = parse_double(key, value);
    else if (key == "phase_bits") {
        cfg.phase_bits.clear();
        for (const auto& tok : split_list(value))
            cfg.phase_bits.push_back(static_cast<int>(parse_int(key, tok)));
    } else if (key == "include_continuous") cfg.include_continuous = parse_bool(key, value);
    else if (key == "include_random") cfg.include_random = parse_bool(key, value);
    else if (key == "schemes") {
        cfg.schemes.clear();
        for (const auto& tok : split_list(value))
            cfg.schemes.push_back(parse_scheme(key, tok));
    } else if (key == "ao_iterations") cfg.ao_iterations = static_cast<int>(parse_int(key, value));
    else if (key == "aided_user") cfg.aided_user = static_cast<int>(parse_int(key, value));
    else if (key == "noma_alpha_exponent") cfg.noma_alpha_exponent = parse_double(key, value);
    else if (key == "remrt_after_quantize") cfg.remrt_after_quantize = parse_bool(key, value);
    else if (key == "drops") cfg.drops = static_cast<int>(parse_int(key, value));
    else if (key == "master_seed") cfg.master_seed = parse_uint64(key, value);
    else if (key == "degenerate_limit") cfg.degenerate_limit = parse_double(key, value);
    else
        throw std::invalid_argument("unknown config key '" + key + "'");
}

} // namespace detail

// Parses `key = value` lines ('#' starts a comment), then applies override
// assignments in order; defaults fill everything not mentioned. The result
// is validated.
inline ScenarioConfig parse_config(const std::string& path,
                                   const std::vector<std::string>& overrides = {})
{
    ScenarioConfig cfg;
    if (!path.empty()) {
        std::ifstream in(path);
        if (!in)
            throw std::runtime_error("cannot open config file: " + path);
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            const auto hash = line.find('#');
            if (hash != std::string::npos)
                line = line.substr(0, hash);
            line = detail::trim(line);
            if (line.empty())
                continue;
            const auto eq = line.find('=');
            if (eq == std::string::npos)
                throw std::invalid_argument(path + ":" + std::to_string(lineno)
                                            + ": expected key = value");
            detail::apply_config_entry(cfg, detail::trim(line.substr(0, eq)),
                                       detail::trim(line.substr(eq + 1)));
        }
    }
    for (const std::string& ov : overrides) {
        const auto eq = ov.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("override '" + ov + "': expected key=value");
        detail::apply_config_entry(cfg, detail::trim(ov.substr(0, eq)),
                                   detail::trim(ov.substr(eq + 1)));
    }
    cfg.validate();
    return cfg;
}

// Canonical text form of a resolved config: every key, fixed order,
// round-trip-exact numbers. Input to the config digest and usable as a
// config file.
inline std::string canonical_config_text(const ScenarioConfig& cfg)
{
    using detail::f17;
    std::ostringstream out;
    out << "# arrays and users\n";
    out << "n_elements = " << cfg.n_elements << "\n";
    out << "n_antennas = " << cfg.n_antennas << "\n";
    out << "n_users = " << cfg.n_users << "\n";
    out << "# radio\n";
    out << "tx_power = " << f17(cfg.tx_power) << "\n";
    out << "bandwidth = " << f17(cfg.bandwidth) << "\n";
    out << "noise_figure = " << f17(cfg.noise_figure) << "\n";
    out << "temperature = " << f17(cfg.temperature) << "\n";
    out << "rician_factor = " << f17(cfg.rician_factor) << "\n";
    out << "# geometry\n";
    out << "bs_position = " << f17(cfg.bs_position.x) << "," << f17(cfg.bs_position.y) << "\n";
    out << "irs_position = " << f17(cfg.irs_position.x) << "," << f17(cfg.irs_position.y) << "\n";
    out << "bs_height = " << f17(cfg.bs_height) << "\n";
    out << "irs_height = " << f17(cfg.irs_height) << "\n";
    out << "ue_height = " << f17(cfg.ue_height) << "\n";
    out << "center_radius = " << f17(cfg.center_radius) << "\n";
    out << "edge_radius = " << f17(cfg.edge_radius) << "\n";
    out << "min_distance = " << f17(cfg.min_distance) << "\n";
    out << "# large-scale fading\n";
    out << "carrier_freq = " << f17(cfg.carrier_freq) << "\n";
    out << "shadow_sigma = " << f17(cfg.shadow_sigma) << "\n";
    out << "los_ref_loss = " << f17(cfg.los_ref_loss) << "\n";
    out << "los_exponent = " << f17(cfg.los_exponent) << "\n";
    out << "break_d0 = " << f17(cfg.break_d0) << "\n";
    out << "break_d1 = " << f17(cfg.break_d1) << "\n";
    out << "# reflection and access\n";
    out << "phase_bits =";
    for (std::size_t i = 0; i < cfg.phase_bits.size(); ++i)
        out << (i ? "," : " ") << cfg.phase_bits[i];
    out << "\n";
    out << "include_continuous = " << (cfg.include_continuous ? "true" : "false") << "\n";
    out << "include_random = " << (cfg.include_random ? "true" : "false") << "\n";
    out << "schemes =";
    for (std::size_t i = 0; i < cfg.schemes.size(); ++i)
        out << (i ? "," : " ") << scheme_name(cfg.schemes[i]);
    out << "\n";
    out << "ao_iterations = " << cfg.ao_iterations << "\n";
    out << "aided_user = " << cfg.aided_user << "\n";
    out << "noma_alpha_exponent = " << f17(cfg.noma_alpha_exponent) << "\n";
    out << "remrt_after_quantize = " << (cfg.remrt_after_quantize ? "true" : "false") << "\n";
    out << "# campaign\n";
    out << "drops = " << cfg.drops << "\n";
    out << "master_seed = " << cfg.master_seed << "\n";
    out << "degenerate_limit = " << f17(cfg.degenerate_limit) << "\n";
    return out.str();
}

inline std::uint64_t fnv1a64(const std::string& data)
{
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    return h;
}

// Stable hex digest of the resolved config content.
inline std::string config_digest(const ScenarioConfig& cfg)
{
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(fnv1a64(canonical_config_text(cfg))));
    return buf;
}

} // namespace irslink

#endif
