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
// Cell geometry, user placement, large-scale fading and noise power.

#ifndef IRSLINK_SCENARIO_HPP
#define IRSLINK_SCENARIO_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "rng.hpp"
#include "types.hpp"

namespace irslink {

// All physical and campaign parameters. Defaults describe the baseline
// scenario: a 16-antenna base station at the origin, a 200-element
// reflecting surface at (375, 375) serving a cell-edge area, 20 W transmit
// power over 20 MHz.
struct ScenarioConfig {
    // array sizes and users
    int n_elements = 200; // N, reflecting elements
    int n_antennas = 16;  // N_b, BS antennas
    int n_users = 2;      // K, single-antenna users

    // radio parameters
    double tx_power = 20.0;      // P_d [W]
    double bandwidth = 20e6;     // B_w [Hz]
    double noise_figure = 9.0;   // N_f [dB]
    double temperature = 290.0;  // T_0 [K]
    double rician_factor = 5.0;  // Gamma (linear) for the BS-IRS link

    // geometry [m]
    Vec2 bs_position = {0.0, 0.0};
    Vec2 irs_position = {375.0, 375.0};
    double bs_height = 15.0;
    double irs_height = 15.0;
    double ue_height = 1.65;
    double center_radius = 200.0; // cell-center disc around the BS
    double edge_radius = 75.0;    // cell-edge disc around the IRS
    double min_distance = 10.0;   // guard distance from the disc center

    // large-scale fading
    double carrier_freq = 1900.0; // [MHz]
    double shadow_sigma = 8.0;    // sigma_sd [dB]
    double los_ref_loss = -30.0;  // L_0 [dB] at 1 m, BS-IRS link
    double los_exponent = 2.0;    // alpha, BS-IRS link
    double break_d0 = 10.0;       // lower break point [m]
    double break_d1 = 50.0;       // upper break point [m]

    // reflection control and multiple access
    std::vector<int> phase_bits = {1, 2};
    bool include_continuous = true;
    bool include_random = true;
    std::vector<Scheme> schemes = {Scheme::tdma, Scheme::fdma, Scheme::noma};
    int ao_iterations = 3;            // alternating-optimization iterations
    int aided_user = -1;              // fixed reflection user; -1 = strongest IRS link
    double noma_alpha_exponent = 0.5; // power-allocation decay vs. channel gain
    bool remrt_after_quantize = true; // re-derive MRT against the applied reflection

    // campaign
    int drops = 10000;
    std::uint64_t master_seed = 1;
    double degenerate_limit = 1e-3; // max tolerated fraction of resampled drops

    void validate() const;
    std::vector<PhaseMode> enabled_modes() const;
};

inline void ScenarioConfig::validate() const
{
    auto require = [](bool ok, const std::string& msg) {
        if (!ok)
            throw std::invalid_argument("config: " + msg);
    };
    require(n_elements >= 1, "n_elements must be >= 1");
    require(n_antennas >= 1, "n_antennas must be >= 1");
    require(n_users >= 1, "n_users must be >= 1");
    require(tx_power > 0, "tx_power must be > 0");
    require(bandwidth > 0, "bandwidth must be > 0");
    require(temperature > 0, "temperature must be > 0");
    require(rician_factor >= 0, "rician_factor must be >= 0");
    require(min_distance > 0, "min_distance must be > 0");
    require(center_radius > min_distance, "center_radius must exceed min_distance");
    require(edge_radius > 0, "edge_radius must be > 0");
    require(carrier_freq > 0, "carrier_freq must be > 0");
    require(shadow_sigma >= 0, "shadow_sigma must be >= 0");
    require(los_exponent > 0, "los_exponent must be > 0");
    require(break_d0 > 0 && break_d1 > break_d0, "break points must satisfy 0 < break_d0 < break_d1");
    require(bs_height > 0 && irs_height > 0 && ue_height > 0, "heights must be > 0");
    for (int b : phase_bits)
        require(b >= 1, "phase_bits entries must be >= 1");
    for (std::size_t i = 0; i + 1 < phase_bits.size(); ++i)
        for (std::size_t j = i + 1; j < phase_bits.size(); ++j)
            require(phase_bits[i] != phase_bits[j], "phase_bits entries must be distinct");
    require(include_continuous || include_random || !phase_bits.empty(),
            "at least one phase mode must be enabled");
    require(!schemes.empty(), "schemes must not be empty");
    for (std::size_t i = 0; i + 1 < schemes.size(); ++i)
        for (std::size_t j = i + 1; j < schemes.size(); ++j)
            require(!(schemes[i] == schemes[j]), "schemes entries must be distinct");
    require(ao_iterations >= 1, "ao_iterations must be >= 1");
    require(aided_user >= -1 && aided_user < n_users, "aided_user out of range");
    require(noma_alpha_exponent > 0, "noma_alpha_exponent must be > 0");
    require(drops >= 1, "drops must be >= 1");
    require(degenerate_limit >= 0, "degenerate_limit must be >= 0");
}

inline std::vector<PhaseMode> ScenarioConfig::enabled_modes() const
{
    std::vector<PhaseMode> modes;
    if (include_continuous)
        modes.push_back(PhaseMode::continuous());
    std::vector<int> bits = phase_bits;
    std::sort(bits.begin(), bits.end());
    for (int b : bits)
        modes.push_back(PhaseMode::discrete(b));
    if (include_random)
        modes.push_back(PhaseMode::random());
    return modes;
}

struct Placement {
    std::vector<Vec2> user_positions;
    std::vector<UserClass> user_class;
};

struct LinkGains {
    std::vector<double> sigma_f2; // per user, BS->UE linear power gain
    std::vector<double> sigma_g2; // per user, IRS->UE linear power gain
    double sigma_h2 = 0.0;        // BS->IRS linear power gain
    double noise_power = 0.0;     // sigma_n^2 [W]
};

namespace detail {

// Frequency/height constant of the three-slope path-loss model.
inline double cost_hata_constant(double f_mhz, double base_height_m, double ue_height_m)
{
    const double lf = std::log10(f_mhz);
    return 46.3 + 33.9 * lf - 13.82 * std::log10(base_height_m)
           - (1.1 * lf - 0.7) * ue_height_m + (1.56 * lf - 0.8);
}

inline double cost_hata_db(double distance_m, double base_height_m, const ScenarioConfig& cfg)
{
    if (!(distance_m > 0))
        throw std::invalid_argument("path_loss_cost_hata: distance must be > 0");
    const double L = cost_hata_constant(cfg.carrier_freq, base_height_m, cfg.ue_height);
    const double d1_km = cfg.break_d1 / 1000.0;
    const double d0_km = cfg.break_d0 / 1000.0;
    const double d_km = distance_m / 1000.0;
    if (distance_m > cfg.break_d1)
        return -L - 35.0 * std::log10(d_km);
    if (distance_m > cfg.break_d0)
        return -L - 15.0 * std::log10(d1_km) - 20.0 * std::log10(d_km);
    return -L - 15.0 * std::log10(d1_km) - 20.0 * std::log10(d0_km);
}

} // namespace detail

// Three-slope path loss in dB (negative): -35 dB/decade beyond break_d1,
// -20 dB/decade between the break points, flat below break_d0.
inline double path_loss_cost_hata(double distance_m, const ScenarioConfig& cfg)
{
    return detail::cost_hata_db(distance_m, cfg.bs_height, cfg);
}

// Reference-distance power law for the BS-IRS line-of-sight link:
// L_0 - 10 alpha log10(d) in dB.
inline double path_loss_los(double distance_m, const ScenarioConfig& cfg)
{
    if (!(distance_m >= 1.0))
        throw std::invalid_argument("path_loss_los: distance must be >= 1 m");
    return cfg.los_ref_loss - 10.0 * cfg.los_exponent * std::log10(distance_m);
}

// One shadowing draw in dB.
inline double shadow_fading(Rng& rng, double sigma_sd_db)
{
    if (sigma_sd_db < 0)
        throw std::invalid_argument("shadow_fading: sigma must be >= 0");
    if (sigma_sd_db == 0)
        return 0.0;
    std::normal_distribution<double> dist(0.0, sigma_sd_db);
    return dist(rng);
}

// sigma_n^2 = kappa * B_w * T_0 * 10^(N_f/10)
inline double noise_power(const ScenarioConfig& cfg)
{
    constexpr double boltzmann = 1.380649e-23;
    return boltzmann * cfg.bandwidth * cfg.temperature * std::pow(10.0, cfg.noise_figure / 10.0);
}

// Draws user positions uniformly over their designated disc. The first
// floor(K/2) users are cell-center users around the BS, the remaining
// ceil(K/2) are cell-edge users around the IRS; both respect the guard
// distance via rejection.
inline Placement place_users(const ScenarioConfig& cfg, Rng& rng)
{
    constexpr long max_rejections = 1000000;
    Placement placement;
    placement.user_positions.reserve(cfg.n_users);
    placement.user_class.reserve(cfg.n_users);

    const int n_center = cfg.n_users / 2;
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    long rejections = 0;
    for (int k = 0; k < cfg.n_users; ++k) {
        const bool is_center = k < n_center;
        const Vec2 origin = is_center ? cfg.bs_position : cfg.irs_position;
        const double radius = is_center ? cfg.center_radius : cfg.edge_radius;
        for (;;) {
            const double r = radius * std::sqrt(unit(rng));
            const double phi = 2.0 * std::numbers::pi * unit(rng);
            if (r < cfg.min_distance) {
                if (++rejections > max_rejections)
                    throw std::invalid_argument(
                        "place_users: geometry infeasible (rejection budget exhausted)");
                continue;
            }
            placement.user_positions.push_back({origin.x + r * std::cos(phi),
                                                origin.y + r * std::sin(phi)});
            placement.user_class.push_back(is_center ? UserClass::center : UserClass::edge);
            break;
        }
    }
    return placement;
}

// Per-user linear gains 10^((P+S)/10) with path loss P and fresh shadowing
// S on every UE link; the BS-IRS gain is the pure distance law without
// shadowing. Draw order: per user S_f then S_g, in user order.
inline LinkGains link_gains(const Placement& placement, const ScenarioConfig& cfg, Rng& rng)
{
    LinkGains gains;
    const int n = static_cast<int>(placement.user_positions.size());
    gains.sigma_f2.reserve(n);
    gains.sigma_g2.reserve(n);
    for (int k = 0; k < n; ++k) {
        const Vec2& p = placement.user_positions[k];
        const double pf = detail::cost_hata_db(distance(p, cfg.bs_position), cfg.bs_height, cfg);
        const double sf = shadow_fading(rng, cfg.shadow_sigma);
        gains.sigma_f2.push_back(std::pow(10.0, (pf + sf) / 10.0));
        const double pg = detail::cost_hata_db(distance(p, cfg.irs_position), cfg.irs_height, cfg);
        const double sg = shadow_fading(rng, cfg.shadow_sigma);
        gains.sigma_g2.push_back(std::pow(10.0, (pg + sg) / 10.0));
    }
    gains.sigma_h2 =
        std::pow(10.0, path_loss_los(distance(cfg.bs_position, cfg.irs_position), cfg) / 10.0);
    gains.noise_power = noise_power(cfg);
    return gains;
}

} // namespace irslink

#endif
