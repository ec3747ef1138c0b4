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
// Small-scale fading: Rayleigh UE links and the Rician BS-IRS matrix.

#ifndef IRSLINK_FADING_HPP
#define IRSLINK_FADING_HPP

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#include "linalg.hpp"
#include "rng.hpp"
#include "scenario.hpp"

namespace irslink {

// One drop's channel realization.
struct ChannelSet {
    CMatrix H;           // N x N_b, BS -> IRS
    std::vector<cvec> f; // per user, length N_b, BS -> UE
    std::vector<cvec> g; // per user, length N, IRS -> UE
    double noise_power = 0.0;
};

// Angles for the deterministic BS-IRS component; both arrays are modeled
// as uniform linear arrays.
struct SteeringGeometry {
    double aod_bs = 0.0;          // departure azimuth at the BS [rad]
    double aoa_irs = 0.0;         // arrival azimuth at the IRS [rad]
    double element_spacing = 0.5; // [wavelengths]
};

inline SteeringGeometry steering_geometry(const ScenarioConfig& cfg)
{
    SteeringGeometry geom;
    geom.aod_bs = std::atan2(cfg.irs_position.y - cfg.bs_position.y,
                             cfg.irs_position.x - cfg.bs_position.x);
    geom.aoa_irs = std::atan2(cfg.bs_position.y - cfg.irs_position.y,
                              cfg.bs_position.x - cfg.irs_position.x);
    return geom;
}

// ULA response: entry m = exp(j 2 pi spacing m sin(angle)), unit modulus.
inline cvec steering_vector(int n, double angle, double spacing)
{
    if (n < 1)
        throw std::invalid_argument("steering_vector: n must be >= 1");
    cvec a(n);
    const double step = 2.0 * std::numbers::pi * spacing * std::sin(angle);
    for (int m = 0; m < n; ++m)
        a[m] = std::polar(1.0, step * m);
    return a;
}

// i.i.d. circularly symmetric complex Gaussian entries; real and imaginary
// parts each carry half the variance.
inline cvec draw_rayleigh_vector(int length, double variance, Rng& rng)
{
    if (!(variance > 0))
        throw std::invalid_argument("draw_rayleigh_vector: variance must be > 0");
    std::normal_distribution<double> part(0.0, std::sqrt(variance / 2.0));
    cvec v(length);
    for (auto& x : v) {
        const double re = part(rng);
        const double im = part(rng);
        x = {re, im};
    }
    return v;
}

// Rank-one unit-modulus outer product a_irs a_bs^H.
inline CMatrix rician_los_component(int n_rows, int n_cols, const SteeringGeometry& geom)
{
    const cvec a_irs = steering_vector(n_rows, geom.aoa_irs, geom.element_spacing);
    const cvec a_bs = steering_vector(n_cols, geom.aod_bs, geom.element_spacing);
    CMatrix los(n_rows, n_cols);
    for (int r = 0; r < n_rows; ++r)
        for (int c = 0; c < n_cols; ++c)
            los(r, c) = a_irs[r] * std::conj(a_bs[c]);
    return los;
}

// H = sqrt(Gamma sigma_h^2 / (Gamma+1)) H_LOS + sqrt(sigma_h^2 / (Gamma+1)) H_NLOS,
// which keeps E|H_ij|^2 = sigma_h^2 for every Rician factor. The NLOS part
// is drawn row-major, real before imaginary.
inline CMatrix draw_rician_matrix(const ScenarioConfig& cfg, const LinkGains& gains,
                                  const SteeringGeometry& geom, Rng& rng)
{
    if (!(gains.sigma_h2 > 0))
        throw std::invalid_argument("draw_rician_matrix: sigma_h2 must be > 0");
    const int n = cfg.n_elements;
    const int nb = cfg.n_antennas;
    const double gamma = cfg.rician_factor;
    const double los_scale = std::sqrt(gamma * gains.sigma_h2 / (gamma + 1.0));
    const double nlos_scale = std::sqrt(gains.sigma_h2 / (gamma + 1.0));

    CMatrix h = rician_los_component(n, nb, geom);
    std::normal_distribution<double> part(0.0, std::sqrt(0.5));
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < nb; ++c) {
            const double re = part(rng);
            const double im = part(rng);
            h(r, c) = los_scale * h(r, c) + nlos_scale * cxd{re, im};
        }
    return h;
}

// Full drop realization. Draw order: H, then per user f_k followed by g_k.
inline ChannelSet assemble_channels(const ScenarioConfig& cfg, const LinkGains& gains,
                                    const SteeringGeometry& geom, Rng& rng)
{
    ChannelSet ch;
    ch.H = draw_rician_matrix(cfg, gains, geom, rng);
    ch.f.reserve(cfg.n_users);
    ch.g.reserve(cfg.n_users);
    for (int k = 0; k < cfg.n_users; ++k) {
        ch.f.push_back(draw_rayleigh_vector(cfg.n_antennas, gains.sigma_f2.at(k), rng));
        ch.g.push_back(draw_rayleigh_vector(cfg.n_elements, gains.sigma_g2.at(k), rng));
    }
    ch.noise_power = gains.noise_power;
    return ch;
}

} // namespace irslink

#endif
