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
// Joint transmit beamforming and reflection control: closed-form phase
// alignment, MRT, the alternating loop, mid-tread quantization, the random
// baseline, and an exhaustive discrete-search oracle for small surfaces.

#ifndef IRSLINK_REFLECT_HPP
#define IRSLINK_REFLECT_HPP

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#include "linalg.hpp"
#include "rng.hpp"
#include "types.hpp"

namespace irslink {

inline constexpr double two_pi = 2.0 * std::numbers::pi;

// Reduce an angle into [0, 2 pi).
inline double wrap_phase(double theta)
{
    double t = std::fmod(theta, two_pi);
    if (t < 0)
        t += two_pi;
    if (t >= two_pi) // fmod can land exactly on 2 pi after the add
        t = 0.0;
    return t;
}

// Per-element reflection phases plus the mode they were produced under.
struct ReflectionState {
    std::vector<double> phases; // length N, each in [0, 2 pi)
    PhaseMode mode = PhaseMode::continuous();
};

// Effective row channel g^T diag(e^{j phi}) H + f^T, length N_b.
inline cvec effective_channel(const cvec& g, const ReflectionState& reflection,
                              const CMatrix& H, const cvec& f)
{
    if (g.size() != H.rows() || f.size() != H.cols() || reflection.phases.size() != g.size())
        throw std::invalid_argument("effective_channel: dimension mismatch");
    cvec e = f;
    for (std::size_t n = 0; n < g.size(); ++n) {
        const cxd c = g[n] * std::polar(1.0, reflection.phases[n]);
        const auto row = H.row(n);
        for (std::size_t m = 0; m < e.size(); ++m)
            e[m] += c * row[m];
    }
    return e;
}

// Beamformer, reflection and the resulting effective scalar gain
// rho = (g^T Phi H + f^T) w for one user.
struct BeamSolution {
    cvec w;                             // unit-norm transmit vector, length N_b
    ReflectionState reflection;
    cxd effective_gain = 0.0;           // rho
    double objective = 0.0;             // |rho|
    std::vector<double> objective_trace; // |rho| after each half-step of the solver
};

// Closed-form phase alignment for a fixed beamformer: every reflected path
// is rotated onto the phase of the direct path, theta_n = phi_0 - arg(g_n)
// - arg(h_n^T w), which attains the triangle-inequality upper bound
// |g^T Theta H w| + |f^T w|. When the direct path vanishes, phi_0 = 0.
inline ReflectionState align_phases(const cvec& g, const CMatrix& H, const cvec& f,
                                    const cvec& w)
{
    if (g.size() != H.rows() || f.size() != H.cols() || w.size() != H.cols())
        throw std::invalid_argument("align_phases: dimension mismatch");
    const cxd fw = dot_u(f, w);
    const double phi0 = (fw == cxd{0.0, 0.0}) ? 0.0 : std::arg(fw);
    const cvec hw = mat_vec(H, w);
    ReflectionState state;
    state.mode = PhaseMode::continuous();
    state.phases.resize(g.size());
    for (std::size_t n = 0; n < g.size(); ++n) {
        const cxd chi = g[n] * hw[n];
        const double arg_chi = (chi == cxd{0.0, 0.0}) ? 0.0 : std::arg(chi);
        state.phases[n] = wrap_phase(phi0 - arg_chi);
    }
    return state;
}

// Maximal-ratio transmission: w = e^H / ||e||, so |e w| = ||e||.
inline cvec mrt(const cvec& effective)
{
    const double n = vec_norm(effective);
    if (!(n > 0))
        throw DegenerateChannelError("mrt: zero effective channel");
    cvec w(effective.size());
    for (std::size_t m = 0; m < w.size(); ++m)
        w[m] = std::conj(effective[m]) / n;
    return w;
}

// Rebuild the MRT beamformer and gain for a given reflection.
inline BeamSolution beam_for_reflection(const cvec& g, const CMatrix& H, const cvec& f,
                                        ReflectionState reflection)
{
    const cvec e = effective_channel(g, reflection, H, f);
    BeamSolution sol;
    sol.w = mrt(e);
    sol.reflection = std::move(reflection);
    sol.effective_gain = dot_u(e, sol.w);
    sol.objective = std::abs(sol.effective_gain);
    return sol;
}

// Evaluate |(g^T Theta H + f^T) w| without changing anything.
inline double reflection_objective(const cvec& g, const CMatrix& H, const cvec& f,
                                   const ReflectionState& reflection, const cvec& w)
{
    return std::abs(dot_u(effective_channel(g, reflection, H, f), w));
}

// Alternating optimization over continuous phases: starting from the
// direct-link MRT beamformer, repeat phase alignment (optimal Theta given
// w) and MRT (optimal w given Theta). Each half-step maximizes the same
// objective over its own variable, so the recorded trace is non-decreasing.
inline BeamSolution alternating_optimize(const cvec& g, const CMatrix& H, const cvec& f,
                                         int iterations)
{
    if (iterations < 1)
        throw std::invalid_argument("alternating_optimize: iterations must be >= 1");

    cvec w;
    if (vec_norm(f) > 0) {
        w = mrt(f);
    } else {
        w.assign(H.cols(), cxd{0.0, 0.0});
        if (w.empty())
            throw std::invalid_argument("alternating_optimize: empty beamformer");
        w[0] = 1.0;
    }

    ReflectionState theta;
    theta.phases.assign(g.size(), 0.0);

    std::vector<double> trace;
    trace.reserve(2 * iterations + 1);
    trace.push_back(reflection_objective(g, H, f, theta, w));

    cvec e;
    for (int it = 0; it < iterations; ++it) {
        theta = align_phases(g, H, f, w);
        e = effective_channel(g, theta, H, f);
        trace.push_back(std::abs(dot_u(e, w)));
        w = mrt(e);
        trace.push_back(vec_norm(e)); // |e w| with w = MRT(e)
    }

    BeamSolution sol;
    sol.w = std::move(w);
    sol.reflection = std::move(theta);
    sol.effective_gain = dot_u(e, sol.w);
    sol.objective = std::abs(sol.effective_gain);
    sol.objective_trace = std::move(trace);
    return sol;
}

// Mid-tread uniform quantizer onto the 2^b-level grid,
// phi = dphi * floor(theta/dphi + 0.5) reduced mod 2 pi.
inline ReflectionState quantize_phases(const ReflectionState& continuous, int bits)
{
    if (bits < 1)
        throw std::invalid_argument("quantize_phases: bits must be >= 1");
    const double dphi = two_pi / static_cast<double>(1 << bits);
    ReflectionState out;
    out.mode = PhaseMode::discrete(bits);
    out.phases.reserve(continuous.phases.size());
    for (double theta : continuous.phases)
        out.phases.push_back(wrap_phase(dphi * std::floor(theta / dphi + 0.5)));
    return out;
}

// i.i.d. uniform phases on [0, 2 pi).
inline ReflectionState random_phases(int n, Rng& rng)
{
    if (n < 1)
        throw std::invalid_argument("random_phases: n must be >= 1");
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    ReflectionState out;
    out.mode = PhaseMode::random();
    out.phases.resize(n);
    for (auto& p : out.phases)
        p = wrap_phase(two_pi * unit(rng));
    return out;
}

// Exhaustive search over all 2^(N b) discrete phase vectors with MRT
// applied to each candidate; global maximizer of |rho| for small N.
// Refuses instances beyond the 2^20 enumeration budget.
inline BeamSolution brute_force_discrete(const cvec& g, const CMatrix& H, const cvec& f,
                                         int bits)
{
    if (bits < 1)
        throw std::invalid_argument("brute_force_discrete: bits must be >= 1");
    const int n = static_cast<int>(g.size());
    if (n * bits > 20)
        throw std::invalid_argument("brute_force_discrete: enumeration budget exceeded (N*b > 20)");

    const int levels = 1 << bits;
    const double dphi = two_pi / levels;

    ReflectionState candidate;
    candidate.mode = PhaseMode::discrete(bits);
    candidate.phases.assign(n, 0.0);

    std::vector<int> index(n, 0);
    ReflectionState best = candidate;
    double best_norm = -1.0;
    for (;;) {
        for (int i = 0; i < n; ++i)
            candidate.phases[i] = wrap_phase(dphi * index[i]);
        const double norm = vec_norm(effective_channel(g, candidate, H, f));
        if (norm > best_norm) {
            best_norm = norm;
            best = candidate;
        }
        int pos = 0;
        while (pos < n && ++index[pos] == levels) {
            index[pos] = 0;
            ++pos;
        }
        if (pos == n)
            break;
    }
    return beam_for_reflection(g, H, f, std::move(best));
}

} // namespace irslink

#endif
