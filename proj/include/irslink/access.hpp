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
// Per-drop sum spectral efficiency of TDMA, FDMA and power-domain NOMA
// under a given reflection phase mode.

#ifndef IRSLINK_ACCESS_HPP
#define IRSLINK_ACCESS_HPP

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

#include "fading.hpp"
#include "reflect.hpp"
#include "scenario.hpp"
#include "types.hpp"

namespace irslink {

struct SchemeResult {
    Scheme scheme = Scheme::tdma;
    PhaseMode phase_mode;
    double sum_rate = 0.0;              // [b/s/Hz]
    std::vector<double> per_user_rates; // user-index order
    int aided_user = -1;                // FDMA/NOMA only
    std::vector<double> alphas;         // NOMA only, user-index order
};

// User whose reflection is kept fixed in FDMA/NOMA: the strongest IRS link
// by default, lowest index on ties, overridable through the config.
inline int select_aided_user(const ChannelSet& channels, const ScenarioConfig& cfg)
{
    if (channels.g.empty())
        throw std::invalid_argument("select_aided_user: no users");
    if (cfg.aided_user >= 0) {
        if (cfg.aided_user >= static_cast<int>(channels.g.size()))
            throw std::invalid_argument("select_aided_user: aided_user override out of range");
        return cfg.aided_user;
    }
    int best = 0;
    double best_norm = sum_abs2(channels.g[0]);
    for (std::size_t k = 1; k < channels.g.size(); ++k) {
        const double nk = sum_abs2(channels.g[k]);
        if (nk > best_norm) {
            best_norm = nk;
            best = static_cast<int>(k);
        }
    }
    return best;
}

// Fractional power allocation: alpha_k proportional to |rho_k|^(-2 eta),
// normalized to sum to one, so a weaker effective channel always receives
// strictly more power.
inline std::vector<double> allocate_noma_power(const std::vector<cxd>& rho,
                                               const ScenarioConfig& cfg)
{
    std::vector<double> alphas(rho.size());
    double total = 0.0;
    for (std::size_t k = 0; k < rho.size(); ++k) {
        const double gain = std::norm(rho[k]);
        if (!(gain > 0))
            throw DegenerateChannelError("allocate_noma_power: zero effective gain");
        alphas[k] = std::pow(gain, -cfg.noma_alpha_exponent);
        total += alphas[k];
    }
    for (auto& a : alphas)
        a /= total;
    return alphas;
}

// Evaluates every scheme/mode combination of one drop on a shared channel
// realization. The continuous alternating-optimization solution per user is
// computed once and every phase mode is derived from it, which keeps
// scheme and mode comparisons paired.
class DropEvaluator {
public:
    DropEvaluator(const ChannelSet& channels, const ScenarioConfig& cfg)
        : ch_(&channels), cfg_(&cfg), aided_(select_aided_user(channels, cfg))
    {
        continuous_.reserve(channels.f.size());
        for (std::size_t k = 0; k < channels.f.size(); ++k)
            continuous_.push_back(
                alternating_optimize(channels.g[k], channels.H, channels.f[k], cfg.ao_iterations));
    }

    int aided_user() const { return aided_; }
    const BeamSolution& continuous_solution(int user) const { return continuous_.at(user); }

    SchemeResult evaluate(Scheme scheme, const PhaseMode& mode,
                          const ReflectionState* shared_random = nullptr) const
    {
        switch (scheme) {
        case Scheme::tdma: return tdma(mode, shared_random);
        case Scheme::fdma: return fdma(mode, shared_random);
        default: return noma(mode, shared_random);
        }
    }

private:
    const ChannelSet* ch_;
    const ScenarioConfig* cfg_;
    int aided_;
    std::vector<BeamSolution> continuous_;

    double rate_for(double rho_abs2) const
    {
        const double snr = cfg_->tx_power * rho_abs2 / ch_->noise_power;
        return std::log2(1.0 + snr) / static_cast<double>(ch_->f.size());
    }

    const ReflectionState& random_reflection(const ReflectionState* shared_random) const
    {
        if (shared_random == nullptr)
            throw std::invalid_argument("random phase mode needs a shared reflection");
        if (shared_random->phases.size() != ch_->H.rows())
            throw std::invalid_argument("shared random reflection has wrong length");
        return *shared_random;
    }

    // Continuous solution of `user` carried into the requested mode.
    BeamSolution mode_solution(int user, const PhaseMode& mode,
                               const ReflectionState* shared_random) const
    {
        const BeamSolution& cont = continuous_[user];
        switch (mode.kind) {
        case PhaseMode::Kind::continuous:
            return cont;
        case PhaseMode::Kind::discrete: {
            ReflectionState quantized = quantize_phases(cont.reflection, mode.bits);
            if (cfg_->remrt_after_quantize)
                return beam_for_reflection(ch_->g[user], ch_->H, ch_->f[user],
                                           std::move(quantized));
            // ablation: keep the continuous beamformer
            const cvec e = effective_channel(ch_->g[user], quantized, ch_->H, ch_->f[user]);
            BeamSolution sol;
            sol.w = cont.w;
            sol.reflection = std::move(quantized);
            sol.effective_gain = dot_u(e, sol.w);
            sol.objective = std::abs(sol.effective_gain);
            return sol;
        }
        default:
            return beam_for_reflection(ch_->g[user], ch_->H, ch_->f[user],
                                       random_reflection(shared_random));
        }
    }

    SchemeResult tdma(const PhaseMode& mode, const ReflectionState* shared_random) const
    {
        SchemeResult res;
        res.scheme = Scheme::tdma;
        res.phase_mode = mode;
        const int k_users = static_cast<int>(ch_->f.size());
        res.per_user_rates.reserve(k_users);
        for (int k = 0; k < k_users; ++k) {
            const BeamSolution sol = mode_solution(k, mode, shared_random);
            res.per_user_rates.push_back(rate_for(std::norm(sol.effective_gain)));
        }
        res.sum_rate = std::accumulate(res.per_user_rates.begin(), res.per_user_rates.end(), 0.0);
        return res;
    }

    // Effective gains when the reflection stays fixed on the aided user's
    // mode solution; every other user falls back to MRT against it.
    std::vector<cxd> fixed_reflection_gains(const PhaseMode& mode,
                                            const ReflectionState* shared_random) const
    {
        const BeamSolution aided_sol = mode_solution(aided_, mode, shared_random);
        std::vector<cxd> rho(ch_->f.size());
        for (std::size_t k = 0; k < ch_->f.size(); ++k) {
            if (static_cast<int>(k) == aided_) {
                rho[k] = aided_sol.effective_gain;
                continue;
            }
            const BeamSolution other = beam_for_reflection(ch_->g[k], ch_->H, ch_->f[k],
                                                           aided_sol.reflection);
            rho[k] = other.effective_gain;
        }
        return rho;
    }

    SchemeResult fdma(const PhaseMode& mode, const ReflectionState* shared_random) const
    {
        SchemeResult res;
        res.scheme = Scheme::fdma;
        res.phase_mode = mode;
        res.aided_user = aided_;
        const std::vector<cxd> rho = fixed_reflection_gains(mode, shared_random);
        res.per_user_rates.reserve(rho.size());
        for (const cxd& r : rho)
            res.per_user_rates.push_back(rate_for(std::norm(r)));
        res.sum_rate = std::accumulate(res.per_user_rates.begin(), res.per_user_rates.end(), 0.0);
        return res;
    }

    SchemeResult noma(const PhaseMode& mode, const ReflectionState* shared_random) const
    {
        SchemeResult res;
        res.scheme = Scheme::noma;
        res.phase_mode = mode;
        res.aided_user = aided_;
        const std::vector<cxd> rho = fixed_reflection_gains(mode, shared_random);
        const int k_users = static_cast<int>(rho.size());

        // SIC decoding order: strongest effective gain first.
        std::vector<int> order(k_users);
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
            return std::norm(rho[a]) > std::norm(rho[b]);
        });

        std::vector<cxd> rho_sorted(k_users);
        for (int i = 0; i < k_users; ++i)
            rho_sorted[i] = rho[order[i]];
        const std::vector<double> alphas = allocate_noma_power(rho_sorted, *cfg_);

        res.per_user_rates.assign(k_users, 0.0);
        res.alphas.assign(k_users, 0.0);
        double interference = 0.0; // sum of alpha over already-placed stronger users
        for (int i = 0; i < k_users; ++i) {
            const double gain = std::norm(rho_sorted[i]);
            const double snr = gain * alphas[i] * cfg_->tx_power
                               / (gain * interference * cfg_->tx_power + ch_->noise_power);
            res.per_user_rates[order[i]] = std::log2(1.0 + snr);
            res.alphas[order[i]] = alphas[i];
            interference += alphas[i];
        }
        res.sum_rate = std::accumulate(res.per_user_rates.begin(), res.per_user_rates.end(), 0.0);
        return res;
    }
};

inline SchemeResult tdma_sum_rate(const ChannelSet& channels, const ScenarioConfig& cfg,
                                  const PhaseMode& mode,
                                  const ReflectionState* shared_random = nullptr)
{
    return DropEvaluator(channels, cfg).evaluate(Scheme::tdma, mode, shared_random);
}

inline SchemeResult fdma_sum_rate(const ChannelSet& channels, const ScenarioConfig& cfg,
                                  const PhaseMode& mode,
                                  const ReflectionState* shared_random = nullptr)
{
    return DropEvaluator(channels, cfg).evaluate(Scheme::fdma, mode, shared_random);
}

inline SchemeResult noma_sum_rate(const ChannelSet& channels, const ScenarioConfig& cfg,
                                  const PhaseMode& mode,
                                  const ReflectionState* shared_random = nullptr)
{
    return DropEvaluator(channels, cfg).evaluate(Scheme::noma, mode, shared_random);
}

} // namespace irslink

#endif
