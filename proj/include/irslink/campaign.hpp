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
// Monte Carlo campaign: seeded per-drop pipeline, worker pool, CDF and
// percentile aggregation. A campaign result is a pure function of the
// config; worker count and scheduling never change it.

#ifndef IRSLINK_CAMPAIGN_HPP
#define IRSLINK_CAMPAIGN_HPP

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <vector>

#include "access.hpp"
#include "fading.hpp"
#include "rng.hpp"
#include "scenario.hpp"

namespace irslink {

struct DropRecord {
    std::uint32_t drop_index = 0;
    Scheme scheme = Scheme::tdma;
    PhaseMode phase_mode;
    double sum_rate = 0.0; // [b/s/Hz]
};

struct SummaryEntry {
    Scheme scheme = Scheme::tdma;
    PhaseMode phase_mode;
    double mean = 0.0;
    double p5 = 0.0;  // the "95%-likely" value
    double p50 = 0.0;
};

struct CampaignResult {
    std::vector<DropRecord> records;      // drop-major, canonical scheme/mode order
    std::vector<SummaryEntry> summaries;  // canonical scheme/mode order
    std::uint64_t degenerate_drops = 0;   // resampled-drop count
};

struct DropOutcome {
    std::vector<DropRecord> records;
    std::uint32_t degenerate_retries = 0;
};

// Nearest-rank percentile: sorted ascending, 1-based index ceil(p*n)
// clamped to [1, n].
inline double empirical_percentile(std::vector<double> values, double p)
{
    if (values.empty())
        throw std::invalid_argument("empirical_percentile: empty input");
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("empirical_percentile: p must be in [0, 1]");
    std::sort(values.begin(), values.end());
    const auto n = static_cast<long>(values.size());
    long rank = static_cast<long>(std::ceil(p * static_cast<double>(n)));
    rank = std::clamp(rank, 1L, n);
    return values[rank - 1];
}

// One drop: derive the drop's own stream, realize placement, gains and
// channels once, then evaluate every configured scheme/mode pair on that
// same realization. The shared random reflection is drawn per drop so the
// random baseline is identical across schemes. Degenerate realizations are
// resampled from a fresh sub-stream and counted.
inline DropOutcome run_drop(const ScenarioConfig& cfg, std::uint32_t drop_index)
{
    constexpr std::uint32_t max_attempts = 64;
    const std::vector<PhaseMode> modes = cfg.enabled_modes();

    for (std::uint32_t attempt = 0; attempt < max_attempts; ++attempt) {
        Rng rng(derive_stream_seed(cfg.master_seed, drop_index, attempt));
        try {
            const Placement placement = place_users(cfg, rng);
            const LinkGains gains = link_gains(placement, cfg, rng);
            const SteeringGeometry geom = steering_geometry(cfg);
            const ChannelSet channels = assemble_channels(cfg, gains, geom, rng);
            const ReflectionState shared_random = random_phases(cfg.n_elements, rng);

            const DropEvaluator evaluator(channels, cfg);
            DropOutcome outcome;
            outcome.degenerate_retries = attempt;
            outcome.records.reserve(cfg.schemes.size() * modes.size());
            for (Scheme scheme : cfg.schemes)
                for (const PhaseMode& mode : modes) {
                    const SchemeResult r = evaluator.evaluate(scheme, mode, &shared_random);
                    outcome.records.push_back({drop_index, scheme, mode, r.sum_rate});
                }
            return outcome;
        } catch (const DegenerateChannelError&) {
            continue;
        }
    }
    throw CampaignError("drop " + std::to_string(drop_index)
                        + ": still degenerate after resampling");
}

namespace detail {

inline std::vector<SummaryEntry> summarize(const std::vector<DropRecord>& records,
                                           const ScenarioConfig& cfg)
{
    std::vector<SummaryEntry> summaries;
    for (Scheme scheme : {Scheme::tdma, Scheme::fdma, Scheme::noma}) {
        if (std::find(cfg.schemes.begin(), cfg.schemes.end(), scheme) == cfg.schemes.end())
            continue;
        for (const PhaseMode& mode : cfg.enabled_modes()) {
            std::vector<double> values;
            for (const DropRecord& r : records)
                if (r.scheme == scheme && r.phase_mode == mode)
                    values.push_back(r.sum_rate);
            SummaryEntry entry;
            entry.scheme = scheme;
            entry.phase_mode = mode;
            double sum = 0.0;
            for (double v : values)
                sum += v;
            entry.mean = sum / static_cast<double>(values.size());
            entry.p5 = empirical_percentile(values, 0.05);
            entry.p50 = empirical_percentile(values, 0.50);
            summaries.push_back(entry);
        }
    }
    return summaries;
}

} // namespace detail

// Runs all drops, optionally across a worker pool, and aggregates. Each
// drop owns an independent seeded stream; outputs are merged in drop-index
// order, so the result is identical for any worker count.
inline CampaignResult run_campaign(const ScenarioConfig& cfg, int parallel = 1,
                                   const std::function<void(std::uint32_t)>& progress = {})
{
    cfg.validate();
    if (parallel < 1)
        throw std::invalid_argument("run_campaign: parallel must be >= 1");

    const auto n_drops = static_cast<std::uint32_t>(cfg.drops);
    std::vector<DropOutcome> outcomes(n_drops);

    if (parallel == 1) {
        for (std::uint32_t i = 0; i < n_drops; ++i) {
            outcomes[i] = run_drop(cfg, i);
            if (progress && (i + 1) % 1000 == 0)
                progress(i + 1);
        }
    } else {
        std::atomic<std::uint32_t> next{0};
        std::atomic<std::uint32_t> done{0};
        std::exception_ptr failure;
        std::mutex failure_mutex;
        auto worker = [&] {
            for (;;) {
                const std::uint32_t i = next.fetch_add(1);
                if (i >= n_drops)
                    return;
                try {
                    outcomes[i] = run_drop(cfg, i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(failure_mutex);
                    if (!failure)
                        failure = std::current_exception();
                    return;
                }
                const std::uint32_t finished = done.fetch_add(1) + 1;
                if (progress && finished % 1000 == 0)
                    progress(finished);
            }
        };
        std::vector<std::thread> pool;
        const int n_workers = std::min<int>(parallel, static_cast<int>(n_drops));
        pool.reserve(n_workers);
        for (int t = 0; t < n_workers; ++t)
            pool.emplace_back(worker);
        for (auto& th : pool)
            th.join();
        if (failure)
            std::rethrow_exception(failure);
    }

    CampaignResult result;
    result.records.reserve(static_cast<std::size_t>(n_drops) * cfg.schemes.size()
                           * cfg.enabled_modes().size());
    for (const DropOutcome& outcome : outcomes) {
        result.degenerate_drops += outcome.degenerate_retries;
        result.records.insert(result.records.end(), outcome.records.begin(),
                              outcome.records.end());
    }
    if (static_cast<double>(result.degenerate_drops)
        > cfg.degenerate_limit * static_cast<double>(n_drops))
        throw CampaignError("degenerate-drop fraction exceeds limit");

    result.summaries = detail::summarize(result.records, cfg);
    return result;
}

} // namespace irslink

#endif
