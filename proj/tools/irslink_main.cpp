// Command-line front end: `run` executes a campaign and writes the records
// CSV plus summary JSON, `drop` dumps a single realization for debugging,
// `oracle` compares the quantized heuristic against exhaustive search on
// small surfaces.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <mutex>
#include <string>
#include <vector>

#include "irslink/irslink.hpp"

namespace {

// exit codes: 0 ok, 2 config/validation, 3 degeneracy limit, 4 I/O
constexpr int exit_config_error = 2;
constexpr int exit_degenerate = 3;
constexpr int exit_io_error = 4;

struct CommonOpts {
    std::string config_path;
    std::vector<std::string> overrides;
};

void add_common(CLI::App* cmd, CommonOpts& opts)
{
    cmd->add_option("--config", opts.config_path, "config file (key = value lines)");
    cmd->add_option("--set", opts.overrides, "override, key=value (repeatable)")
        ->take_all();
}

// --modes continuous,discrete_1,discrete_2,random
void apply_modes_flag(irslink::ScenarioConfig& cfg, const std::string& modes_csv)
{
    cfg.include_continuous = false;
    cfg.include_random = false;
    cfg.phase_bits.clear();
    for (const auto& tok : irslink::detail::split_list(modes_csv)) {
        if (tok == "continuous") {
            cfg.include_continuous = true;
        } else if (tok == "random") {
            cfg.include_random = true;
        } else if (tok.rfind("discrete_", 0) == 0) {
            cfg.phase_bits.push_back(
                static_cast<int>(irslink::detail::parse_int("modes", tok.substr(9))));
        } else {
            throw std::invalid_argument("unknown mode '" + tok + "'");
        }
    }
}

int cmd_run(const CommonOpts& common, const std::string& out_dir, const std::string& schemes_csv,
            const std::string& modes_csv, long long seed, int drops, int parallel, bool has_seed)
{
    irslink::ScenarioConfig cfg = irslink::parse_config(common.config_path, common.overrides);
    if (!schemes_csv.empty())
        irslink::detail::apply_config_entry(cfg, "schemes", schemes_csv);
    if (!modes_csv.empty())
        apply_modes_flag(cfg, modes_csv);
    if (has_seed)
        cfg.master_seed = static_cast<std::uint64_t>(seed);
    if (drops > 0)
        cfg.drops = drops;
    cfg.validate();

    irslink::RunManifest manifest;
    manifest.config_digest = irslink::config_digest(cfg);
    manifest.started_at = irslink::iso8601_utc_now();

    std::mutex log_mutex;
    auto progress = [&](std::uint32_t done) {
        std::lock_guard<std::mutex> lock(log_mutex);
        std::fprintf(stderr, "drops %u/%d\n", done, cfg.drops);
    };
    const irslink::CampaignResult result = irslink::run_campaign(cfg, parallel, progress);

    manifest.finished_at = irslink::iso8601_utc_now();
    manifest.degenerate_drop_count = result.degenerate_drops;

    std::filesystem::create_directories(out_dir);
    const auto csv_path = (std::filesystem::path(out_dir) / "records.csv").string();
    const auto json_path = (std::filesystem::path(out_dir) / "summary.json").string();
    irslink::write_records_csv(result, csv_path);
    irslink::write_summary_json(result, manifest, json_path);
    irslink::write_text_file((std::filesystem::path(out_dir) / "config.resolved").string(),
                             irslink::canonical_config_text(cfg));

    std::printf("%-6s %-12s %10s %10s %10s\n", "scheme", "mode", "mean", "p5", "p50");
    for (const auto& s : result.summaries)
        std::printf("%-6s %-12s %10.4f %10.4f %10.4f\n", irslink::scheme_name(s.scheme).c_str(),
                    s.phase_mode.label().c_str(), s.mean, s.p5, s.p50);
    std::printf("wrote %s and %s\n", csv_path.c_str(), json_path.c_str());
    return 0;
}

int cmd_drop(const CommonOpts& common, int index)
{
    irslink::ScenarioConfig cfg = irslink::parse_config(common.config_path, common.overrides);
    if (index < 0 || index >= cfg.drops)
        throw std::invalid_argument("drop index out of range");

    // Rebuild the drop's realization on its own stream, then its records.
    irslink::Rng rng(irslink::derive_stream_seed(cfg.master_seed, index));
    const auto placement = irslink::place_users(cfg, rng);
    const auto gains = irslink::link_gains(placement, cfg, rng);
    const auto geom = irslink::steering_geometry(cfg);
    const auto channels = irslink::assemble_channels(cfg, gains, geom, rng);
    const auto shared_random = irslink::random_phases(cfg.n_elements, rng);
    const irslink::DropEvaluator evaluator(channels, cfg);

    nlohmann::ordered_json dump;
    dump["drop_index"] = index;
    dump["config_digest"] = irslink::config_digest(cfg);
    for (std::size_t k = 0; k < placement.user_positions.size(); ++k) {
        nlohmann::ordered_json user;
        user["position"] = {placement.user_positions[k].x, placement.user_positions[k].y};
        user["class"] = placement.user_class[k] == irslink::UserClass::center ? "center" : "edge";
        user["sigma_f2"] = gains.sigma_f2[k];
        user["sigma_g2"] = gains.sigma_g2[k];
        dump["users"].push_back(user);
    }
    dump["sigma_h2"] = gains.sigma_h2;
    dump["noise_power"] = gains.noise_power;
    dump["aided_user"] = evaluator.aided_user();
    for (irslink::Scheme scheme : cfg.schemes)
        for (const auto& mode : cfg.enabled_modes()) {
            const auto r = evaluator.evaluate(scheme, mode, &shared_random);
            nlohmann::ordered_json rec;
            rec["scheme"] = irslink::scheme_name(scheme);
            rec["phase_mode"] = mode.label();
            rec["sum_rate_bps_hz"] = r.sum_rate;
            rec["per_user_rates"] = r.per_user_rates;
            if (scheme == irslink::Scheme::noma)
                rec["alphas"] = r.alphas;
            dump["records"].push_back(rec);
        }
    std::cout << dump.dump(2) << "\n";
    return 0;
}

int cmd_oracle(int n, int bits, int instances, long long seed, int ao_iterations)
{
    if (n * bits > 20)
        throw std::invalid_argument("oracle: N*bits must be <= 20");
    irslink::ScenarioConfig cfg;
    cfg.ao_iterations = ao_iterations;

    irslink::Rng rng(static_cast<std::uint64_t>(seed));
    const int nb = 4;
    int heuristic_wins = 0; // oracle strictly better
    int ties = 0;
    double worst_ratio = 1.0;
    double ratio_sum = 0.0;
    int oracle_above_continuous = 0;

    std::printf("%-6s %12s %12s %12s %10s\n", "inst", "heuristic", "oracle", "continuous",
                "ratio");
    for (int i = 0; i < instances; ++i) {
        const auto g = irslink::draw_rayleigh_vector(n, 1.0, rng);
        const auto f = irslink::draw_rayleigh_vector(nb, 1.0, rng);
        irslink::CMatrix h(n, nb);
        for (int r = 0; r < n; ++r) {
            const auto row = irslink::draw_rayleigh_vector(nb, 1.0, rng);
            for (int c = 0; c < nb; ++c)
                h(r, c) = row[c];
        }
        const auto cont = irslink::alternating_optimize(g, h, f, cfg.ao_iterations);
        const auto quant = irslink::beam_for_reflection(
            g, h, f, irslink::quantize_phases(cont.reflection, bits));
        const auto oracle = irslink::brute_force_discrete(g, h, f, bits);

        const double ratio = quant.objective / oracle.objective;
        ratio_sum += ratio;
        worst_ratio = std::min(worst_ratio, ratio);
        if (oracle.objective > quant.objective)
            ++heuristic_wins;
        else
            ++ties;
        if (oracle.objective > cont.objective)
            ++oracle_above_continuous;
        std::printf("%-6d %12.6f %12.6f %12.6f %10.6f\n", i, quant.objective, oracle.objective,
                    cont.objective, ratio);
    }
    std::printf("\ninstances=%d  oracle_strictly_better=%d  ties=%d\n", instances, heuristic_wins,
                ties);
    std::printf("heuristic/oracle ratio: mean=%.6f worst=%.6f\n", ratio_sum / instances,
                worst_ratio);
    std::printf("oracle above continuous objective on %d instances (monitored)\n",
                oracle_above_continuous);
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"link-level simulator for reflecting-surface-aided multi-user MIMO downlink"};
    app.require_subcommand(1);

    CommonOpts run_opts;
    std::string out_dir = "out";
    std::string schemes_csv;
    std::string modes_csv;
    long long seed = 0;
    int drops = 0;
    int parallel = 1;
    auto* run = app.add_subcommand("run", "run a Monte Carlo campaign");
    add_common(run, run_opts);
    run->add_option("--out-dir", out_dir, "output directory");
    run->add_option("--schemes", schemes_csv, "comma list: tdma,fdma,noma");
    run->add_option("--modes", modes_csv,
                    "comma list: continuous,discrete_<b>,random");
    auto* seed_opt = run->add_option("--seed", seed, "master seed");
    run->add_option("--drops", drops, "number of drops");
    run->add_option("--parallel", parallel, "worker threads")->check(CLI::PositiveNumber);

    CommonOpts drop_opts;
    int drop_index = 0;
    auto* drop = app.add_subcommand("drop", "dump one drop as JSON");
    add_common(drop, drop_opts);
    drop->add_option("--index", drop_index, "drop index");

    int oracle_n = 5;
    int oracle_bits = 2;
    int oracle_instances = 20;
    long long oracle_seed = 1;
    int oracle_iters = 3;
    auto* oracle = app.add_subcommand("oracle", "exhaustive-search comparison on small surfaces");
    oracle->add_option("--n", oracle_n, "number of reflecting elements");
    oracle->add_option("--bits", oracle_bits, "phase bits");
    oracle->add_option("--instances", oracle_instances, "random instances");
    oracle->add_option("--seed", oracle_seed, "stream seed");
    oracle->add_option("--ao-iterations", oracle_iters, "alternating-optimization iterations");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed())
            return cmd_run(run_opts, out_dir, schemes_csv, modes_csv, seed, drops, parallel,
                           seed_opt->count() > 0);
        if (drop->parsed())
            return cmd_drop(drop_opts, drop_index);
        return cmd_oracle(oracle_n, oracle_bits, oracle_instances, oracle_seed, oracle_iters);
    } catch (const irslink::CampaignError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return exit_degenerate;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return exit_config_error;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return exit_io_error;
    }
}
