#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <stop_token>
#include <string>
#include <string_view>
#include <vector>

#include "segcrawl/extraction.hpp"
#include "segcrawl/sim_fetcher.hpp"
#include "segcrawl/types.hpp"

namespace segcrawl {

enum class FetcherKind { simulated, live };

struct ExperimentPlan {
    std::vector<std::size_t> sizes;
    std::vector<RunConfig> configs;
    std::size_t repetitions = 1;
    FetcherKind fetcher = FetcherKind::simulated;
    SimProfile sim_profile;
    std::optional<std::filesystem::path> rules;  // none: empty RuleSet
    std::optional<std::filesystem::path> urls;   // required for live runs

    /// Throws InvalidConfigError: no sizes, no configs, zero repetitions, bad config/profile.
    void validate() const;
};

/// Plan file: {"sizes": [...], "configs": [{"n","m","k","queue_capacity"}...],
/// "repetitions": R, "fetcher": "simulated"|"live", "sim_profile": {...},
/// "rules": path, "urls": path}. Optional per-config keys: timeout_ms, retries.
/// Relative paths resolve against `base_dir`. Throws InvalidConfigError.
ExperimentPlan parse_plan(std::string_view json_text, const std::filesystem::path& base_dir = {});
ExperimentPlan load_plan(const std::filesystem::path& path);

struct RunSample {
    RunConfig config;
    std::size_t dataset_size = 0;
    std::size_t trial = 0;  // 1-based
    double wall_time = 0;   // seconds, measured around run_pipeline only
    std::vector<GroupTiming> group_timings;
    std::size_t fetched_ok = 0;
    std::size_t fetched_failed = 0;
    std::size_t records = 0;
};

/// All trials of one (config, dataset size) pair.
struct BenchCell {
    std::string label;
    RunConfig config;
    std::size_t dataset_size = 0;
    std::vector<double> trials;  // seconds
    double mean = 0;             // raw, unrounded
};

struct BenchSummary {
    std::vector<BenchCell> cells;
    std::vector<RunSample> samples;
    bool interrupted = false;

    const BenchCell* find(std::string_view label) const;
};

/// "n1m1k1", or "n1m1k1@500" when the plan sweeps more than one size.
std::string cell_label(const RunConfig& config, std::size_t dataset_size, bool multi_size);

/// Arithmetic mean; throws InvalidInputError on an empty list.
double summarize(std::span<const double> trials);

/// Half-up rounding to `decimals` places (ties go away from zero).
double round_half_up(double value, int decimals = 3);

/// Fixed-point text after half-up rounding, e.g. format_fixed(95.3899) == "95.390".
std::string format_fixed(double value, int decimals = 3);

struct SpeedupReport {
    double t_single = 0;
    double t_multi = 0;
    double absolute_saving = 0;  // t_single - t_multi
    double percent = 0;          // 100 * absolute_saving / t_single
};

/// Throws InvalidInputError when t_single <= 0.
SpeedupReport compute_speedup(double t_single, double t_multi);

/// "saved 77.364 s (81.10%)"
std::string format_speedup(const SpeedupReport& report);

struct ExperimentOptions {
    bool allow_live = false;
    std::stop_token stop;
    /// Called after each pipeline run.
    std::function<void(const RunSample&)> on_sample;
};

/// Runs repetitions x configs x sizes pipeline runs one after another.
/// Simulated plans crawl synthetic_urls(size, sim_profile.seed); live plans
/// crawl the first `size` URLs of plan.urls and need options.allow_live.
/// Everything is validated before the first timed run.
BenchSummary run_experiment(const ExperimentPlan& plan, const ExperimentOptions& options = {});

}  // namespace segcrawl
