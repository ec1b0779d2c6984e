#include "segcrawl/bench.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <numeric>
#include <sstream>

#include "json.hpp"
#include "segcrawl/errors.hpp"
#include "segcrawl/http_fetcher.hpp"
#include "segcrawl/pipeline.hpp"

namespace segcrawl {
namespace {

using json = nlohmann::json;

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& path) {
    std::filesystem::path p(path);
    return p.is_absolute() || base.empty() ? p : base / p;
}

RunConfig parse_config(const json& item, std::size_t pos) {
    const std::string where = "configs[" + std::to_string(pos) + "]";
    if (!item.is_object()) throw InvalidConfigError(where + " must be an object");
    auto positive = [&](const char* key, bool required, std::size_t fallback) -> std::size_t {
        if (!item.contains(key) || item[key].is_null()) {
            if (required) throw InvalidConfigError(where + " is missing \"" + key + "\"");
            return fallback;
        }
        const json& v = item[key];
        if (!v.is_number_integer() || v.get<long long>() < 1) {
            throw InvalidConfigError(where + "." + key + " must be a positive integer");
        }
        return v.get<std::size_t>();
    };
    RunConfig config;
    config.n = positive("n", true, 1);
    config.m = positive("m", true, 1);
    config.k = positive("k", true, 1);
    if (item.contains("queue_capacity") && !item["queue_capacity"].is_null()) {
        config.queue_capacity = positive("queue_capacity", true, 1);
    }
    config.fetch_timeout = Millis{static_cast<Millis::rep>(
        positive("timeout_ms", false, static_cast<std::size_t>(config.fetch_timeout.count())))};
    if (item.contains("retries")) {
        const json& v = item["retries"];
        if (!v.is_number_integer() || v.get<long long>() < 0) {
            throw InvalidConfigError(where + ".retries must be a non-negative integer");
        }
        config.retries = v.get<std::size_t>();
    }
    return config;
}

}  // namespace

void ExperimentPlan::validate() const {
    if (sizes.empty()) throw InvalidConfigError("plan has no dataset sizes");
    if (configs.empty()) throw InvalidConfigError("plan has no configs");
    if (repetitions == 0) throw InvalidConfigError("repetitions must be >= 1");
    for (const auto& config : configs) config.validate();
    if (fetcher == FetcherKind::simulated) sim_profile.validate();
    if (fetcher == FetcherKind::live && !urls) {
        throw InvalidConfigError("live plans need a \"urls\" file");
    }
}

ExperimentPlan parse_plan(std::string_view json_text, const std::filesystem::path& base_dir) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw InvalidConfigError(std::string("plan: ") + e.what());
    }
    if (!doc.is_object()) throw InvalidConfigError("plan must be a JSON object");

    ExperimentPlan plan;
    try {
        for (const auto& size : doc.at("sizes")) {
            if (!size.is_number_integer() || size.get<long long>() < 0) {
                throw InvalidConfigError("sizes must be non-negative integers");
            }
            plan.sizes.push_back(size.get<std::size_t>());
        }
        const json& configs = doc.at("configs");
        if (!configs.is_array()) throw InvalidConfigError("configs must be an array");
        for (std::size_t i = 0; i < configs.size(); ++i) {
            plan.configs.push_back(parse_config(configs[i], i));
        }
        if (doc.contains("repetitions")) {
            const json& reps = doc["repetitions"];
            if (!reps.is_number_integer() || reps.get<long long>() < 1) {
                throw InvalidConfigError("repetitions must be a positive integer");
            }
            plan.repetitions = reps.get<std::size_t>();
        }
        const std::string fetcher = doc.value("fetcher", std::string("simulated"));
        if (fetcher == "simulated") {
            plan.fetcher = FetcherKind::simulated;
        } else if (fetcher == "live") {
            plan.fetcher = FetcherKind::live;
        } else {
            throw InvalidConfigError("fetcher must be \"simulated\" or \"live\", got \"" + fetcher + "\"");
        }
        if (doc.contains("sim_profile")) plan.sim_profile = parse_sim_profile(doc["sim_profile"].dump());
        if (doc.contains("rules") && !doc["rules"].is_null()) {
            plan.rules = resolve(base_dir, doc["rules"].get<std::string>());
        }
        if (doc.contains("urls") && !doc["urls"].is_null()) {
            plan.urls = resolve(base_dir, doc["urls"].get<std::string>());
        }
    } catch (const json::exception& e) {
        throw InvalidConfigError(std::string("plan: ") + e.what());
    }
    plan.validate();
    return plan;
}

ExperimentPlan load_plan(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InvalidConfigError("cannot open plan " + path.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_plan(buffer.str(), path.parent_path());
}

const BenchCell* BenchSummary::find(std::string_view label) const {
    for (const auto& cell : cells) {
        if (cell.label == label) return &cell;
    }
    return nullptr;
}

std::string cell_label(const RunConfig& config, std::size_t dataset_size, bool multi_size) {
    std::string label = config.label();
    if (multi_size) label += "@" + std::to_string(dataset_size);
    return label;
}

double summarize(std::span<const double> trials) {
    if (trials.empty()) throw InvalidInputError("summarize: no trials");
    return std::accumulate(trials.begin(), trials.end(), 0.0) / static_cast<double>(trials.size());
}

double round_half_up(double value, int decimals) {
    const double scale = std::pow(10.0, decimals);
    // The nudge keeps decimal ties such as 2.0015 from landing just below .5 in binary.
    const double scaled = std::floor(std::fabs(value) * scale + 0.5 + 1e-9) / scale;
    return std::copysign(scaled, value);
}

std::string format_fixed(double value, int decimals) {
    double rounded = round_half_up(value, decimals);
    if (rounded == 0.0) rounded = 0.0;  // no "-0.000"
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, rounded);
    return buf;
}

SpeedupReport compute_speedup(double t_single, double t_multi) {
    if (!(t_single > 0.0)) {
        throw InvalidInputError("compute_speedup: single-worker time must be > 0");
    }
    SpeedupReport report;
    report.t_single = t_single;
    report.t_multi = t_multi;
    report.absolute_saving = t_single - t_multi;
    report.percent = 100.0 * report.absolute_saving / t_single;
    return report;
}

std::string format_speedup(const SpeedupReport& report) {
    return "saved " + format_fixed(report.absolute_saving, 3) + " s (" +
           format_fixed(report.percent, 2) + "%)";
}

BenchSummary run_experiment(const ExperimentPlan& plan, const ExperimentOptions& options) {
    plan.validate();
    if (plan.fetcher == FetcherKind::live && !options.allow_live) {
        throw InvalidConfigError("live fetching needs an explicit opt-in (--allow-live)");
    }

    const RuleSet rules = plan.rules ? load_rules(*plan.rules) : RuleSet{};

    std::unique_ptr<Fetcher> fetcher;
    UrlDataset live_urls;
    if (plan.fetcher == FetcherKind::live) {
        live_urls = UrlDataset::load(*plan.urls);
        fetcher = std::make_unique<HttpFetcher>();
    } else {
        fetcher = std::make_unique<SimulatedFetcher>(plan.sim_profile);
    }

    std::vector<UrlDataset> datasets;
    for (const std::size_t size : plan.sizes) {
        if (plan.fetcher == FetcherKind::live) {
            if (size > live_urls.size()) {
                throw InvalidConfigError("plan size " + std::to_string(size) + " exceeds the " +
                                         std::to_string(live_urls.size()) + " URLs available");
            }
            std::vector<std::string> urls;
            for (std::size_t i = 0; i < size; ++i) urls.push_back(live_urls[i].url);
            datasets.push_back(UrlDataset::from_urls(std::move(urls)));
        } else {
            datasets.push_back(UrlDataset::from_urls(synthetic_urls(size, plan.sim_profile.seed)));
        }
    }

    const bool multi_size = plan.sizes.size() > 1;
    BenchSummary summary;
    for (const auto& config : plan.configs) {
        for (std::size_t s = 0; s < plan.sizes.size(); ++s) {
            BenchCell cell;
            cell.label = cell_label(config, plan.sizes[s], multi_size);
            cell.config = config;
            cell.dataset_size = plan.sizes[s];
            for (std::size_t trial = 1; trial <= plan.repetitions; ++trial) {
                if (options.stop.stop_requested()) {
                    summary.interrupted = true;
                    break;
                }
                PipelineRun run = run_pipeline(datasets[s], config, rules, *fetcher, options.stop);
                if (run.interrupted) {
                    summary.interrupted = true;
                    break;
                }
                RunSample sample;
                sample.config = config;
                sample.dataset_size = plan.sizes[s];
                sample.trial = trial;
                sample.wall_time = run.wall_time.count();
                sample.group_timings = std::move(run.timings);
                sample.fetched_ok = run.result.fetched_ok;
                sample.fetched_failed = run.result.fetched_failed;
                sample.records = run.result.records_extracted;
                cell.trials.push_back(sample.wall_time);
                if (options.on_sample) options.on_sample(sample);
                summary.samples.push_back(std::move(sample));
            }
            if (!cell.trials.empty()) {
                cell.mean = summarize(cell.trials);
                summary.cells.push_back(std::move(cell));
            }
            if (summary.interrupted) return summary;
        }
    }
    return summary;
}

}  // namespace segcrawl
