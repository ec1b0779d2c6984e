#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <filesystem>
#include <iomanip>
#include <limits>
#include <memory>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "segcrawl/segcrawl.hpp"

namespace segcrawl::cli {
namespace {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

// Thrown inside a command to leave with a specific exit code and message.
struct Exit {
    int code;
    std::string message;
};

struct CrawlOptions {
    std::string urls;
    std::string rules;
    std::size_t n = 1, m = 1, k = 1;
    std::optional<std::size_t> queue_cap;
    long timeout_ms = 10'000;
    std::size_t retries = 1;
    std::string fetcher = "sim";
    long sim_latency_ms = 40;
    long sim_jitter_ms = 0;
    std::uint64_t seed = 0;
    double sim_failure_rate = 0.0;
    std::string sim_profile;
    bool allow_live = false;
    std::string out = "out";
};

struct BenchOptions {
    std::string plan;
    std::string out = "bench_runs";
    bool allow_live = false;
};

struct ReportOptions {
    std::string summary;
    std::string single_label;
    std::string multi_label;
    std::string plot;
};

std::string describe(const RunConfig& config) {
    return "config: n=" + std::to_string(config.n) + " m=" + std::to_string(config.m) +
           " k=" + std::to_string(config.k) +
           " queue_capacity=" + std::to_string(config.effective_queue_capacity());
}

std::string seconds(double s) { return format_fixed(s, 3) + "s"; }

fs::path timestamped_dir(const fs::path& root) {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    localtime_r(&t, &tm);
    std::ostringstream name;
    name << std::put_time(&tm, "%Y%m%d-%H%M%S");
    fs::path dir = root / name.str();
    for (int i = 1; fs::exists(dir); ++i) dir = root / (name.str() + "-" + std::to_string(i));
    return dir;
}

int cmd_crawl(const CrawlOptions& opt, const CLI::App& sub, std::ostream& out, std::stop_token stop) {
    RunConfig config;
    config.n = opt.n;
    config.m = opt.m;
    config.k = opt.k;
    config.queue_capacity = opt.queue_cap;
    config.fetch_timeout = Millis{opt.timeout_ms};
    config.retries = opt.retries;
    try {
        config.validate();
    } catch (const InvalidConfigError& e) {
        throw Exit{kExitUsage, e.what()};
    }
    out << describe(config) << " fetcher=" << opt.fetcher << "\n";

    UrlDataset dataset;
    RuleSet rules;
    try {
        dataset = UrlDataset::load(opt.urls);
        rules = load_rules(opt.rules);
    } catch (const DatasetError& e) {
        throw Exit{kExitUsage, e.what()};
    } catch (const RuleError& e) {
        throw Exit{kExitUsage, std::string("rules: ") + e.what()};
    }

    std::unique_ptr<Fetcher> fetcher;
    if (opt.fetcher == "http") {
        if (!opt.allow_live) {
            for (const auto& entry : dataset.entries()) {
                const auto parsed = parse_url(entry.url);
                if (!parsed || !is_loopback_host(parsed->host)) {
                    throw Exit{kExitUsage, "refusing to fetch non-local URL " + entry.url +
                                               " without --allow-live"};
                }
            }
        }
        fetcher = std::make_unique<HttpFetcher>();
    } else {
        SimProfile profile;
        try {
            if (!opt.sim_profile.empty()) profile = load_sim_profile(opt.sim_profile);
            if (opt.sim_profile.empty() || sub.count("--sim-latency-ms")) {
                profile.base_latency = Millis{opt.sim_latency_ms};
            }
            if (opt.sim_profile.empty() || sub.count("--sim-jitter-ms")) {
                profile.jitter = Millis{opt.sim_jitter_ms};
            }
            if (opt.sim_profile.empty() || sub.count("--seed")) profile.seed = opt.seed;
            if (opt.sim_profile.empty() || sub.count("--sim-failure-rate")) {
                profile.failure_rate = opt.sim_failure_rate;
            }
            profile.validate();
        } catch (const InvalidConfigError& e) {
            throw Exit{kExitUsage, e.what()};
        }
        fetcher = std::make_unique<SimulatedFetcher>(std::move(profile));
    }

    const PipelineRun run = run_pipeline(dataset, config, rules, *fetcher, stop);
    const auto& result = run.result;

    const fs::path dir(opt.out);
    write_records_jsonl(result.records, dir / "records.jsonl");
    write_errors_jsonl(result.errors, dir / "errors.jsonl");
    emit_timing_table(run.timings, dir / "timing.csv");

    ordered_json summary;
    summary["n"] = config.n;
    summary["m"] = config.m;
    summary["k"] = config.k;
    summary["queue_capacity"] = config.effective_queue_capacity();
    summary["dataset_size"] = dataset.size();
    summary["fetched_ok"] = result.fetched_ok;
    summary["fetched_failed"] = result.fetched_failed;
    summary["records"] = result.records_extracted;
    summary["wall_time_s"] = round_half_up(run.wall_time.count(), 3);
    summary["interrupted"] = run.interrupted;
    write_text_file(dir / "summary.json", summary.dump(2) + "\n");

    out << "fetched_ok=" << result.fetched_ok << " fetched_failed=" << result.fetched_failed
        << " records=" << result.records_extracted << " wall_time=" << seconds(run.wall_time.count())
        << "\n";
    if (run.interrupted) out << "interrupted: partial results written\n";
    out << "output: " << dir.string() << "\n";
    return kExitOk;
}

void write_bench_outputs(const BenchSummary& summary, const fs::path& dir) {
    emit_table(summary, dir / "bench_summary.csv");

    std::string counts = "label,trial,fetched_ok,fetched_failed,records\n";
    const bool multi_size = [&] {
        for (const auto& c : summary.cells) {
            if (c.dataset_size != summary.cells.front().dataset_size) return true;
        }
        return false;
    }();
    for (const auto& sample : summary.samples) {
        counts += cell_label(sample.config, sample.dataset_size, multi_size) + "," +
                  std::to_string(sample.trial) + "," + std::to_string(sample.fetched_ok) + "," +
                  std::to_string(sample.fetched_failed) + "," + std::to_string(sample.records) + "\n";
    }
    write_text_file(dir / "bench_counts.csv", counts);

    // Timing tables come from the last trial of each cell.
    for (const auto& cell : summary.cells) {
        const RunSample* last = nullptr;
        for (const auto& sample : summary.samples) {
            if (cell_label(sample.config, sample.dataset_size, multi_size) == cell.label) last = &sample;
        }
        if (last) emit_timing_table(last->group_timings, dir / ("timing_" + cell.label + ".csv"));
    }

    // Mean time against dataset size, one series per config.
    std::vector<PlotSeries> by_config;
    for (const auto& cell : summary.cells) {
        const std::string name = cell.config.label();
        auto it = std::find_if(by_config.begin(), by_config.end(),
                               [&](const PlotSeries& s) { return s.name == name; });
        if (it == by_config.end()) {
            by_config.push_back({name, {}});
            it = std::prev(by_config.end());
        }
        it->points.emplace_back(static_cast<double>(cell.dataset_size), cell.mean);
    }
    emit_plot(by_config, dir / "plots" / "mean_time_by_size.svg",
              {"Average time by dataset size", "dataset size (URLs)", "average time (s)"});

    // Single-worker baseline against the fastest config at each size.
    const auto is_single = [](const RunConfig& c) { return c.n == 1 && c.m == 1 && c.k == 1; };
    PlotSeries single{"single (n1m1k1)", {}};
    PlotSeries best{"best multi", {}};
    const BenchCell* best_overall = nullptr;
    std::vector<std::size_t> sizes;
    for (const auto& cell : summary.cells) {
        if (std::find(sizes.begin(), sizes.end(), cell.dataset_size) == sizes.end()) {
            sizes.push_back(cell.dataset_size);
        }
        if (!best_overall || cell.mean < best_overall->mean) best_overall = &cell;
    }
    std::sort(sizes.begin(), sizes.end());
    for (const std::size_t size : sizes) {
        const BenchCell* base = nullptr;
        const BenchCell* fastest = nullptr;
        for (const auto& cell : summary.cells) {
            if (cell.dataset_size != size) continue;
            if (is_single(cell.config)) base = &cell;
            if (!is_single(cell.config) && (!fastest || cell.mean < fastest->mean)) fastest = &cell;
        }
        const auto x = static_cast<double>(size);
        if (base) single.points.emplace_back(x, base->mean);
        if (fastest) best.points.emplace_back(x, fastest->mean);
    }
    std::vector<PlotSeries> comparison;
    if (!single.points.empty()) comparison.push_back(std::move(single));
    if (!best.points.empty()) comparison.push_back(std::move(best));
    if (!comparison.empty()) {
        emit_plot(comparison, dir / "plots" / "single_vs_best.svg",
                  {"Single worker vs best multi-worker", "dataset size (URLs)", "average time (s)"});
    }

    // Per-group durations of the fastest cell's last trial.
    if (best_overall) {
        for (auto it = summary.samples.rbegin(); it != summary.samples.rend(); ++it) {
            if (cell_label(it->config, it->dataset_size, multi_size) != best_overall->label) continue;
            PlotSeries durations{best_overall->label, {}};
            for (const auto& t : it->group_timings) {
                durations.points.emplace_back(static_cast<double>(t.group_id),
                                              static_cast<double>(t.duration.count()) / 1000.0);
            }
            emit_plot(std::span<const PlotSeries>(&durations, 1),
                      dir / "plots" / ("group_durations_" + best_overall->label + ".svg"),
                      {"Group durations", "group id", "duration (s)"});
            break;
        }
    }
}

int cmd_bench(const BenchOptions& opt, std::ostream& out, std::stop_token stop) {
    ExperimentPlan plan;
    try {
        plan = load_plan(opt.plan);
    } catch (const InvalidConfigError& e) {
        throw Exit{kExitUsage, std::string("plan: ") + e.what()};
    }
    if (plan.fetcher == FetcherKind::live && !opt.allow_live) {
        throw Exit{kExitUsage, "plan uses the live fetcher; pass --allow-live to crawl real hosts"};
    }
    for (const auto& config : plan.configs) out << describe(config) << "\n";

    ExperimentOptions options;
    options.allow_live = opt.allow_live;
    options.stop = stop;
    options.on_sample = [&](const RunSample& s) {
        out << s.config.label() << " size=" << s.dataset_size << " trial=" << s.trial
            << " wall_time=" << seconds(s.wall_time) << " ok=" << s.fetched_ok
            << " failed=" << s.fetched_failed << " records=" << s.records << "\n";
    };

    BenchSummary summary;
    try {
        summary = run_experiment(plan, options);
    } catch (const RuleError& e) {
        throw Exit{kExitUsage, std::string("rules: ") + e.what()};
    } catch (const DatasetError& e) {
        throw Exit{kExitUsage, e.what()};
    } catch (const InvalidConfigError& e) {
        throw Exit{kExitUsage, e.what()};
    }

    const fs::path dir = timestamped_dir(opt.out);
    if (summary.cells.empty()) {
        out << "interrupted before the first trial finished; nothing written\n";
        return kExitOk;
    }
    write_bench_outputs(summary, dir);
    ordered_json run_info;
    run_info["plan"] = fs::absolute(opt.plan).string();
    run_info["interrupted"] = summary.interrupted;
    write_text_file(dir / "run.json", run_info.dump(2) + "\n");

    for (const auto& cell : summary.cells) {
        out << cell.label << " average=" << seconds(cell.mean) << " (" << cell.trials.size()
            << " trials)\n";
    }
    if (summary.interrupted) out << "interrupted: partial results written\n";
    out << "output: " << dir.string() << "\n";
    return kExitOk;
}

int cmd_report(const ReportOptions& opt, std::ostream& out) {
    SummaryTable table;
    try {
        table = load_summary_csv(opt.summary);
    } catch (const InvalidInputError& e) {
        throw Exit{kExitUsage, e.what()};
    }
    const std::size_t single = table.column(opt.single_label);
    const std::size_t multi = table.column(opt.multi_label);
    if (single == std::string_view::npos) throw Exit{kExitUsage, "no column '" + opt.single_label + "'"};
    if (multi == std::string_view::npos) throw Exit{kExitUsage, "no column '" + opt.multi_label + "'"};

    const double t_single = table.averages[single];
    const double t_multi = table.averages[multi];
    out << "config: " << opt.single_label << " vs " << opt.multi_label << "\n";
    out << opt.single_label << " average=" << seconds(t_single) << "\n";
    out << opt.multi_label << " average=" << seconds(t_multi) << "\n";

    SpeedupReport report;
    try {
        report = compute_speedup(t_single, t_multi);
    } catch (const InvalidInputError&) {
        throw Exit{kExitRuntime, "cannot compute speedup: average of '" + opt.single_label +
                                     "' is not positive"};
    }
    out << format_speedup(report) << "\n";

    const fs::path plot = opt.plot.empty()
                              ? fs::path(opt.summary).parent_path() / "plots" / "report_comparison.svg"
                              : fs::path(opt.plot);
    const std::vector<PlotSeries> series{{opt.single_label, {{0.0, t_single}}},
                                         {opt.multi_label, {{1.0, t_multi}}}};
    emit_plot(series, plot, {"Single vs multi-worker average time", "configuration", "average time (s)"});
    out << "plot: " << plot.string() << "\n";
    return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        std::stop_token stop) {
    CLI::App app{"segcrawl: segmented concurrent crawler with fetch/parse worker groups", "segcrawl"};
    app.set_version_flag("--version", SEGCRAWL_VERSION);
    app.require_subcommand(1);

    CrawlOptions crawl;
    auto* crawl_cmd = app.add_subcommand("crawl", "Crawl a URL list once and write extracted records");
    crawl_cmd->add_option("--urls", crawl.urls, "URL list, one absolute URL per line")
        ->required()
        ->check(CLI::ExistingFile);
    crawl_cmd->add_option("--rules", crawl.rules, "Extraction rules (JSON array)")
        ->required()
        ->check(CLI::ExistingFile);
    crawl_cmd->add_option("-n", crawl.n, "Worker groups (segments)")
        ->check(CLI::Range(std::size_t{1}, std::numeric_limits<std::size_t>::max()))
        ->capture_default_str();
    crawl_cmd->add_option("-m", crawl.m, "Fetch workers per group")
        ->check(CLI::Range(std::size_t{1}, std::numeric_limits<std::size_t>::max()))
        ->capture_default_str();
    crawl_cmd->add_option("-k", crawl.k, "Parse workers per group")
        ->check(CLI::Range(std::size_t{1}, std::numeric_limits<std::size_t>::max()))
        ->capture_default_str();
    crawl_cmd->add_option("--queue-cap", crawl.queue_cap, "Queue capacity per group (default 2*(m+k))")
        ->check(CLI::Range(std::size_t{1}, std::numeric_limits<std::size_t>::max()));
    crawl_cmd->add_option("--timeout-ms", crawl.timeout_ms, "Per-attempt fetch timeout")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    crawl_cmd->add_option("--retries", crawl.retries, "Retries after a timeout or connection error")
        ->capture_default_str();
    crawl_cmd->add_option("--fetcher", crawl.fetcher, "sim or http")
        ->check(CLI::IsMember({"sim", "http"}))
        ->capture_default_str();
    crawl_cmd->add_option("--sim-latency-ms", crawl.sim_latency_ms, "Simulated base latency")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    crawl_cmd->add_option("--sim-jitter-ms", crawl.sim_jitter_ms, "Simulated latency jitter")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    crawl_cmd->add_option("--seed", crawl.seed, "Simulation seed")->capture_default_str();
    crawl_cmd->add_option("--sim-failure-rate", crawl.sim_failure_rate, "Simulated failure probability")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    crawl_cmd->add_option("--sim-profile", crawl.sim_profile, "Simulation profile (JSON)")
        ->check(CLI::ExistingFile);
    crawl_cmd->add_flag("--allow-live", crawl.allow_live, "Allow the http fetcher to reach non-local hosts");
    crawl_cmd->add_option("--out", crawl.out, "Output directory")->capture_default_str();

    BenchOptions bench;
    auto* bench_cmd = app.add_subcommand("bench", "Run a timed experiment plan");
    bench_cmd->add_option("plan", bench.plan, "Experiment plan (JSON)")->required()->check(CLI::ExistingFile);
    bench_cmd->add_option("--out", bench.out, "Root for timestamped run directories")->capture_default_str();
    bench_cmd->add_flag("--allow-live", bench.allow_live, "Allow plans that use the live fetcher");

    ReportOptions report;
    auto* report_cmd = app.add_subcommand("report", "Speedup between two columns of a bench summary");
    report_cmd->add_option("summary", report.summary, "bench_summary.csv")->required()->check(CLI::ExistingFile);
    report_cmd->add_option("single", report.single_label, "Baseline column label, e.g. n1m1k1")->required();
    report_cmd->add_option("multi", report.multi_label, "Compared column label, e.g. n10m5k5")->required();
    report_cmd->add_option("--plot", report.plot, "Comparison plot path");

    std::vector<std::string> argv_storage;
    argv_storage.reserve(args.size() + 1);
    argv_storage.emplace_back("segcrawl");
    argv_storage.insert(argv_storage.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& a : argv_storage) argv.push_back(a.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*crawl_cmd) return cmd_crawl(crawl, *crawl_cmd, out, stop);
        if (*bench_cmd) return cmd_bench(bench, out, stop);
        if (*report_cmd) return cmd_report(report, out);
    } catch (const Exit& e) {
        err << "error: " << e.message << "\n";
        return e.code;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitUsage;
}

}  // namespace segcrawl::cli
