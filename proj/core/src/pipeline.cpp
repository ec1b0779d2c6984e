#include "segcrawl/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

#include "segcrawl/bounded_queue.hpp"
#include "segcrawl/errors.hpp"

namespace segcrawl {
namespace {

using clock = std::chrono::steady_clock;

Millis since(clock::time_point epoch) {
    return std::chrono::duration_cast<Millis>(clock::now() - epoch);
}

}  // namespace

std::vector<Segment> partition(const UrlDataset& dataset, std::size_t n) {
    if (n == 0) throw InvalidConfigError("partition: n must be >= 1");
    const auto& entries = dataset.entries();
    const std::size_t base = entries.size() / n;
    const std::size_t extra = entries.size() % n;

    std::vector<Segment> segments(n);
    auto cursor = entries.begin();
    for (std::size_t id = 0; id < n; ++id) {
        const std::size_t count = base + (id < extra ? 1 : 0);
        segments[id].segment_id = id;
        segments[id].entries.assign(cursor, cursor + static_cast<std::ptrdiff_t>(count));
        cursor += static_cast<std::ptrdiff_t>(count);
    }
    return segments;
}

GroupOutput run_group(const Segment& segment, const RunConfig& config, const RuleSet& rules,
                      const Fetcher& fetcher, const GroupOptions& options) {
    const Millis start = since(options.epoch);

    BoundedQueue<WebDocument> queue(config.effective_queue_capacity());
    std::atomic<std::size_t> cursor{0};
    std::atomic<bool> interrupted{false};

    // Workers only touch their own slot; slots are merged after join.
    std::vector<std::vector<ErrorEntry>> fetch_errors(config.m);
    std::vector<std::vector<TargetedRecord>> parse_records(config.k);
    std::vector<std::vector<std::size_t>> parse_indices(config.k);

    {
        std::vector<std::jthread> parsers;
        parsers.reserve(config.k);
        for (std::size_t p = 0; p < config.k; ++p) {
            parsers.emplace_back([&, p] {
                while (auto doc = queue.pop()) {
                    auto records = extract(*doc, rules);
                    parse_records[p].insert(parse_records[p].end(),
                                            std::make_move_iterator(records.begin()),
                                            std::make_move_iterator(records.end()));
                    parse_indices[p].push_back(doc->dataset_index);
                }
            });
        }

        {
            std::vector<std::jthread> fetchers;
            fetchers.reserve(config.m);
            for (std::size_t f = 0; f < config.m; ++f) {
                fetchers.emplace_back([&, f] {
                    for (;;) {
                        if (options.stop.stop_requested()) {
                            interrupted = true;
                            return;
                        }
                        const std::size_t i = cursor.fetch_add(1);
                        if (i >= segment.entries.size()) return;
                        const UrlEntry& entry = segment.entries[i];

                        FetchOutcome outcome;
                        try {
                            outcome = fetch_with_retries(fetcher, entry.url, config.fetch_timeout,
                                                         config.retries, options.stop);
                        } catch (const std::exception&) {
                            outcome.status = FetchStatus::connection_error();
                        }
                        if (!outcome.status.is_ok()) {
                            fetch_errors[f].push_back({entry.url, entry.index, outcome.status});
                            continue;
                        }
                        WebDocument doc{entry.url,       entry.index,          segment.segment_id,
                                        outcome.status, std::move(outcome.body), outcome.elapsed};
                        queue.push(std::move(doc));
                    }
                });
            }
        }  // all fetchers joined
        queue.close();
    }  // all parsers drained and joined

    GroupOutput out;
    out.group_id = segment.segment_id;
    out.timing = GroupTiming::make(segment.segment_id, start, since(options.epoch));
    out.queue_peak = queue.peak();
    out.interrupted = interrupted.load();
    for (auto& errors : fetch_errors) {
        out.errors.insert(out.errors.end(), std::make_move_iterator(errors.begin()),
                          std::make_move_iterator(errors.end()));
    }
    for (std::size_t p = 0; p < config.k; ++p) {
        out.records.insert(out.records.end(), std::make_move_iterator(parse_records[p].begin()),
                           std::make_move_iterator(parse_records[p].end()));
        out.parsed_indices.insert(out.parsed_indices.end(), parse_indices[p].begin(),
                                  parse_indices[p].end());
    }
    return out;
}

ResultDataSet aggregate(std::span<const GroupOutput> outputs) {
    ResultDataSet result;
    std::vector<std::size_t> seen;
    for (const auto& group : outputs) {
        result.records.insert(result.records.end(), group.records.begin(), group.records.end());
        result.errors.insert(result.errors.end(), group.errors.begin(), group.errors.end());
        seen.insert(seen.end(), group.parsed_indices.begin(), group.parsed_indices.end());
        for (const auto& error : group.errors) seen.push_back(error.dataset_index);
        result.fetched_ok += group.parsed_indices.size();
        result.fetched_failed += group.errors.size();
    }

    std::sort(seen.begin(), seen.end());
    if (const auto dup = std::adjacent_find(seen.begin(), seen.end()); dup != seen.end()) {
        throw ConsistencyError("dataset index " + std::to_string(*dup) +
                               " was processed more than once");
    }

    std::sort(result.records.begin(), result.records.end(), canonical_less);
    std::sort(result.errors.begin(), result.errors.end(),
              [](const ErrorEntry& a, const ErrorEntry& b) { return a.dataset_index < b.dataset_index; });
    result.records_extracted = result.records.size();
    return result;
}

PipelineRun run_pipeline(const UrlDataset& dataset, const RunConfig& config, const RuleSet& rules,
                         const Fetcher& fetcher, std::stop_token stop) {
    config.validate();
    const auto segments = partition(dataset, config.n);

    GroupOptions options{stop, clock::now()};
    std::vector<GroupOutput> outputs(config.n);
    {
        std::vector<std::jthread> groups;
        groups.reserve(config.n);
        for (std::size_t g = 0; g < config.n; ++g) {
            groups.emplace_back([&, g] {
                outputs[g] = run_group(segments[g], config, rules, fetcher, options);
            });
        }
    }
    const auto finished = clock::now();

    PipelineRun run;
    run.wall_time = finished - options.epoch;
    run.result = aggregate(outputs);
    run.timings.reserve(outputs.size());
    run.queue_peaks.reserve(outputs.size());
    for (const auto& group : outputs) {
        run.timings.push_back(group.timing);
        run.queue_peaks.push_back(group.queue_peak);
        run.interrupted = run.interrupted || group.interrupted;
    }
    return run;
}

}  // namespace segcrawl
