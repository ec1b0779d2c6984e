#pragma once

#include <chrono>
#include <cstddef>
#include <span>
#include <stop_token>
#include <vector>

#include "segcrawl/extraction.hpp"
#include "segcrawl/fetcher.hpp"
#include "segcrawl/types.hpp"

namespace segcrawl {

/// Splits `dataset` into exactly n contiguous segments. The first (size mod n)
/// segments get ceil(size/n) entries, the rest floor(size/n); with n > size the
/// tail segments are empty. Throws InvalidConfigError when n == 0.
std::vector<Segment> partition(const UrlDataset& dataset, std::size_t n);

/// Everything one worker group produced.
struct GroupOutput {
    std::size_t group_id = 0;
    std::vector<TargetedRecord> records;
    std::vector<ErrorEntry> errors;
    std::vector<std::size_t> parsed_indices;  // ok documents that came out of the queue
    GroupTiming timing;
    std::size_t queue_peak = 0;
    bool interrupted = false;
};

struct GroupOptions {
    std::stop_token stop;
    /// Timing origin; GroupTiming start/end are measured from here.
    std::chrono::steady_clock::time_point epoch = std::chrono::steady_clock::now();
};

/// Crawls one segment: m fetch workers pull URLs from a shared cursor and push
/// ok documents into a bounded queue that k parse workers drain through
/// extract(). The queue closes once every fetcher has finished. Per-URL
/// failures become error entries; nothing here aborts the group.
GroupOutput run_group(const Segment& segment, const RunConfig& config, const RuleSet& rules,
                      const Fetcher& fetcher, const GroupOptions& options = {});

/// Merges group outputs: records sorted canonically, errors by index, counts
/// filled in. Throws ConsistencyError if a dataset index shows up twice.
ResultDataSet aggregate(std::span<const GroupOutput> outputs);

struct PipelineRun {
    ResultDataSet result;
    std::vector<GroupTiming> timings;     // one per group, by group_id
    std::vector<std::size_t> queue_peaks; // one per group, by group_id
    std::chrono::duration<double> wall_time{0};
    bool interrupted = false;
};

/// Validates config, partitions the dataset into config.n segments and runs
/// all groups concurrently. Returns after the last group finishes. When
/// `stop` is requested, fetchers stop pulling new URLs, parsers drain what is
/// queued, and the partial result is returned with interrupted = true.
PipelineRun run_pipeline(const UrlDataset& dataset, const RunConfig& config, const RuleSet& rules,
                         const Fetcher& fetcher, std::stop_token stop = {});

}  // namespace segcrawl
