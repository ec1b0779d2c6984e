#pragma once

#include <chrono>
#include <compare>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace segcrawl {

using Millis = std::chrono::milliseconds;

/// One line of the input URL list. `index` is its 0-based position in the dataset.
struct UrlEntry {
    std::size_t index = 0;
    std::string url;

    friend bool operator==(const UrlEntry&, const UrlEntry&) = default;
};

/// Ordered list of absolute URLs with gap-free 0-based indices. Duplicates are kept.
class UrlDataset {
public:
    UrlDataset() = default;

    /// Throws DatasetError if any entry is not an absolute URL (scheme + host).
    static UrlDataset from_urls(std::vector<std::string> urls);

    /// Plain text, one URL per line; blank lines and '#' comments are skipped.
    static UrlDataset parse(std::istream& in);
    static UrlDataset load(const std::filesystem::path& path);

    const std::vector<UrlEntry>& entries() const noexcept { return entries_; }
    std::size_t size() const noexcept { return entries_.size(); }
    bool empty() const noexcept { return entries_.empty(); }
    const UrlEntry& operator[](std::size_t i) const { return entries_[i]; }

    friend bool operator==(const UrlDataset&, const UrlDataset&) = default;

private:
    std::vector<UrlEntry> entries_;
};

/// Contiguous slice of a dataset handled by one worker group.
struct Segment {
    std::size_t segment_id = 0;
    std::vector<UrlEntry> entries;

    std::size_t size() const noexcept { return entries.size(); }
    bool empty() const noexcept { return entries.empty(); }
};

/// (n, m, k) plus queue, timeout and retry knobs.
struct RunConfig {
    std::size_t n = 1;  // worker groups (segments)
    std::size_t m = 1;  // fetch workers per group
    std::size_t k = 1;  // parse workers per group
    std::optional<std::size_t> queue_capacity;  // unset: 2 * (m + k)
    Millis fetch_timeout{10'000};
    std::size_t retries = 1;

    /// Throws InvalidConfigError when n, m, k or an explicit capacity is zero.
    void validate() const;
    std::size_t effective_queue_capacity() const noexcept;
    /// "n10m5k5"
    std::string label() const;
};

enum class FetchStatusKind { ok, http_error, timeout, connection_error };

struct FetchStatus {
    FetchStatusKind kind = FetchStatusKind::ok;
    int http_code = 0;  // meaningful for http_error only

    static FetchStatus ok() { return {}; }
    static FetchStatus http_error(int code) { return {FetchStatusKind::http_error, code}; }
    static FetchStatus timeout() { return {FetchStatusKind::timeout, 0}; }
    static FetchStatus connection_error() { return {FetchStatusKind::connection_error, 0}; }

    bool is_ok() const noexcept { return kind == FetchStatusKind::ok; }
    /// Transport-level failures are worth another attempt; HTTP errors are not.
    bool is_retryable() const noexcept {
        return kind == FetchStatusKind::timeout || kind == FetchStatusKind::connection_error;
    }
    /// "ok", "http_error(404)", "timeout", "connection_error"
    std::string to_string() const;

    friend bool operator==(const FetchStatus&, const FetchStatus&) = default;
};

/// A fetched page as it travels through a group's queue.
struct WebDocument {
    std::string url;
    std::size_t dataset_index = 0;
    std::size_t segment_id = 0;
    FetchStatus status;
    std::string body;  // empty unless status is ok
    Millis fetch_duration{0};
};

struct TargetedRecord {
    std::string url;
    std::size_t dataset_index = 0;
    std::string rule_name;
    std::string value;
    std::size_t segment_id = 0;

    friend bool operator==(const TargetedRecord&, const TargetedRecord&) = default;
};

/// Canonical result order: (dataset_index, rule_name, value).
bool canonical_less(const TargetedRecord& a, const TargetedRecord& b);

struct ErrorEntry {
    std::string url;
    std::size_t dataset_index = 0;
    FetchStatus status;

    friend bool operator==(const ErrorEntry&, const ErrorEntry&) = default;
};

struct ResultDataSet {
    std::vector<TargetedRecord> records;  // canonically sorted
    std::vector<ErrorEntry> errors;       // sorted by dataset_index
    std::size_t fetched_ok = 0;
    std::size_t fetched_failed = 0;
    std::size_t records_extracted = 0;
};

/// Start/end of one worker group, in ms since the pipeline launch.
struct GroupTiming {
    std::size_t group_id = 0;
    Millis start{0};
    Millis end{0};
    Millis duration{0};  // always end - start

    static GroupTiming make(std::size_t group_id, Millis start, Millis end) {
        return {group_id, start, end, end - start};
    }
};

}  // namespace segcrawl
