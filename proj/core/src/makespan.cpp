#include "segcrawl/makespan.hpp"

#include <algorithm>

#include "segcrawl/errors.hpp"

namespace segcrawl {
namespace {

struct FetchServer {
    enum class State { idle, busy, blocked } state = State::idle;
    Millis until{0};
    bool enqueue = false;
};

struct ParseServer {
    bool busy = false;
    Millis until{0};
};

}  // namespace

Millis simulate_group(std::span<const OracleJob> jobs, const OracleGroupShape& shape) {
    if (shape.m == 0 || shape.k == 0 || shape.queue_capacity == 0) {
        throw InvalidConfigError("simulate_group: m, k and queue_capacity must be >= 1");
    }
    std::vector<FetchServer> fetchers(shape.m);
    std::vector<ParseServer> parsers(shape.k);
    std::size_t next_job = 0;
    std::size_t buffered = 0;
    Millis now{0};

    for (;;) {
        // Settle every transition possible at `now` (zero-length work included).
        for (bool changed = true; changed;) {
            changed = false;
            for (auto& f : fetchers) {
                if (f.state == FetchServer::State::busy && f.until <= now) {
                    f.state = f.enqueue ? FetchServer::State::blocked : FetchServer::State::idle;
                    changed = true;
                }
            }
            for (auto& p : parsers) {
                if (p.busy && p.until <= now) {
                    p.busy = false;
                    changed = true;
                }
            }
            for (auto& f : fetchers) {
                if (f.state == FetchServer::State::blocked && buffered < shape.queue_capacity) {
                    ++buffered;
                    f.state = FetchServer::State::idle;
                    changed = true;
                }
            }
            for (auto& p : parsers) {
                if (!p.busy && buffered > 0) {
                    --buffered;
                    p.busy = true;
                    p.until = now + shape.parse_cost;
                    changed = true;
                }
            }
            for (auto& f : fetchers) {
                if (f.state == FetchServer::State::idle && next_job < jobs.size()) {
                    const OracleJob& job = jobs[next_job++];
                    f.state = FetchServer::State::busy;
                    f.until = now + job.latency;
                    f.enqueue = job.enqueued;
                    changed = true;
                }
            }
        }

        // Advance to the next completion.
        std::optional<Millis> next;
        for (const auto& f : fetchers) {
            if (f.state == FetchServer::State::busy) next = next ? std::min(*next, f.until) : f.until;
        }
        for (const auto& p : parsers) {
            if (p.busy) next = next ? std::min(*next, p.until) : p.until;
        }
        if (!next) {
            // Nothing in flight: either finished, or blocked fetchers with a full
            // buffer and idle parsers, which the settle loop rules out.
            return now;
        }
        now = *next;
    }
}

Millis makespan_oracle(std::span<const std::size_t> segment_sizes, std::size_t m, std::size_t k,
                       const SimProfile& latency, Millis parse_cost,
                       std::optional<std::size_t> queue_capacity) {
    const OracleGroupShape shape{m, k, queue_capacity.value_or(2 * (m + k)), parse_cost};
    Millis worst{0};
    for (const std::size_t size : segment_sizes) {
        const std::vector<OracleJob> jobs(size, OracleJob{latency.base_latency, true});
        worst = std::max(worst, simulate_group(jobs, shape));
    }
    return worst;
}

Millis makespan_oracle(std::span<const Segment> segments, const RunConfig& config,
                       const SimProfile& latency, Millis parse_cost) {
    config.validate();
    const OracleGroupShape shape{config.m, config.k, config.effective_queue_capacity(), parse_cost};
    Millis worst{0};
    std::vector<OracleJob> jobs;
    for (const auto& segment : segments) {
        jobs.clear();
        for (const auto& entry : segment.entries) {
            const Millis modeled = simulated_latency(entry.url, latency);
            const bool timed_out = modeled > config.fetch_timeout;
            const Millis per_attempt = timed_out ? config.fetch_timeout : modeled;
            const bool ok = !timed_out && !simulated_failure(entry.url, latency);
            const std::size_t attempts = ok ? 1 : config.retries + 1;
            jobs.push_back({per_attempt * static_cast<Millis::rep>(attempts), ok});
        }
        worst = std::max(worst, simulate_group(jobs, shape));
    }
    return worst;
}

}  // namespace segcrawl
