#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "segcrawl/sim_fetcher.hpp"
#include "segcrawl/types.hpp"

namespace segcrawl {

/// One URL as seen by the event simulation.
struct OracleJob {
    Millis latency{0};     // total fetch time, retries included
    bool enqueued = true;  // false for failed fetches, which never reach the queue
};

struct OracleGroupShape {
    std::size_t m = 1;
    std::size_t k = 1;
    std::size_t queue_capacity = 4;
    Millis parse_cost{0};
};

/// Discrete-event simulation of one group. Fetch servers take jobs in order
/// from a shared cursor; a finished fetch waits (holding its server) until the
/// bounded buffer has room; parse servers take buffered documents FIFO at
/// parse_cost each. Returns the time the last server goes idle.
Millis simulate_group(std::span<const OracleJob> jobs, const OracleGroupShape& shape);

/// Predicted pipeline wall time: groups run in parallel, so the max over
/// groups. Every job is modeled at latency.base_latency (jitter and failures
/// need URLs; use the Segment overload for those). queue_capacity defaults to
/// 2 * (m + k).
Millis makespan_oracle(std::span<const std::size_t> segment_sizes, std::size_t m, std::size_t k,
                       const SimProfile& latency, Millis parse_cost,
                       std::optional<std::size_t> queue_capacity = std::nullopt);

/// Same, with exact per-URL latency and failure modeling for a simulated
/// fetcher, including the retry policy in `config`.
Millis makespan_oracle(std::span<const Segment> segments, const RunConfig& config,
                       const SimProfile& latency, Millis parse_cost);

}  // namespace segcrawl
