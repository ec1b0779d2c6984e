#pragma once

#include <cstddef>
#include <stop_token>
#include <string>
#include <string_view>

#include "segcrawl/types.hpp"

namespace segcrawl {

struct FetchOutcome {
    FetchStatus status;
    std::string body;        // empty unless status is ok
    Millis elapsed{0};       // summed over all attempts
    std::size_t attempts = 1;
    bool truncated = false;  // body hit the size cap
};

/// Page retrieval. Implementations must be callable concurrently from every
/// fetch worker of every group; fetch() performs exactly one attempt.
class Fetcher {
public:
    virtual ~Fetcher() = default;
    virtual FetchOutcome fetch(std::string_view url, Millis timeout) const = 0;
};

/// Calls fetcher.fetch up to retries + 1 times, retrying only timeouts and
/// connection errors. Stops early if `stop` is requested between attempts.
FetchOutcome fetch_with_retries(const Fetcher& fetcher, std::string_view url, Millis timeout,
                                std::size_t retries, std::stop_token stop = {});

}  // namespace segcrawl
