#include "segcrawl/fetcher.hpp"

namespace segcrawl {

FetchOutcome fetch_with_retries(const Fetcher& fetcher, std::string_view url, Millis timeout,
                                std::size_t retries, std::stop_token stop) {
    FetchOutcome outcome = fetcher.fetch(url, timeout);
    Millis total = outcome.elapsed;
    std::size_t attempts = 1;
    while (outcome.status.is_retryable() && attempts <= retries && !stop.stop_requested()) {
        outcome = fetcher.fetch(url, timeout);
        total += outcome.elapsed;
        ++attempts;
    }
    outcome.elapsed = total;
    outcome.attempts = attempts;
    return outcome;
}

}  // namespace segcrawl
