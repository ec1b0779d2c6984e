#pragma once

#include <cstddef>
#include <string>

#include "segcrawl/fetcher.hpp"

namespace segcrawl {

struct HttpFetcherOptions {
    std::size_t max_redirects = 5;
    std::size_t max_body_bytes = 4 * 1024 * 1024;
    std::string user_agent = "segcrawl/0.3";
};

/// GET over HTTP/1.1 (HTTPS when built with OpenSSL). Stateless: every call
/// opens its own connection, so one instance can be shared by all workers.
///
/// Redirects (301/302/303/307/308) are followed up to max_redirects; past
/// that the last 3xx is reported as http_error. Bodies larger than
/// max_body_bytes are truncated and flagged. `timeout` bounds connect and
/// each socket read/write of the attempt.
class HttpFetcher final : public Fetcher {
public:
    explicit HttpFetcher(HttpFetcherOptions options = {});

    FetchOutcome fetch(std::string_view url, Millis timeout) const override;

private:
    HttpFetcherOptions options_;
};

/// Live GET with the retry policy of fetch_with_retries.
FetchOutcome fetch_live(std::string_view url, Millis timeout, std::size_t retries);

}  // namespace segcrawl
