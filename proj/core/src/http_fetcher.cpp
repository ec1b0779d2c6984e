#include "segcrawl/http_fetcher.hpp"

#include <chrono>

#include "httplib.h"
#include "segcrawl/url.hpp"

namespace segcrawl {
namespace {

bool is_redirect(int status) {
    return status == 301 || status == 302 || status == 303 || status == 307 || status == 308;
}

FetchStatus classify(httplib::Error error, Millis elapsed, Millis timeout) {
    switch (error) {
        case httplib::Error::ConnectionTimeout:
            return FetchStatus::timeout();
        case httplib::Error::Read:
        case httplib::Error::Write:
            // httplib reports socket timeouts as plain read/write failures.
            return elapsed >= timeout ? FetchStatus::timeout() : FetchStatus::connection_error();
        default:
            return FetchStatus::connection_error();
    }
}

}  // namespace

HttpFetcher::HttpFetcher(HttpFetcherOptions options) : options_(std::move(options)) {}

FetchOutcome HttpFetcher::fetch(std::string_view url, Millis timeout) const {
    using clock = std::chrono::steady_clock;
    const auto started = clock::now();
    auto elapsed = [&] { return std::chrono::duration_cast<Millis>(clock::now() - started); };

    FetchOutcome outcome;
    std::string current(url);
    for (std::size_t hop = 0;; ++hop) {
        const auto parsed = parse_url(current);
        if (!parsed || (parsed->scheme != "http" && parsed->scheme != "https")) {
            outcome.status = FetchStatus::connection_error();
            break;
        }

        httplib::Client client(parsed->origin());
        client.set_connection_timeout(timeout);
        client.set_read_timeout(timeout);
        client.set_write_timeout(timeout);
        client.set_follow_location(false);
        client.set_keep_alive(false);

        int status = 0;
        std::string location;
        std::string body;
        bool truncated = false;
        const httplib::Headers headers{{"User-Agent", options_.user_agent}};
        auto result = client.Get(
            parsed->target, headers,
            [&](const httplib::Response& response) {
                status = response.status;
                location = response.get_header_value("Location");
                return true;
            },
            [&](const char* data, std::size_t length) {
                const std::size_t room = options_.max_body_bytes - body.size();
                if (length > room) {
                    body.append(data, room);
                    truncated = true;
                    return false;
                }
                body.append(data, length);
                return true;
            });

        if (!result && !(truncated && result.error() == httplib::Error::Canceled)) {
            outcome.status = classify(result.error(), elapsed(), timeout);
            break;
        }

        if (is_redirect(status) && hop < options_.max_redirects) {
            if (auto next = resolve_location(*parsed, location)) {
                current = std::move(*next);
                continue;
            }
        }
        if (status >= 200 && status < 300) {
            outcome.status = FetchStatus::ok();
            outcome.body = std::move(body);
            outcome.truncated = truncated;
        } else {
            outcome.status = FetchStatus::http_error(status);
        }
        break;
    }
    outcome.elapsed = elapsed();
    return outcome;
}

FetchOutcome fetch_live(std::string_view url, Millis timeout, std::size_t retries) {
    return fetch_with_retries(HttpFetcher{}, url, timeout, retries);
}

}  // namespace segcrawl
