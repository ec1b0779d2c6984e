#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <string>

#include "segcrawl/types.hpp"

namespace segcrawl {

struct FixturePage {
    int status = 200;
    std::string body;
    std::string content_type = "text/html; charset=utf-8";
    std::map<std::string, std::string> headers;  // e.g. {"Location", "/b"} for redirects
    Millis delay{0};                               // held before responding
};

struct FixtureCorpus {
    std::map<std::string, FixturePage> pages;  // keyed by request path, e.g. "/a"
    std::string host = "127.0.0.1";
    std::uint16_t port = 0;  // 0 picks an ephemeral port
    std::size_t worker_threads = 64;
};

/// Every regular file in `dir` served at "/<filename>" with status 200.
FixtureCorpus load_fixture_directory(const std::filesystem::path& dir);

/// Local HTTP/1.1 server for a fixed corpus. Unknown paths get 404.
/// The destructor calls shutdown(); shutdown() is idempotent and cuts short
/// any delayed responses still in flight.
class FixtureServer {
public:
    /// Binds and starts serving before returning. Throws StartupError on bind failure.
    explicit FixtureServer(FixtureCorpus corpus);
    ~FixtureServer();

    FixtureServer(const FixtureServer&) = delete;
    FixtureServer& operator=(const FixtureServer&) = delete;

    const std::string& host() const noexcept;
    std::uint16_t port() const noexcept;
    /// "http://host:port"
    std::string base_url() const;
    std::string url_for(std::string_view path) const;
    std::size_t requests_served() const noexcept;

    void shutdown();

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// serve_fixtures(corpus) -> running server handle.
inline std::unique_ptr<FixtureServer> serve_fixtures(FixtureCorpus corpus) {
    return std::make_unique<FixtureServer>(std::move(corpus));
}

}  // namespace segcrawl
