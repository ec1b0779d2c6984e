#include <gtest/gtest.h>

#include <atomic>
#include <chrono>
#include <thread>

#include "test_support.hpp"

using namespace segcrawl;
using namespace std::chrono_literals;

namespace {

FixtureCorpus basic_corpus() {
    FixtureCorpus corpus;
    corpus.pages["/a"] = {200, "x"};
    corpus.pages["/missing"] = {404, "gone"};
    corpus.pages["/big"] = {200, std::string(1000, 'b')};
    corpus.pages["/r1"] = {302, "", "text/plain", {{"Location", "/r2"}}};
    corpus.pages["/r2"] = {301, "", "text/plain", {{"Location", "a"}}};
    corpus.pages["/loop"] = {302, "", "text/plain", {{"Location", "/loop"}}};
    corpus.pages["/slow"] = {200, "late", "text/plain", {}, 2000ms};
    return corpus;
}

}  // namespace

TEST(FixtureServerTest, ServesConfiguredPage) {
    FixtureServer server(basic_corpus());
    const auto outcome = HttpFetcher{}.fetch(server.url_for("/a"), 2s);
    EXPECT_EQ(outcome.status, FetchStatus::ok());
    EXPECT_EQ(outcome.body, "x");
    EXPECT_GE(outcome.elapsed.count(), 0);
}

TEST(FixtureServerTest, UnknownPathIs404) {
    FixtureServer server(basic_corpus());
    const auto outcome = HttpFetcher{}.fetch(server.url_for("/nope"), 2s);
    EXPECT_EQ(outcome.status, FetchStatus::http_error(404));
    EXPECT_TRUE(outcome.body.empty());
}

TEST(FixtureServerTest, HandlesFiftyConcurrentRequests) {
    FixtureServer server(basic_corpus());
    const HttpFetcher fetcher;
    std::atomic<int> ok{0};
    {
        std::vector<std::jthread> clients;
        for (int i = 0; i < 50; ++i) {
            clients.emplace_back([&] {
                if (fetcher.fetch(server.url_for("/a"), 5s).status.is_ok()) ++ok;
            });
        }
    }
    EXPECT_EQ(ok.load(), 50);
    EXPECT_GE(server.requests_served(), 50u);
}

TEST(FixtureServerTest, ShutdownIsIdempotentAndCutsDelays) {
    auto server = serve_fixtures(basic_corpus());
    const std::string url = server->url_for("/slow");
    std::jthread client([&] { HttpFetcher{}.fetch(url, 5s); });
    std::this_thread::sleep_for(100ms);
    const auto start = std::chrono::steady_clock::now();
    server->shutdown();
    server->shutdown();
    EXPECT_LT(segcrawl::testing::elapsed_s(start), 1.5);
}

TEST(FixtureServerTest, BindFailureIsStartupError) {
    FixtureServer first(basic_corpus());
    FixtureCorpus clash = basic_corpus();
    clash.port = first.port();
    EXPECT_THROW(FixtureServer{clash}, StartupError);
}

TEST(FixtureServerTest, LoadsDirectory) {
    segcrawl::testing::TempDir dir;
    segcrawl::testing::write_file(dir / "one.html", "<p>1</p>");
    segcrawl::testing::write_file(dir / "two.txt", "2");
    const auto corpus = load_fixture_directory(dir.path());
    ASSERT_EQ(corpus.pages.size(), 2u);
    EXPECT_EQ(corpus.pages.at("/one.html").body, "<p>1</p>");
    EXPECT_EQ(corpus.pages.at("/two.txt").status, 200);
    EXPECT_THROW(load_fixture_directory(dir / "absent"), StartupError);
}

TEST(HttpFetcherTest, FollowsRedirects) {
    FixtureServer server(basic_corpus());
    const auto outcome = HttpFetcher{}.fetch(server.url_for("/r1"), 2s);
    EXPECT_EQ(outcome.status, FetchStatus::ok());
    EXPECT_EQ(outcome.body, "x");
}

TEST(HttpFetcherTest, RedirectLimit) {
    FixtureServer server(basic_corpus());
    const auto outcome = HttpFetcher{}.fetch(server.url_for("/loop"), 2s);
    EXPECT_EQ(outcome.status, FetchStatus::http_error(302));
    // Initial request plus five redirects.
    EXPECT_EQ(server.requests_served(), 6u);
}

TEST(HttpFetcherTest, TruncatesOversizedBodies) {
    FixtureServer server(basic_corpus());
    HttpFetcherOptions options;
    options.max_body_bytes = 10;
    const auto outcome = HttpFetcher(options).fetch(server.url_for("/big"), 2s);
    EXPECT_EQ(outcome.status, FetchStatus::ok());
    EXPECT_EQ(outcome.body, std::string(10, 'b'));
    EXPECT_TRUE(outcome.truncated);
}

TEST(HttpFetcherTest, SlowPageTimesOutAndRetries) {
    FixtureServer server(basic_corpus());
    const auto start = std::chrono::steady_clock::now();
    const auto outcome = fetch_live(server.url_for("/slow"), 100ms, 1);
    const double took = segcrawl::testing::elapsed_s(start);
    EXPECT_EQ(outcome.status, FetchStatus::timeout());
    EXPECT_EQ(outcome.attempts, 2u);
    // (retries + 1) * timeout, plus connection slack.
    EXPECT_LT(took, 0.2 + 0.5);
}

TEST(HttpFetcherTest, UnroutableAddressFailsAfterTwoAttempts) {
    const auto start = std::chrono::steady_clock::now();
    const auto outcome = fetch_live("http://10.255.255.1:81/", 100ms, 1);
    const double took = segcrawl::testing::elapsed_s(start);
    EXPECT_TRUE(outcome.status == FetchStatus::timeout() ||
                outcome.status == FetchStatus::connection_error())
        << outcome.status.to_string();
    EXPECT_EQ(outcome.attempts, 2u);
    EXPECT_LT(took, 0.2 + 0.5);
}

TEST(HttpFetcherTest, RefusedConnectionIsConnectionError) {
    std::uint16_t port = 0;
    {
        FixtureServer server(basic_corpus());
        port = server.port();
    }
    const auto outcome = fetch_live("http://127.0.0.1:" + std::to_string(port) + "/a", 500ms, 0);
    EXPECT_EQ(outcome.status, FetchStatus::connection_error());
    EXPECT_EQ(outcome.attempts, 1u);
}

TEST(HttpFetcherTest, NonHttpSchemeIsConnectionError) {
    EXPECT_EQ(HttpFetcher{}.fetch("ftp://host.test/file", 100ms).status, FetchStatus::connection_error());
}
