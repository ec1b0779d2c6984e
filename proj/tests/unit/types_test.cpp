#include <gtest/gtest.h>

#include <sstream>

#include "test_support.hpp"

using namespace segcrawl;

TEST(UrlTest, ParsesSchemeHostPortAndTarget) {
    auto url = parse_url("HTTP://Example.COM:8080/a/b?q=1#frag");
    ASSERT_TRUE(url);
    EXPECT_EQ(url->scheme, "http");
    EXPECT_EQ(url->host, "example.com");
    EXPECT_EQ(url->port, 8080);
    EXPECT_EQ(url->target, "/a/b?q=1");
    EXPECT_EQ(url->origin(), "http://example.com:8080");

    auto bare = parse_url("https://example.com");
    ASSERT_TRUE(bare);
    EXPECT_EQ(bare->target, "/");
    EXPECT_EQ(bare->effective_port(), 443);

    auto v6 = parse_url("http://[::1]:9000/x");
    ASSERT_TRUE(v6);
    EXPECT_EQ(v6->host, "::1");
    EXPECT_EQ(v6->origin(), "http://[::1]:9000");
}

TEST(UrlTest, RejectsRelativeAndHostless) {
    EXPECT_FALSE(parse_url("/just/a/path"));
    EXPECT_FALSE(parse_url("example.com/page"));
    EXPECT_FALSE(parse_url("http:///nohost"));
    EXPECT_FALSE(parse_url("1http://bad.scheme/"));
    EXPECT_FALSE(parse_url("http://host:99999/"));
}

TEST(UrlTest, ResolvesLocations) {
    const auto base = *parse_url("http://h.test:81/dir/page?x=1");
    EXPECT_EQ(resolve_location(base, "/abs"), "http://h.test:81/abs");
    EXPECT_EQ(resolve_location(base, "rel"), "http://h.test:81/dir/rel");
    EXPECT_EQ(resolve_location(base, "https://other.test/"), "https://other.test/");
    EXPECT_EQ(resolve_location(base, "//cdn.test/x"), "http://cdn.test/x");
    EXPECT_FALSE(resolve_location(base, ""));
}

TEST(UrlTest, LoopbackHosts) {
    EXPECT_TRUE(is_loopback_host("localhost"));
    EXPECT_TRUE(is_loopback_host("127.0.0.1"));
    EXPECT_TRUE(is_loopback_host("::1"));
    EXPECT_FALSE(is_loopback_host("example.com"));
    EXPECT_FALSE(is_loopback_host("10.0.0.1"));
}

TEST(UrlDatasetTest, SkipsBlankLinesAndComments) {
    std::istringstream in("# header\nhttp://a.test/1\n\n   \n  http://b.test/2  \n#http://skip.test\nhttp://a.test/1\n");
    const auto dataset = UrlDataset::parse(in);
    ASSERT_EQ(dataset.size(), 3u);
    EXPECT_EQ(dataset[0], (UrlEntry{0, "http://a.test/1"}));
    EXPECT_EQ(dataset[1], (UrlEntry{1, "http://b.test/2"}));
    // Duplicates are kept, each with its own index.
    EXPECT_EQ(dataset[2], (UrlEntry{2, "http://a.test/1"}));
}

TEST(UrlDatasetTest, ReportsLineOfInvalidUrl) {
    std::istringstream in("http://ok.test/\n\nnot-a-url\n");
    try {
        UrlDataset::parse(in);
        FAIL() << "expected DatasetError";
    } catch (const DatasetError& e) {
        EXPECT_EQ(e.line(), 3u);
    }
    EXPECT_THROW(UrlDataset::from_urls({"relative/path"}), DatasetError);
    EXPECT_THROW(UrlDataset::load("/nonexistent/urls.txt"), DatasetError);
}

TEST(RunConfigTest, ValidatesAndDerivesDefaults) {
    RunConfig config{10, 5, 5};
    EXPECT_NO_THROW(config.validate());
    EXPECT_EQ(config.effective_queue_capacity(), 20u);
    EXPECT_EQ(config.label(), "n10m5k5");

    for (auto bad : {RunConfig{0, 1, 1}, RunConfig{1, 0, 1}, RunConfig{1, 1, 0}}) {
        EXPECT_THROW(bad.validate(), InvalidConfigError);
    }
    config.queue_capacity = 0;
    EXPECT_THROW(config.validate(), InvalidConfigError);
    config.queue_capacity = 3;
    EXPECT_EQ(config.effective_queue_capacity(), 3u);
}

TEST(FetchStatusTest, TextAndRetryability) {
    EXPECT_EQ(FetchStatus::ok().to_string(), "ok");
    EXPECT_EQ(FetchStatus::http_error(404).to_string(), "http_error(404)");
    EXPECT_EQ(FetchStatus::timeout().to_string(), "timeout");
    EXPECT_EQ(FetchStatus::connection_error().to_string(), "connection_error");
    EXPECT_TRUE(FetchStatus::timeout().is_retryable());
    EXPECT_TRUE(FetchStatus::connection_error().is_retryable());
    EXPECT_FALSE(FetchStatus::http_error(500).is_retryable());
    EXPECT_FALSE(FetchStatus::ok().is_retryable());
}

TEST(GroupTimingTest, DurationIsEndMinusStart) {
    const auto t = GroupTiming::make(3, Millis{1000}, Millis{3500});
    EXPECT_EQ(t.duration, Millis{2500});
}
