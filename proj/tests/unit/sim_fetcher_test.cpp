#include <gtest/gtest.h>

#include <chrono>

#include "test_support.hpp"

using namespace segcrawl;
using namespace std::chrono_literals;

// Reference values from an independent FNV-1a implementation.
TEST(StableHashTest, KnownVectors) {
    EXPECT_EQ(stable_hash("", 0), 0xa8c7f832281a39c5ULL);
    EXPECT_EQ(stable_hash("a", 0), 0xe604613a248ff1acULL);
    EXPECT_EQ(stable_hash("http://example.com/", 0), 0x90bf9d6e35daad91ULL);
    EXPECT_EQ(stable_hash("http://example.com/", 42), 0x6dcacb74ed69eb63ULL);
    EXPECT_EQ(stable_hash("http://example.com/", 43), 0x15d8660904f2fe20ULL);
}

TEST(SimulatedLatencyTest, JitterIsHashModulo) {
    SimProfile profile;
    profile.base_latency = 40ms;
    profile.jitter = 10ms;
    profile.seed = 42;
    EXPECT_EQ(simulated_latency("http://example.com/", profile), 47ms);
}

TEST(SimulatedLatencyTest, StaysWithinBounds) {
    SimProfile profile;
    profile.base_latency = 15ms;
    profile.jitter = 7ms;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        profile.seed = seed;
        for (const auto& url : synthetic_urls(50, seed)) {
            const auto latency = simulated_latency(url, profile);
            EXPECT_GE(latency, 15ms);
            EXPECT_LE(latency, 22ms);
        }
    }
}

TEST(SimulatedFailureTest, ThresholdOnSecondHash) {
    SimProfile profile;
    profile.seed = 42;
    // stable_hash(url, 43) / 2^64 = 0.0853...
    profile.failure_rate = 0.09;
    EXPECT_TRUE(simulated_failure("http://example.com/", profile));
    profile.failure_rate = 0.08;
    EXPECT_FALSE(simulated_failure("http://example.com/", profile));
    profile.failure_rate = 1.0;
    EXPECT_TRUE(simulated_failure("http://example.com/", profile));
    profile.failure_rate = 0.0;
    EXPECT_FALSE(simulated_failure("http://example.com/", profile));
}

TEST(SimulatedFailureTest, RateIsRoughlyHonoured) {
    SimProfile profile;
    profile.failure_rate = 0.3;
    std::size_t failed = 0;
    const auto urls = synthetic_urls(4000, 5);
    for (const auto& url : urls) failed += simulated_failure(url, profile);
    EXPECT_NEAR(static_cast<double>(failed) / urls.size(), 0.3, 0.03);
}

TEST(SimulatedFetcherTest, FixedLatencyOk) {
    SimProfile profile;
    profile.base_latency = 40ms;
    const auto start = std::chrono::steady_clock::now();
    const auto outcome = fetch_simulated("http://a.test/x", profile);
    const double took = segcrawl::testing::elapsed_s(start);
    EXPECT_TRUE(outcome.status.is_ok());
    EXPECT_FALSE(outcome.body.empty());
    EXPECT_GE(outcome.elapsed, 40ms);
    EXPECT_GE(took, 0.040);
    EXPECT_LT(took, 0.040 * 1.5);
}

TEST(SimulatedFetcherTest, DeterministicOutcomes) {
    SimProfile profile;
    profile.base_latency = 1ms;
    profile.jitter = 3ms;
    profile.seed = 99;
    profile.failure_rate = 0.5;
    for (const auto& url : synthetic_urls(40, 3)) {
        const auto a = fetch_simulated(url, profile);
        const auto b = fetch_simulated(url, profile);
        EXPECT_EQ(a.status, b.status);
        EXPECT_EQ(a.body, b.body);
    }
}

TEST(SimulatedFetcherTest, FailureRateOneFailsEverything) {
    SimProfile profile;
    profile.base_latency = 0ms;
    profile.failure_rate = 1.0;
    for (const auto& url : synthetic_urls(30, 1)) {
        const auto outcome = fetch_simulated(url, profile);
        EXPECT_EQ(outcome.status, FetchStatus::connection_error());
        EXPECT_TRUE(outcome.body.empty());
    }
}

TEST(SimulatedFetcherTest, LatencyBeyondTimeoutIsTimeout) {
    SimProfile profile;
    profile.base_latency = 200ms;
    SimulatedFetcher fetcher(profile);
    const auto outcome = fetcher.fetch("http://slow.test/", 20ms);
    EXPECT_EQ(outcome.status, FetchStatus::timeout());
    EXPECT_LT(outcome.elapsed, 150ms);
}

TEST(SimulatedFetcherTest, SleepDoesNotBurnCpu) {
    SimProfile profile;
    profile.base_latency = 100ms;
    const std::clock_t cpu_start = std::clock();
    fetch_simulated("http://idle.test/", profile);
    const double cpu_s = static_cast<double>(std::clock() - cpu_start) / CLOCKS_PER_SEC;
    EXPECT_LT(cpu_s, 0.03);
}

TEST(RenderBodyTest, SubstitutesPlaceholders) {
    SimProfile profile;
    profile.seed = 42;
    profile.body_template = "{url}|{host}|{path}|{hash}|{num}|{unknown}";
    EXPECT_EQ(render_body("http://example.com/", profile),
              "http://example.com/|example.com|/|6dcacb74ed69eb63|" +
                  std::to_string(0x6dcacb74ed69eb63ULL % 1000) + "|{unknown}");
}

TEST(SyntheticUrlsTest, DeterministicFromSeed) {
    const auto urls = synthetic_urls(3, 7);
    ASSERT_EQ(urls.size(), 3u);
    EXPECT_EQ(urls[0], "http://site6.sim.test/page/0?k=2bc5722166bf2c56");
    EXPECT_EQ(urls[1], "http://site9.sim.test/page/1?k=2bc5732166bf2e09");
    EXPECT_EQ(urls[2], "http://site0.sim.test/page/2?k=2bc5702166bf28f0");
    EXPECT_EQ(synthetic_urls(3, 7), urls);
    EXPECT_NE(synthetic_urls(3, 8), urls);
}

TEST(SimProfileTest, ParsesConfigKeys) {
    const auto profile = parse_sim_profile(
        R"({"base_latency_ms": 25, "jitter_ms": 5, "seed": 11, "failure_rate": 0.25, "body_template": "<b>{num}</b>"})");
    EXPECT_EQ(profile.base_latency, 25ms);
    EXPECT_EQ(profile.jitter, 5ms);
    EXPECT_EQ(profile.seed, 11u);
    EXPECT_DOUBLE_EQ(profile.failure_rate, 0.25);
    EXPECT_EQ(profile.body_template, "<b>{num}</b>");
}

TEST(SimProfileTest, RejectsInvalidValues) {
    EXPECT_THROW(parse_sim_profile(R"({"failure_rate": 1.5})"), InvalidConfigError);
    EXPECT_THROW(parse_sim_profile(R"({"base_latency_ms": -1})"), InvalidConfigError);
    EXPECT_THROW(parse_sim_profile(R"({"jitter_ms": -3})"), InvalidConfigError);
    EXPECT_THROW(parse_sim_profile("[1,2]"), InvalidConfigError);
    EXPECT_THROW(parse_sim_profile("{not json"), InvalidConfigError);
}

TEST(FetchWithRetriesTest, RetriesOnlyTransportFailures) {
    segcrawl::testing::ScriptedFetcher fetcher;
    fetcher.failing = {"http://bad.test/"};
    auto outcome = fetch_with_retries(fetcher, "http://bad.test/", 1s, 2);
    EXPECT_EQ(outcome.status, FetchStatus::connection_error());
    EXPECT_EQ(outcome.attempts, 3u);
    EXPECT_EQ(fetcher.calls().at("http://bad.test/"), 3);

    outcome = fetch_with_retries(fetcher, "http://good.test/", 1s, 2);
    EXPECT_TRUE(outcome.status.is_ok());
    EXPECT_EQ(outcome.attempts, 1u);
}
