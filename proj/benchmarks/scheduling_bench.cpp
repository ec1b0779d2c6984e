#include <benchmark/benchmark.h>

#include <chrono>

#include "segcrawl/makespan.hpp"
#include "segcrawl/pipeline.hpp"
#include "segcrawl/sim_fetcher.hpp"

namespace {

using namespace std::chrono_literals;

void BM_StableHash(benchmark::State& state) {
    const std::string url = "http://site3.sim.test/page/123?k=2bc5722166bf2c56";
    std::uint64_t seed = 0;
    for (auto _ : state) benchmark::DoNotOptimize(segcrawl::stable_hash(url, seed++));
}
BENCHMARK(BM_StableHash);

void BM_Partition(benchmark::State& state) {
    const auto dataset = segcrawl::UrlDataset::from_urls(segcrawl::synthetic_urls(10000, 1));
    for (auto _ : state) benchmark::DoNotOptimize(segcrawl::partition(dataset, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_Partition)->Arg(1)->Arg(10)->Arg(100);

void BM_MakespanOracle(benchmark::State& state) {
    segcrawl::SimProfile profile;
    profile.jitter = 20ms;
    profile.failure_rate = 0.1;
    segcrawl::RunConfig config;
    config.n = 10;
    config.m = static_cast<std::size_t>(state.range(1));
    config.k = config.m;
    const auto dataset =
        segcrawl::UrlDataset::from_urls(segcrawl::synthetic_urls(static_cast<std::size_t>(state.range(0)), 1));
    const auto segments = segcrawl::partition(dataset, config.n);
    for (auto _ : state) benchmark::DoNotOptimize(segcrawl::makespan_oracle(segments, config, profile, 1ms));
}
BENCHMARK(BM_MakespanOracle)->Args({500, 5})->Args({5000, 10});

// full pipeline with zero latency: scheduling and extraction overhead only
void BM_PipelineZeroLatency(benchmark::State& state) {
    segcrawl::SimProfile profile;
    profile.base_latency = 0ms;
    const segcrawl::SimulatedFetcher fetcher(profile);
    const auto rules = segcrawl::RuleSet::from_specs({{"price", R"(price: (\d+))", 1, std::nullopt}});
    const auto dataset = segcrawl::UrlDataset::from_urls(segcrawl::synthetic_urls(500, 1));
    segcrawl::RunConfig config;
    config.n = static_cast<std::size_t>(state.range(0));
    config.m = static_cast<std::size_t>(state.range(1));
    config.k = static_cast<std::size_t>(state.range(1));
    for (auto _ : state) benchmark::DoNotOptimize(segcrawl::run_pipeline(dataset, config, rules, fetcher));
    state.SetItemsProcessed(state.iterations() * 500);
}
BENCHMARK(BM_PipelineZeroLatency)->Args({1, 1})->Args({10, 5})->Args({10, 10})->UseRealTime();

}  // namespace
