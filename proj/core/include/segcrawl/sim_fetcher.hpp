#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "segcrawl/fetcher.hpp"

namespace segcrawl {

/// Default page served by the simulated fetcher. Placeholders:
///   {url}  the requested URL         {host} its host
///   {path} its path and query        {hash} stable_hash(url, seed) as 16 hex digits
///   {num}  stable_hash(url, seed) % 1000
inline constexpr std::string_view kDefaultBodyTemplate =
    "<html><head><title>{url}</title></head><body>"
    "<p class=\"price\">price: {num} USD</p>"
    "<p class=\"id\">id={hash}</p>"
    "<a href=\"{url}/next\">next</a>"
    "</body></html>";

struct SimProfile {
    Millis base_latency{40};
    Millis jitter{0};
    std::uint64_t seed = 0;
    double failure_rate = 0.0;
    std::string body_template{kDefaultBodyTemplate};

    /// Throws InvalidConfigError on negative latency/jitter or failure_rate outside [0, 1].
    void validate() const;
};

/// JSON object with keys base_latency_ms, jitter_ms, seed, failure_rate, body_template
/// (all optional; missing keys keep SimProfile defaults).
SimProfile parse_sim_profile(std::string_view json_text);
SimProfile load_sim_profile(const std::filesystem::path& path);

/// 64-bit FNV-1a over the 8 little-endian bytes of `seed` followed by the bytes of `text`.
/// Offset basis 0xcbf29ce484222325, prime 0x100000001b3.
std::uint64_t stable_hash(std::string_view text, std::uint64_t seed) noexcept;

/// base_latency + stable_hash(url, seed) % (jitter + 1)
Millis simulated_latency(std::string_view url, const SimProfile& profile) noexcept;

/// stable_hash(url, seed + 1) / 2^64 < failure_rate; rate >= 1 always fails, rate <= 0 never.
bool simulated_failure(std::string_view url, const SimProfile& profile) noexcept;

/// Body template with every placeholder substituted for `url`.
std::string render_body(std::string_view url, const SimProfile& profile);

/// In-process stand-in for the network. Outcomes are a pure function of
/// (url, profile, timeout); the latency is spent sleeping, not spinning.
class SimulatedFetcher final : public Fetcher {
public:
    explicit SimulatedFetcher(SimProfile profile);

    FetchOutcome fetch(std::string_view url, Millis timeout) const override;

    const SimProfile& profile() const noexcept { return profile_; }

private:
    SimProfile profile_;
};

/// fetch_simulated(url, profile): one attempt with an unbounded timeout.
FetchOutcome fetch_simulated(std::string_view url, const SimProfile& profile);

/// Deterministic synthetic URL list of `count` entries derived from `seed`.
std::vector<std::string> synthetic_urls(std::size_t count, std::uint64_t seed);

}  // namespace segcrawl
