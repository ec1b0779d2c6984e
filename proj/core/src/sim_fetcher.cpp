#include "segcrawl/sim_fetcher.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "segcrawl/errors.hpp"
#include "segcrawl/url.hpp"

namespace segcrawl {

using json = nlohmann::json;

void SimProfile::validate() const {
    if (base_latency.count() < 0) throw InvalidConfigError("base_latency must be >= 0");
    if (jitter.count() < 0) throw InvalidConfigError("jitter must be >= 0");
    if (!(failure_rate >= 0.0 && failure_rate <= 1.0)) {
        throw InvalidConfigError("failure_rate must be within [0, 1]");
    }
}

SimProfile parse_sim_profile(std::string_view json_text) {
    SimProfile profile;
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw InvalidConfigError(std::string("sim profile: ") + e.what());
    }
    if (!doc.is_object()) throw InvalidConfigError("sim profile must be a JSON object");
    try {
        if (doc.contains("base_latency_ms")) {
            profile.base_latency = Millis{doc.at("base_latency_ms").get<std::int64_t>()};
        }
        if (doc.contains("jitter_ms")) profile.jitter = Millis{doc.at("jitter_ms").get<std::int64_t>()};
        if (doc.contains("seed")) profile.seed = doc.at("seed").get<std::uint64_t>();
        if (doc.contains("failure_rate")) profile.failure_rate = doc.at("failure_rate").get<double>();
        if (doc.contains("body_template")) {
            profile.body_template = doc.at("body_template").get<std::string>();
        }
    } catch (const json::exception& e) {
        throw InvalidConfigError(std::string("sim profile: ") + e.what());
    }
    profile.validate();
    return profile;
}

SimProfile load_sim_profile(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InvalidConfigError("cannot open sim profile " + path.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_sim_profile(buffer.str());
}

std::uint64_t stable_hash(std::string_view text, std::uint64_t seed) noexcept {
    constexpr std::uint64_t kOffset = 0xcbf29ce484222325ULL;
    constexpr std::uint64_t kPrime = 0x100000001b3ULL;
    std::uint64_t h = kOffset;
    for (int i = 0; i < 8; ++i) {
        h ^= (seed >> (8 * i)) & 0xffU;
        h *= kPrime;
    }
    for (unsigned char c : text) {
        h ^= c;
        h *= kPrime;
    }
    return h;
}

Millis simulated_latency(std::string_view url, const SimProfile& profile) noexcept {
    const auto span = static_cast<std::uint64_t>(profile.jitter.count()) + 1;
    return profile.base_latency + Millis{static_cast<Millis::rep>(stable_hash(url, profile.seed) % span)};
}

bool simulated_failure(std::string_view url, const SimProfile& profile) noexcept {
    if (profile.failure_rate >= 1.0) return true;
    if (profile.failure_rate <= 0.0) return false;
    const double unit = std::ldexp(static_cast<double>(stable_hash(url, profile.seed + 1)), -64);
    return unit < profile.failure_rate;
}

std::string render_body(std::string_view url, const SimProfile& profile) {
    const auto h = stable_hash(url, profile.seed);
    const auto parsed = parse_url(url);
    char hex[17];
    std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(h));

    std::string out;
    out.reserve(profile.body_template.size() + 4 * url.size());
    const std::string_view tpl = profile.body_template;
    std::size_t pos = 0;
    while (pos < tpl.size()) {
        const auto open = tpl.find('{', pos);
        if (open == std::string_view::npos) {
            out.append(tpl.substr(pos));
            break;
        }
        out.append(tpl.substr(pos, open - pos));
        const auto close = tpl.find('}', open);
        if (close == std::string_view::npos) {
            out.append(tpl.substr(open));
            break;
        }
        const auto key = tpl.substr(open + 1, close - open - 1);
        if (key == "url") {
            out.append(url);
        } else if (key == "host") {
            out.append(parsed ? parsed->host : std::string{});
        } else if (key == "path") {
            out.append(parsed ? parsed->target : std::string{});
        } else if (key == "hash") {
            out.append(hex);
        } else if (key == "num") {
            out.append(std::to_string(h % 1000));
        } else {
            // Unknown placeholder: keep it verbatim.
            out.append(tpl.substr(open, close - open + 1));
        }
        pos = close + 1;
    }
    return out;
}

SimulatedFetcher::SimulatedFetcher(SimProfile profile) : profile_(std::move(profile)) {
    profile_.validate();
}

FetchOutcome SimulatedFetcher::fetch(std::string_view url, Millis timeout) const {
    const Millis latency = simulated_latency(url, profile_);
    const auto started = std::chrono::steady_clock::now();
    FetchOutcome outcome;
    if (latency > timeout) {
        std::this_thread::sleep_for(timeout);
        outcome.status = FetchStatus::timeout();
        outcome.elapsed = std::chrono::duration_cast<Millis>(std::chrono::steady_clock::now() - started);
        return outcome;
    }
    std::this_thread::sleep_for(latency);
    outcome.elapsed = std::chrono::duration_cast<Millis>(std::chrono::steady_clock::now() - started);
    if (simulated_failure(url, profile_)) {
        outcome.status = FetchStatus::connection_error();
    } else {
        outcome.body = render_body(url, profile_);
    }
    return outcome;
}

FetchOutcome fetch_simulated(std::string_view url, const SimProfile& profile) {
    return SimulatedFetcher(profile).fetch(url, Millis::max());
}

std::vector<std::string> synthetic_urls(std::size_t count, std::uint64_t seed) {
    std::vector<std::string> urls;
    urls.reserve(count);
    char hex[17];
    for (std::size_t i = 0; i < count; ++i) {
        const auto h = stable_hash(std::to_string(i), seed);
        std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(h));
        urls.push_back("http://site" + std::to_string(h % 16) + ".sim.test/page/" +
                       std::to_string(i) + "?k=" + hex);
    }
    return urls;
}

}  // namespace segcrawl
