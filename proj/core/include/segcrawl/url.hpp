#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace segcrawl {

struct ParsedUrl {
    std::string scheme;  // lower-cased
    std::string host;    // lower-cased, brackets stripped for IPv6 literals
    std::optional<std::uint16_t> port;
    std::string target;  // path + query, always starts with '/'

    std::uint16_t effective_port() const;
    /// "scheme://host[:port]" as accepted by HTTP client constructors.
    std::string origin() const;
};

/// Parses an absolute URL. Returns nullopt unless it has a scheme and a non-empty host.
std::optional<ParsedUrl> parse_url(std::string_view url);

inline bool is_absolute_url(std::string_view url) { return parse_url(url).has_value(); }

/// Resolves a Location header value against the URL it was received from.
std::optional<std::string> resolve_location(const ParsedUrl& base, std::string_view location);

/// localhost, 127.0.0.0/8 and ::1.
bool is_loopback_host(std::string_view host);

}  // namespace segcrawl
