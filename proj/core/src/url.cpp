#include "segcrawl/url.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

namespace segcrawl {
namespace {

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

bool valid_scheme(std::string_view s) {
    if (s.empty() || !std::isalpha(static_cast<unsigned char>(s.front()))) return false;
    return std::all_of(s.begin(), s.end(), [](unsigned char c) {
        return std::isalnum(c) || c == '+' || c == '-' || c == '.';
    });
}

}  // namespace

std::uint16_t ParsedUrl::effective_port() const {
    if (port) return *port;
    return scheme == "https" ? 443 : 80;
}

std::string ParsedUrl::origin() const {
    std::string out = scheme + "://";
    out += host.find(':') != std::string::npos ? "[" + host + "]" : host;
    if (port) out += ":" + std::to_string(*port);
    return out;
}

std::optional<ParsedUrl> parse_url(std::string_view url) {
    const auto sep = url.find("://");
    if (sep == std::string_view::npos) return std::nullopt;
    const auto scheme = url.substr(0, sep);
    if (!valid_scheme(scheme)) return std::nullopt;

    auto rest = url.substr(sep + 3);
    const auto authority_end = rest.find_first_of("/?#");
    auto authority = rest.substr(0, authority_end);
    std::string_view target =
        authority_end == std::string_view::npos ? std::string_view{} : rest.substr(authority_end);

    if (const auto at = authority.rfind('@'); at != std::string_view::npos) {
        authority = authority.substr(at + 1);
    }
    if (authority.find_first_of(" \t\r\n") != std::string_view::npos) return std::nullopt;

    ParsedUrl out;
    out.scheme = lower(scheme);
    std::string_view host;
    std::string_view port_text;
    if (!authority.empty() && authority.front() == '[') {
        const auto close = authority.find(']');
        if (close == std::string_view::npos) return std::nullopt;
        host = authority.substr(1, close - 1);
        auto after = authority.substr(close + 1);
        if (!after.empty()) {
            if (after.front() != ':') return std::nullopt;
            port_text = after.substr(1);
        }
    } else {
        const auto colon = authority.rfind(':');
        host = authority.substr(0, colon);
        if (colon != std::string_view::npos) port_text = authority.substr(colon + 1);
    }
    if (host.empty()) return std::nullopt;
    out.host = lower(host);

    if (!port_text.empty()) {
        unsigned value = 0;
        auto [ptr, ec] = std::from_chars(port_text.data(), port_text.data() + port_text.size(), value);
        if (ec != std::errc{} || ptr != port_text.data() + port_text.size() || value == 0 ||
            value > 65535) {
            return std::nullopt;
        }
        out.port = static_cast<std::uint16_t>(value);
    }

    if (const auto hash = target.find('#'); hash != std::string_view::npos) {
        target = target.substr(0, hash);
    }
    out.target = std::string(target);
    if (out.target.empty() || out.target.front() != '/') out.target.insert(0, "/");
    return out;
}

std::optional<std::string> resolve_location(const ParsedUrl& base, std::string_view location) {
    if (location.empty()) return std::nullopt;
    if (parse_url(location)) return std::string(location);
    if (location.starts_with("//")) return base.scheme + ":" + std::string(location);
    if (location.front() == '/') return base.origin() + std::string(location);

    // Relative path: replace the last path segment of the base.
    std::string path = base.target.substr(0, base.target.find('?'));
    path.erase(path.rfind('/') + 1);
    return base.origin() + path + std::string(location);
}

bool is_loopback_host(std::string_view host) {
    if (host == "localhost" || host == "::1") return true;
    return host.starts_with("127.");
}

}  // namespace segcrawl
