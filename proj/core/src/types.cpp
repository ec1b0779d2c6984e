#include "segcrawl/types.hpp"

#include <fstream>
#include <istream>
#include <tuple>

#include "segcrawl/errors.hpp"
#include "segcrawl/url.hpp"

namespace segcrawl {

UrlDataset UrlDataset::from_urls(std::vector<std::string> urls) {
    UrlDataset out;
    out.entries_.reserve(urls.size());
    for (std::size_t i = 0; i < urls.size(); ++i) {
        if (!is_absolute_url(urls[i])) {
            throw DatasetError("not an absolute URL: '" + urls[i] + "'");
        }
        out.entries_.push_back({i, std::move(urls[i])});
    }
    return out;
}

UrlDataset UrlDataset::parse(std::istream& in) {
    UrlDataset out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        const auto last = line.find_last_not_of(" \t\r");
        std::string url = line.substr(first, last - first + 1);
        if (!is_absolute_url(url)) {
            throw DatasetError("line " + std::to_string(line_no) + ": not an absolute URL: '" + url +
                                   "'",
                               line_no);
        }
        out.entries_.push_back({out.entries_.size(), std::move(url)});
    }
    return out;
}

UrlDataset UrlDataset::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DatasetError("cannot open URL list " + path.string());
    return parse(in);
}

void RunConfig::validate() const {
    if (n == 0) throw InvalidConfigError("n (worker groups) must be >= 1");
    if (m == 0) throw InvalidConfigError("m (fetch workers per group) must be >= 1");
    if (k == 0) throw InvalidConfigError("k (parse workers per group) must be >= 1");
    if (queue_capacity && *queue_capacity == 0) {
        throw InvalidConfigError("queue_capacity must be >= 1");
    }
    if (fetch_timeout.count() <= 0) throw InvalidConfigError("fetch_timeout must be positive");
}

std::size_t RunConfig::effective_queue_capacity() const noexcept {
    return queue_capacity.value_or(2 * (m + k));
}

std::string RunConfig::label() const {
    return "n" + std::to_string(n) + "m" + std::to_string(m) + "k" + std::to_string(k);
}

std::string FetchStatus::to_string() const {
    switch (kind) {
        case FetchStatusKind::ok:
            return "ok";
        case FetchStatusKind::http_error:
            return "http_error(" + std::to_string(http_code) + ")";
        case FetchStatusKind::timeout:
            return "timeout";
        case FetchStatusKind::connection_error:
            return "connection_error";
    }
    return "unknown";
}

bool canonical_less(const TargetedRecord& a, const TargetedRecord& b) {
    return std::tie(a.dataset_index, a.rule_name, a.value) <
           std::tie(b.dataset_index, b.rule_name, b.value);
}

}  // namespace segcrawl
