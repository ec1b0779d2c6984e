#include "segcrawl/extraction.hpp"

#include <fstream>
#include <sstream>
#include <unordered_set>

#include <boost/regex.hpp>

#include "json.hpp"

namespace segcrawl {

struct ExtractionRule::Compiled {
    boost::regex regex;
};

namespace {

using json = nlohmann::json;

const char* kind_text(RuleError::Kind kind) {
    switch (kind) {
        case RuleError::Kind::malformed:
            return "malformed rule";
        case RuleError::Kind::duplicate_name:
            return "duplicate rule name";
        case RuleError::Kind::bad_pattern:
            return "pattern does not compile";
        case RuleError::Kind::group_out_of_range:
            return "capture group out of range";
    }
    return "rule error";
}

std::string describe(RuleError::Kind kind, const std::string& name, std::size_t position,
                     const std::string& detail) {
    std::string out = std::string(kind_text(kind)) + " at position " + std::to_string(position);
    if (!name.empty()) out += " ('" + name + "')";
    if (!detail.empty()) out += ": " + detail;
    return out;
}

// Length of the UTF-8 sequence starting at `s`, or 0 if it is invalid.
std::size_t utf8_sequence_length(std::string_view s) {
    const auto byte = [&](std::size_t i) { return static_cast<unsigned char>(s[i]); };
    const unsigned char lead = byte(0);
    if (lead < 0x80) return 1;
    std::size_t len = 0;
    unsigned char lo = 0x80, hi = 0xBF;
    if (lead >= 0xC2 && lead <= 0xDF) {
        len = 2;
    } else if (lead >= 0xE0 && lead <= 0xEF) {
        len = 3;
        if (lead == 0xE0) lo = 0xA0;
        if (lead == 0xED) hi = 0x9F;  // no surrogates
    } else if (lead >= 0xF0 && lead <= 0xF4) {
        len = 4;
        if (lead == 0xF0) lo = 0x90;
        if (lead == 0xF4) hi = 0x8F;
    } else {
        return 0;
    }
    if (s.size() < len) return 0;
    if (byte(1) < lo || byte(1) > hi) return 0;
    for (std::size_t i = 2; i < len; ++i) {
        if (byte(i) < 0x80 || byte(i) > 0xBF) return 0;
    }
    return len;
}

}  // namespace

RuleError::RuleError(Kind kind, std::string rule_name, std::size_t position, const std::string& detail)
    : std::runtime_error(describe(kind, rule_name, position, detail)),
      kind_(kind),
      rule_name_(std::move(rule_name)),
      position_(position) {}

RuleSet RuleSet::from_specs(std::vector<RuleSpec> specs) {
    RuleSet out;
    std::unordered_set<std::string> seen;
    for (std::size_t pos = 0; pos < specs.size(); ++pos) {
        RuleSpec& spec = specs[pos];
        if (spec.name.empty()) {
            throw RuleError(RuleError::Kind::malformed, spec.name, pos, "empty name");
        }
        if (!seen.insert(spec.name).second) {
            throw RuleError(RuleError::Kind::duplicate_name, spec.name, pos, "");
        }
        if (spec.max_matches && *spec.max_matches == 0) {
            throw RuleError(RuleError::Kind::malformed, spec.name, pos, "max_matches must be >= 1");
        }
        auto compiled = std::make_shared<ExtractionRule::Compiled>();
        try {
            compiled->regex.assign(spec.pattern, boost::regex::perl | boost::regex::no_mod_s);
        } catch (const boost::regex_error& e) {
            throw RuleError(RuleError::Kind::bad_pattern, spec.name, pos, e.what());
        }
        const std::size_t groups = compiled->regex.mark_count();
        if (groups == 0) {
            throw RuleError(RuleError::Kind::group_out_of_range, spec.name, pos,
                            "pattern has no capture group");
        }
        if (spec.group == 0 || spec.group > groups) {
            throw RuleError(RuleError::Kind::group_out_of_range, spec.name, pos,
                            "group " + std::to_string(spec.group) + " but pattern has " +
                                std::to_string(groups));
        }
        out.rules_.push_back(ExtractionRule(std::move(spec), std::move(compiled)));
    }
    return out;
}

bool RuleSet::contains(std::string_view name) const noexcept {
    for (const auto& rule : rules_) {
        if (rule.name() == name) return true;
    }
    return false;
}

RuleSet compile_rules(std::string_view json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw RuleError(RuleError::Kind::malformed, "", 0, e.what());
    }
    if (!doc.is_array()) {
        throw RuleError(RuleError::Kind::malformed, "", 0, "rules file must be a JSON array");
    }

    std::vector<RuleSpec> specs;
    specs.reserve(doc.size());
    for (std::size_t pos = 0; pos < doc.size(); ++pos) {
        const json& item = doc[pos];
        std::string name;
        if (item.is_object() && item.contains("name") && item["name"].is_string()) {
            name = item["name"].get<std::string>();
        }
        if (!item.is_object() || name.empty()) {
            throw RuleError(RuleError::Kind::malformed, name, pos, "expected an object with a string \"name\"");
        }
        if (!item.contains("pattern") || !item["pattern"].is_string()) {
            throw RuleError(RuleError::Kind::malformed, name, pos, "missing string \"pattern\"");
        }
        RuleSpec spec;
        spec.name = std::move(name);
        spec.pattern = item["pattern"].get<std::string>();
        if (item.contains("group")) {
            const json& group = item["group"];
            if (!group.is_number_integer() || group.get<long long>() < 1) {
                throw RuleError(RuleError::Kind::group_out_of_range, spec.name, pos,
                                "\"group\" must be an integer >= 1");
            }
            spec.group = group.get<std::size_t>();
        }
        if (item.contains("max_matches") && !item["max_matches"].is_null()) {
            const json& cap = item["max_matches"];
            if (!cap.is_number_integer() || cap.get<long long>() < 1) {
                throw RuleError(RuleError::Kind::malformed, spec.name, pos,
                                "\"max_matches\" must be a positive integer or null");
            }
            spec.max_matches = cap.get<std::size_t>();
        }
        specs.push_back(std::move(spec));
    }
    return RuleSet::from_specs(std::move(specs));
}

RuleSet load_rules(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw RuleError(RuleError::Kind::malformed, "", 0, "cannot open " + path.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    return compile_rules(buffer.str());
}

std::string sanitize_utf8(std::string_view bytes) {
    static constexpr std::string_view kReplacement = "\xEF\xBF\xBD";
    std::string out;
    out.reserve(bytes.size());
    std::size_t i = 0;
    while (i < bytes.size()) {
        const std::size_t len = utf8_sequence_length(bytes.substr(i));
        if (len == 0) {
            out.append(kReplacement);
            ++i;
        } else {
            out.append(bytes.substr(i, len));
            i += len;
        }
    }
    return out;
}

std::vector<TargetedRecord> extract(const WebDocument& document, const RuleSet& rules) {
    std::vector<TargetedRecord> out;
    if (!document.status.is_ok() || rules.empty()) return out;

    const std::string body = sanitize_utf8(document.body);
    for (const auto& rule : rules.rules()) {
        const std::size_t cap = rule.max_matches().value_or(SIZE_MAX);
        std::size_t emitted = 0;
        try {
            boost::sregex_iterator it(body.begin(), body.end(), rule.compiled().regex);
            for (const boost::sregex_iterator end; it != end && emitted < cap; ++it) {
                const auto& group = (*it)[static_cast<int>(rule.group())];
                if (!group.matched) continue;
                out.push_back({document.url, document.dataset_index, rule.name(), group.str(),
                               document.segment_id});
                ++emitted;
            }
        } catch (const std::runtime_error&) {
            // Regex complexity limit hit on this body; keep what matched so far.
        }
    }
    return out;
}

}  // namespace segcrawl
