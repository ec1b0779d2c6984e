#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "segcrawl/types.hpp"

namespace segcrawl {

/// Rules-file problem, tagged with the offending rule and its 0-based array position.
class RuleError : public std::runtime_error {
public:
    enum class Kind { malformed, duplicate_name, bad_pattern, group_out_of_range };

    RuleError(Kind kind, std::string rule_name, std::size_t position, const std::string& detail);

    Kind kind() const noexcept { return kind_; }
    const std::string& rule_name() const noexcept { return rule_name_; }
    std::size_t position() const noexcept { return position_; }

private:
    Kind kind_;
    std::string rule_name_;
    std::size_t position_;
};

struct RuleSpec {
    std::string name;
    std::string pattern;
    std::size_t group = 1;
    std::optional<std::size_t> max_matches;  // nullopt: unlimited
};

class ExtractionRule {
public:
    const std::string& name() const noexcept { return spec_.name; }
    const std::string& pattern() const noexcept { return spec_.pattern; }
    std::size_t group() const noexcept { return spec_.group; }
    const std::optional<std::size_t>& max_matches() const noexcept { return spec_.max_matches; }

    struct Compiled;
    const Compiled& compiled() const noexcept { return *compiled_; }

private:
    friend class RuleSet;
    ExtractionRule(RuleSpec spec, std::shared_ptr<const Compiled> compiled)
        : spec_(std::move(spec)), compiled_(std::move(compiled)) {}

    RuleSpec spec_;
    std::shared_ptr<const Compiled> compiled_;
};

/// Ordered, immutable set of compiled rules with unique names. Cheap to copy
/// and safe to share read-only between any number of threads.
class RuleSet {
public:
    RuleSet() = default;

    /// Compiles and validates every spec; throws RuleError naming the first bad rule.
    static RuleSet from_specs(std::vector<RuleSpec> specs);

    std::span<const ExtractionRule> rules() const noexcept { return rules_; }
    std::size_t size() const noexcept { return rules_.size(); }
    bool empty() const noexcept { return rules_.empty(); }
    bool contains(std::string_view name) const noexcept;

private:
    std::vector<ExtractionRule> rules_;
};

/// Parses the rules file format: a JSON array of
/// {"name": str, "pattern": str, "group": int, "max_matches": int|null}.
/// "group" defaults to 1 and "max_matches" to unlimited when absent.
RuleSet compile_rules(std::string_view json_text);
RuleSet load_rules(const std::filesystem::path& path);

/// Replaces every invalid UTF-8 sequence with U+FFFD.
std::string sanitize_utf8(std::string_view bytes);

/// Runs every rule over the document body, in rule order. Each rule yields its
/// capture group from non-overlapping, leftmost-first matches in document
/// order, stopping at max_matches. Documents that were not fetched ok yield nothing.
std::vector<TargetedRecord> extract(const WebDocument& document, const RuleSet& rules);

}  // namespace segcrawl
