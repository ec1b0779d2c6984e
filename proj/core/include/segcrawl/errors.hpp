#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace segcrawl {

/// A RunConfig, ExperimentPlan or partition request that can never run.
class InvalidConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Caller passed a value outside an operation's domain (empty trial list, t_single <= 0, ...).
class InvalidInputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Internal accounting broke; indicates a partitioning or merge bug, never bad input.
class ConsistencyError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Malformed URL list (bad URL, unreadable file). Carries the 1-based source line when known.
class DatasetError : public std::runtime_error {
public:
    DatasetError(const std::string& what, std::size_t line = 0)
        : std::runtime_error(what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Fixture server could not bind or start.
class StartupError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Output file could not be written.
class OutputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace segcrawl
