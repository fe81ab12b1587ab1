#pragma once

#include <stdexcept>
#include <string>

namespace cogsim {

/// Base for all errors raised by the simulator library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A configuration value violates a typed invariant (exit code 1 in the CLI).
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Input files are well-formed but inconsistent (overlapping contacts,
/// unknown node ids, ...). Also exit code 1.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Malformed text input. Carries the 1-based line number when known.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line)
        : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
          line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_ = 0;
};

/// Unknown vertex, edge, tag or item.
class LookupError : public Error {
public:
    using Error::Error;
};

/// A metric is undefined for the given state (e.g. empty global graph).
class MetricError : public Error {
public:
    using Error::Error;
};

}  // namespace cogsim
