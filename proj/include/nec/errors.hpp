#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nec {

/// Caller broke a precondition: mismatched fields, bad shapes, unknown ids.
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// The inputs are well formed but the requested quantity does not exist
/// (inverse of zero, distance of a non-regular code, no valid reduction vector).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A subset enumeration would exceed the configured limits.
class EnumerationCapError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Randomized construction ran out of attempts.
class ConstructionError : public std::runtime_error {
public:
    ConstructionError(const std::string& what, std::size_t attempts)
        : std::runtime_error(what), attempts_(attempts) {}

    std::size_t attempts() const { return attempts_; }

private:
    std::size_t attempts_;
};

/// Malformed input document. `where` names the offending field or byte offset.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& where, const std::string& what)
        : std::runtime_error(where + ": " + what), where_(where) {}

    const std::string& where() const { return where_; }

private:
    std::string where_;
};

}  // namespace nec
