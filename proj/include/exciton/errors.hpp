#pragma once

#include <stdexcept>
#include <string>

namespace exciton {

/// Input outside the mathematical domain of an operation (poles, x = 0, m >= 1, ...).
class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// A numerical procedure could not reach its requested accuracy.
class AccuracyError : public std::runtime_error {
public:
    explicit AccuracyError(const std::string& what) : std::runtime_error(what) {}
};

/// Bracketed root search found no sign change.
class RootNotFoundError : public std::runtime_error {
public:
    explicit RootNotFoundError(const std::string& what) : std::runtime_error(what) {}
};

/// Invalid grid or solver configuration.
class ConfigError : public std::invalid_argument {
public:
    explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

[[noreturn]] void throw_domain(const std::string& where, const std::string& detail);

} // namespace exciton
