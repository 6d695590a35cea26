#pragma once

#include <stdexcept>
#include <string>

namespace risq {

// Violated precondition on a numeric argument (index out of range, bad
// dimensions, negative exponent...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// The exhaustive oracle refuses problems above its size guard.
class GuardError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed scenario document or command-line configuration. `key()` names the
// offending field, e.g. "panel.levels_deg".
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string key, const std::string& what)
        : std::runtime_error(key.empty() ? what : key + ": " + what), key_(std::move(key)) {}

    const std::string& key() const noexcept { return key_; }

private:
    std::string key_;
};

}  // namespace risq
