#pragma once

#include <stdexcept>
#include <string>

namespace superell {

// Violated mathematical precondition or failed identity: exit code 1 territory.
struct MathError : std::runtime_error {
    explicit MathError(const std::string& what) : std::runtime_error(what) {}
};

// Bad user input: malformed config, invalid curve/group data, unsupported
// shapes, resource caps. Exit code 2 territory.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Enumeration budget exceeded. Remedy is raising the cap, so this is a
// config-class error.
struct CapError : ConfigError {
    explicit CapError(const std::string& what) : ConfigError(what) {}
};

} // namespace superell
