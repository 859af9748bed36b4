#pragma once

#include <stdexcept>
#include <string>

namespace swclock {

/// Rejected clock parameters or malformed configuration input.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Arrival stream cannot be decoded (truncated, corrupted, unpaired).
struct StreamError : std::runtime_error {
    explicit StreamError(const std::string& what) : std::runtime_error(what) {}
};

/// Output files could not be written.
struct IoError : std::runtime_error {
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace swclock
