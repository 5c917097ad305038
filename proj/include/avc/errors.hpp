#pragma once

#include <stdexcept>
#include <string>

namespace avc {

// Bad parameters, mismatched stream settings, malformed config files.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed data encountered while a stream is running.
class ProcessingError : public std::runtime_error {
public:
    explicit ProcessingError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace avc
