#pragma once

#include <stdexcept>
#include <string>

namespace iceid {

// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Invalid configuration or parameters (CLI exit code 2).
struct ConfigError : Error {
    explicit ConfigError(const std::string& msg) : Error(msg) {}
};

// Malformed or inconsistent input data (CLI exit code 3).
struct DataError : Error {
    explicit DataError(const std::string& msg) : Error(msg) {}
};

// Contract violation at runtime: zero-evidence frequency, empty pattern,
// scoring against an empty pool, single-class metric input (CLI exit code 4).
struct DomainError : Error {
    explicit DomainError(const std::string& msg) : Error(msg) {}
};

}  // namespace iceid
