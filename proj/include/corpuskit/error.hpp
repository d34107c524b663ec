#pragma once

#include <stdexcept>
#include <string>

namespace corpuskit {

/// Invalid arguments, parameters or configuration (CLI exit code 1).
class ConfigError : public std::runtime_error {
  public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed or inconsistent input data, I/O failures (CLI exit code 2).
class DataError : public std::runtime_error {
  public:
    explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace corpuskit
