#pragma once

#include <stdexcept>
#include <string>

namespace gapa {

// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input text (edge lists, ground-truth files, CSV).
class ParseError : public Error {
public:
    explicit ParseError(const std::string& what) : Error(what) {}
};

// Invalid experiment configuration. CLI exit code 2.
class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& what) : Error(what) {}
};

// Unreadable or inconsistent dataset. CLI exit code 3.
class DatasetError : public Error {
public:
    explicit DatasetError(const std::string& what) : Error(what) {}
};

}  // namespace gapa
