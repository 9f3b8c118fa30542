#pragma once

#include <stdexcept>
#include <string>

namespace rfc {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input data (LIBSVM text, serialized maps). Carries a 1-based
// line number when the source is line-oriented, 0 otherwise.
class ParseError : public Error {
public:
    ParseError(const std::string& msg, long line)
        : Error(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg),
          line_(line) {}
    long line() const { return line_; }

private:
    long line_;
};

// Invalid experiment configuration (bad key, out-of-range value,
// inconsistent combination).
class ConfigError : public Error {
public:
    using Error::Error;
};

// Filesystem failures: missing files, unwritable outputs.
class IoError : public Error {
public:
    using Error::Error;
};

// The compression problem has no usable vertices (all rows zero, or a
// zero target where the solver needs a direction).
class DegenerateError : public Error {
public:
    using Error::Error;
};

// Dimension mismatches, out-of-range indices, and similar caller bugs.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

}  // namespace rfc
