#pragma once

#include <stdexcept>
#include <string>

namespace aeids {

// Bad user-supplied configuration (CLI exit code 1).
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Unreadable or malformed input data / artifacts (CLI exit code 2).
struct DataError : std::runtime_error {
    explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

// Dimension mismatch between tensors or between a model and its input.
struct ShapeError : DataError {
    explicit ShapeError(const std::string& msg) : DataError(msg) {}
};

// File absent or unreadable.
struct FileError : DataError {
    explicit FileError(const std::string& msg) : DataError(msg) {}
};

// File present but malformed (ragged CSV row, corrupt model container, ...).
struct ParseError : DataError {
    explicit ParseError(const std::string& msg) : DataError(msg) {}
};

// File well-formed but does not match the expected schema (missing label
// column, unknown class name, ...).
struct SchemaError : DataError {
    explicit SchemaError(const std::string& msg) : DataError(msg) {}
};

// Training diverged or aborted (CLI exit code 3).
struct TrainError : std::runtime_error {
    explicit TrainError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace aeids
