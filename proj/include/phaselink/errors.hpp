#pragma once

#include <stdexcept>
#include <string>

namespace phaselink {

// Raised when decoded bytes fail structural or checksum validation.
struct IntegrityError : std::runtime_error {
    explicit IntegrityError(const std::string& what) : std::runtime_error(what) {}
};

// Raised when a value cannot be represented in the wire encoding.
struct EncodingError : std::runtime_error {
    explicit EncodingError(const std::string& what) : std::runtime_error(what) {}
};

// Raised when a byte stream cannot be carved into frames at all (truncation,
// bad magic, impossible lengths); distinct from a checksum failure.
struct FramingError : std::runtime_error {
    explicit FramingError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace phaselink
