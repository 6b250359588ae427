#pragma once

#include <stdexcept>
#include <string>

namespace ffnn {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Vector or matrix shapes do not line up.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// A gradient was requested through a threshold unit.
class NonDifferentiableError : public Error {
public:
    using Error::Error;
};

/// A value violates a documented invariant (non-finite weight, bad config, ...).
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Malformed text input (JSON, CSV, numeric field).
class ParseError : public Error {
public:
    using Error::Error;
};

/// Network document carries a format_version this build does not understand.
class VersionError : public ParseError {
public:
    using ParseError::ParseError;
};

/// File could not be opened, read or written.
class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace ffnn
