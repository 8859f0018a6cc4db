#pragma once

#include <stdexcept>
#include <string>

namespace pestcast {

/// Base class for all pestcast errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed input that could not be parsed (CSV rows, JSON documents).
struct ParseError : Error {
    using Error::Error;
};

/// Well-formed input that violates a documented invariant.
struct ValidationError : Error {
    using Error::Error;
};

/// A function was called with arguments outside its contract.
struct ArgumentError : Error {
    using Error::Error;
};

/// Filesystem-level failure (missing file, unwritable path).
struct IoError : Error {
    using Error::Error;
};

} // namespace pestcast
