#pragma once

#include <stdexcept>
#include <string>

namespace consec {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed input: duplicate entries, empty words, out-of-range indices.
struct InvalidInputError : Error {
    using Error::Error;
};

/// Permutation longer than the compile-time capacity.
struct CapacityError : InvalidInputError {
    using InvalidInputError::InvalidInputError;
};

/// Operation undefined for the given length (exterior of a single entry,
/// interior of a permutation shorter than 3).
struct UndefinedError : Error {
    using Error::Error;
};

/// The requested interval [sigma, tau] does not exist because sigma is not
/// contained in tau.
struct NotComparableError : Error {
    using Error::Error;
};

/// A configurable resource cap (chain count, oracle element count,
/// exhaustive n) was exceeded.
struct CapExceededError : Error {
    using Error::Error;
};

}  // namespace consec
