// SPDX-License-Identifier: MIT
#pragma once

#include <stdexcept>
#include <string>

namespace nlrta {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Incompatible extents, mode out of range, rank tuple of the wrong arity.
class ShapeError : public Error {
public:
    using Error::Error;
};

/// A parameter violates its documented precondition (e.g. sketch size < rank).
class ArgumentError : public Error {
public:
    using Error::Error;
};

/// Non-finite data or a numerically singular intermediate factor.
class NumericalError : public Error {
public:
    using Error::Error;
};

/// File could not be opened, read, or written.
class IoError : public Error {
public:
    using Error::Error;
};

/// DTEN header does not start with the magic bytes or has an unknown version.
class FormatError : public IoError {
public:
    using IoError::IoError;
};

/// DTEN extents whose product does not fit in memory addressing.
class DimensionOverflowError : public IoError {
public:
    using IoError::IoError;
};

/// DTEN file ends before the header or payload is complete.
class TruncatedPayloadError : public IoError {
public:
    using IoError::IoError;
};

}  // namespace nlrta
