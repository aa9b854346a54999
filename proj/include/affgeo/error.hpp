#pragma once

#include <stdexcept>
#include <string>

namespace affgeo {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Parameters outside an operation's domain (bad field order, k not dividing n, ...).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Operands living in different fields or ambient spaces.
class DomainMismatch : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

/// An enumeration or exhaustive check would exceed its size limit.
class GuardExceeded : public Error {
public:
    using Error::Error;
};

/// Malformed block file or element string.
class ParseError : public Error {
public:
    using Error::Error;
};

} // namespace affgeo
