#pragma once

#include <stdexcept>
#include <string>

namespace k3seg {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A caller-supplied parameter lies outside the documented domain.
class ParameterError : public Error {
public:
    using Error::Error;
};

/// The operation is well-formed but deliberately not supported.
class UnsupportedError : public Error {
public:
    using Error::Error;
};

/// Two computations that must agree did not.
class InconsistencyError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

}  // namespace k3seg
