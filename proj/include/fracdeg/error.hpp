#pragma once

#include <stdexcept>
#include <string>

namespace fracdeg {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A documented precondition was violated (bad exponent, empty grid, ...).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Adaptive quadrature could not reach the requested tolerance, or an
/// improper integral did not settle.
class QuadratureError : public Error {
public:
    using Error::Error;
};

/// The requested time step breaks the monotonicity (CFL) restriction.
class CflViolation : public Error {
public:
    using Error::Error;
};

/// Non-finite values appeared during time stepping.
class NumericalFailure : public Error {
public:
    using Error::Error;
};

} // namespace fracdeg
