#pragma once

#include <stdexcept>
#include <string>

namespace tvgc {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Bad input data: malformed files, violated preconditions, inconsistent
/// series. Carries a human-readable message that cites the offending
/// row/date where one exists.
class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& what) : Error(what) {}
};

/// Numerical failure: rank-deficient regressors, ill-conditioned or
/// indefinite matrices, degenerate residual covariance.
class NumericalError : public Error {
public:
    explicit NumericalError(const std::string& what) : Error(what) {}
};

} // namespace tvgc
