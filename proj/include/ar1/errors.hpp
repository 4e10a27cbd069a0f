#ifndef AR1_ERRORS_HPP
#define AR1_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ar1 {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated (|a0| out of regime, N too small, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// a0 does not belong to the requested regime.
class RegimeMismatch : public DomainError {
public:
    using DomainError::DomainError;
};

/// A sample or matrix entry exceeded the representable range.
class Overflow : public Error {
public:
    using Error::Error;
};

/// Every regressor y_1..y_{N-1} is zero, so the least-squares ratio is undefined.
class DegenerateDenominator : public Error {
public:
    using Error::Error;
};

/// A dense factorization failed (matrix not numerically positive definite).
class NumericalFailure : public Error {
public:
    using Error::Error;
};

/// Reading or writing an output file failed.
class IoError : public Error {
public:
    using Error::Error;
};

} // namespace ar1

#endif // AR1_ERRORS_HPP
