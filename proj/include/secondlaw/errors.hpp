// errors.hpp: exception hierarchy shared by every module

#pragma once

#include <stdexcept>
#include <string>

namespace secondlaw {

// Base of all computation errors raised by the library. The CLI maps any
// Error escaping a scenario to the computation exit code.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Input violates a documented precondition (shape, tolerance, range).
class ValidationError : public Error {
public:
    using Error::Error;
};

// A function was asked to evaluate outside its domain (e.g. ln of an
// excluded eigenvalue, effective temperature of a pure state).
class DomainError : public Error {
public:
    using Error::Error;
};

// The request is well-formed but outside the implemented case, e.g.
// non-commuting operators in the force/flow kernels.
class UnsupportedCaseError : public Error {
public:
    using Error::Error;
};

// Relaxation parameters would push a population outside [0, 1].
class AmplitudeError : public Error {
public:
    using Error::Error;
};

// An iteration did not reach its tolerance within its cap.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

}  // namespace secondlaw
