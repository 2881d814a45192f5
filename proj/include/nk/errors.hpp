#pragma once

#include <stdexcept>
#include <string>

namespace nk {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A precondition on an argument was violated.
class DomainError : public Error {
public:
    using Error::Error;
};

// Arguments are individually valid but mutually inconsistent.
class InconsistencyError : public Error {
public:
    using Error::Error;
};

// Evaluation at or too close to a singular point of a field or map.
class SingularityError : public Error {
public:
    using Error::Error;
};

class NoConvergenceError : public Error {
public:
    NoConvergenceError(const std::string& what, double best_residual)
        : Error(what), best_residual_(best_residual) {}
    double best_residual() const { return best_residual_; }

private:
    double best_residual_;
};

// Argument sits on (or numerically at) a zero of the Laguerre polynomial.
class PoleError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace nk
