#pragma once

#include <stdexcept>
#include <string>

namespace vofde {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of a function.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Malformed spatial grid or time mesh.
class MeshError : public Error {
public:
    using Error::Error;
};

/// The order field produced a value outside [0, 1] (or a non-finite value).
class OrderRangeError : public Error {
public:
    OrderRangeError(double x, double t, double value);

    double x() const noexcept { return x_; }
    double t() const noexcept { return t_; }
    double value() const noexcept { return value_; }

private:
    double x_;
    double t_;
    double value_;
};

/// Zero pivot, non-finite field, or a step too small to advance the clock.
class NumericalError : public Error {
public:
    using Error::Error;
};

class StepUnderflowError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// The adaptive controller could not meet its tolerance.
class ControllerFailure : public NumericalError {
public:
    ControllerFailure(const std::string& what, double last_error, double last_step)
        : NumericalError(what), last_error_(last_error), last_step_(last_step) {}

    double last_error() const noexcept { return last_error_; }
    double last_step() const noexcept { return last_step_; }

private:
    double last_error_;
    double last_step_;
};

/// Invalid user-supplied configuration.
class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace vofde
