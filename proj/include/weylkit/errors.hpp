#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace weylkit {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Caller supplied something outside an operation's domain.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

// The computation itself failed (conditioning, stiffness, divergence).
class NumericalError : public Error {
public:
    using Error::Error;
};

class SingularMatrixError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class OverflowError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class StiffnessError : public NumericalError {
public:
    StiffnessError(const std::string& what, double location)
        : NumericalError(what), location_(location) {}
    double location() const noexcept { return location_; }

private:
    double location_;
};

// Riccati solution left every bounded set; `location` is the last accepted x.
class RiccatiPoleError : public NumericalError {
public:
    RiccatiPoleError(const std::string& what, double location)
        : NumericalError(what), location_(location) {}
    double location() const noexcept { return location_; }

private:
    double location_;
};

class NonConvergenceError : public NumericalError {
public:
    NonConvergenceError(const std::string& what, std::vector<double> history)
        : NumericalError(what), history_(std::move(history)) {}
    const std::vector<double>& history() const noexcept { return history_; }

private:
    std::vector<double> history_;
};

}  // namespace weylkit
