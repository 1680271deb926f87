#pragma once

#include <stdexcept>
#include <string>

namespace asp {

// Input outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// A state that cannot be reached: nu((x, inf)) = 0.
class OutOfSupportError : public DomainError {
public:
    using DomainError::DomainError;
};

// Quadrature or series that did not reach its tolerance.
class NumericError : public std::runtime_error {
public:
    NumericError(const std::string& what, double estimate)
        : std::runtime_error(what), estimate_(estimate) {}
    double estimate() const noexcept { return estimate_; }

private:
    double estimate_;
};

class UnsupportedOperation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

class InvalidGenerator : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace asp
