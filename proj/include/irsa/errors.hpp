#pragma once

#include <stdexcept>
#include <string>

namespace irsa {

// Bad input: malformed parameters or configurations. CLI exit code 1.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class InvalidParameter : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class ConfigurationError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

// Well-formed input at an operating point the model cannot support. CLI exit code 2.
class InfeasibleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Estimated-interference denominator of the RS rate is non-positive.
class TuningParameterError : public InfeasibleError {
public:
    using InfeasibleError::InfeasibleError;
};

// Denominator of the PA average-energy equation is non-positive.
class InfeasibleOperatingPoint : public InfeasibleError {
public:
    using InfeasibleError::InfeasibleError;
};

} // namespace irsa
