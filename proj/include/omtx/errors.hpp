#pragma once

#include <stdexcept>
#include <string>

namespace omtx {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Precondition violations: bad parameter values, empty inputs.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// A formula evaluated exactly at one of its poles.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Base for failures of a numerical method (singularities, divergence, ...).
/// The CLI maps these to exit code 2.
class NumericalError : public Error {
public:
    using Error::Error;
};

/// |f(delta)| fell below the singularity floor; the closed-form response is
/// not meaningful at this detuning.
class SingularResponse : public NumericalError {
public:
    explicit SingularResponse(double delta);
    double delta() const noexcept { return delta_; }

private:
    double delta_;
};

/// The linearized 3x3 fluctuation system is singular at this detuning.
class SingularSystem : public NumericalError {
public:
    explicit SingularSystem(double delta);
    double delta() const noexcept { return delta_; }

private:
    double delta_;
};

/// The field amplitude escaped the configured ceiling during integration.
class DivergenceError : public NumericalError {
public:
    explicit DivergenceError(double escape_time);
    double escape_time() const noexcept { return escape_time_; }

private:
    double escape_time_;
};

class WindowTooShort : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// Leading eigenvalue real parts at the two bracket ends do not differ in sign.
class BracketInvalid : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// Configuration errors. `line` is 1-based, 0 when not tied to a file line.
class ConfigError : public Error {
public:
    ConfigError(const std::string& what, int line);
    int line() const noexcept { return line_; }

private:
    int line_;
};

class ParseError : public ConfigError {
public:
    using ConfigError::ConfigError;
};

class UnknownKey : public ConfigError {
public:
    using ConfigError::ConfigError;
};

class UnitSuffixMissing : public ConfigError {
public:
    using ConfigError::ConfigError;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace omtx
