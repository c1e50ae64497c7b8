#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace optosqueeze {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An input lies outside the domain of an operation (negative power, omega <= 0, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// A caller-side contract was broken, e.g. an asymmetric covariance matrix.
class ContractError : public Error {
public:
    using Error::Error;
};

/// A covariance matrix that violates the uncertainty principle.
class PhysicalityError : public Error {
public:
    using Error::Error;
};

/// The drift matrix is unstable; the message names the failed check (e.g. "s3<0").
class InstabilityError : public Error {
public:
    explicit InstabilityError(std::string failed_check)
        : Error("unstable (" + failed_check + ")"), failed_check_(std::move(failed_check)) {}

    [[nodiscard]] const std::string& failed_check() const noexcept { return failed_check_; }

private:
    std::string failed_check_;
};

/// Base for failures of a numerical procedure on otherwise valid input.
class NumericalError : public Error {
public:
    using Error::Error;
};

/// A linear system or rational expression hit an exact (or numerically exact) singularity.
class SingularityError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// Adaptive step size fell below the allowed minimum.
class StiffnessError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// The integrated state blew up or became non-finite.
class DivergenceError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// An iteration or time-stepping loop hit its cap without converging.
class ConvergenceError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// Bad user input at the configuration level (unknown preset, unknown key, ...).
class UsageError : public Error {
public:
    using Error::Error;
};

}  // namespace optosqueeze
