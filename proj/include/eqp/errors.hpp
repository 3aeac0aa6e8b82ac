#pragma once

#include <stdexcept>
#include <string>

namespace eqp {

/// Broad failure classes; the CLI maps each to its own exit code.
enum class ErrorClass { validation, numerical, io };

class Error : public std::runtime_error {
public:
    Error(ErrorClass cls, std::string kind, const std::string& message)
        : std::runtime_error(message), class_(cls), kind_(std::move(kind)) {}

    ErrorClass error_class() const noexcept { return class_; }

    /// Short machine-readable tag, e.g. "no_equilibrium".
    const std::string& kind() const noexcept { return kind_; }

private:
    ErrorClass class_;
    std::string kind_;
};

class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& message, std::string kind = "validation")
        : Error(ErrorClass::validation, std::move(kind), message) {}
};

class NumericalError : public Error {
public:
    NumericalError(std::string kind, const std::string& message)
        : Error(ErrorClass::numerical, std::move(kind), message) {}
};

class IoError : public Error {
public:
    explicit IoError(const std::string& message, std::string kind = "io")
        : Error(ErrorClass::io, std::move(kind), message) {}
};

/// Raised when the equity price system has no positive solution.
class NoEquilibriumError : public NumericalError {
public:
    NoEquilibriumError(const std::string& message, double discounted_spectral_radius)
        : NumericalError("no_equilibrium", message), radius_(discounted_spectral_radius) {}

    /// beta * rho(A) for the kernel A_ij = Phi_ij * lambda_j^(1 - alpha_e).
    double discounted_spectral_radius() const noexcept { return radius_; }

private:
    double radius_;
};

}  // namespace eqp
