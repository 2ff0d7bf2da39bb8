#pragma once

#include <stdexcept>
#include <string>

namespace qdmol {

/// Precondition or type-invariant violation (dimension mismatch, invalid state, ...).
class ContractViolation : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Input outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// The decay-eigenvalue formula produced a complex pair (negative discriminant).
class ComplexEigenvaluesError : public std::runtime_error {
public:
    explicit ComplexEigenvaluesError(double discriminant)
        : std::runtime_error("decay eigenvalues form a complex pair, discriminant = " +
                             std::to_string(discriminant)),
          discriminant_(discriminant) {}
    double discriminant() const { return discriminant_; }

private:
    double discriminant_;
};

/// The two decay eigenvalues coincide; the closed-form constants divide by their gap.
class DegenerateEigenvaluesError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Adaptive integration demanded a step below the representable floor.
class StiffnessError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The Liouvillian null space does not have dimension one.
class DegenerateSteadyStateError : public std::runtime_error {
public:
    DegenerateSteadyStateError(std::string msg, int null_dim)
        : std::runtime_error(std::move(msg)), null_dim_(null_dim) {}
    int null_dimension() const { return null_dim_; }

private:
    int null_dim_;
};

/// A stationary vector was found but fails the density-matrix checks.
class NonPhysicalFixedPointError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace qdmol
