#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "qdmol/errors.hpp"

namespace qdmol {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Largest entry modulus of M - M^dagger.
double hermiticity_defect(const ComplexMatrix& m);

/// |tr(M) - 1|.
double trace_defect(const ComplexMatrix& m);

/// Smallest eigenvalue of the Hermitian part (M + M^dagger)/2.
double min_eigenvalue(const ComplexMatrix& m);

/// (M + M^dagger)/2.
ComplexMatrix hermitize(const ComplexMatrix& m);

/// Largest entry modulus.
double max_abs(const ComplexMatrix& m);

struct ValidationTolerances {
    double hermiticity = 1e-12;
    double trace = 1e-12;
    double positivity = 1e-10;  // min eigenvalue >= -positivity
};

/// Validity report for a density-matrix candidate. Never throws; flags instead.
struct ValidationReport {
    double hermiticity_defect = 0.0;
    double trace_defect = 0.0;
    double min_eigenvalue = 0.0;
    bool hermitian_ok = false;
    bool trace_ok = false;
    bool positive_ok = false;
    bool ok() const { return hermitian_ok && trace_ok && positive_ok; }
};

ValidationReport validate_density(const ComplexMatrix& rho,
                                  const ValidationTolerances& tol = {});

/// Convenience overload: one tolerance for Hermiticity/trace, positivity
/// floored at 1e-10.
ValidationReport validate_density(const ComplexMatrix& rho, double tol);

/// Hermitian, unit-trace, positive-semidefinite state. Checked at construction.
class DensityMatrix {
public:
    /// Validates and wraps; throws ContractViolation on any defect beyond tol.
    static DensityMatrix validated(ComplexMatrix mat, const ValidationTolerances& tol = {});

    /// Pure state |level><level| in a dim-level system.
    static DensityMatrix ground(Eigen::Index dim = 3, Eigen::Index level = 0);

    /// I/dim.
    static DensityMatrix maximally_mixed(Eigen::Index dim = 3);

    /// Diagonal state from nonnegative populations summing to 1 (within 1e-12).
    static DensityMatrix from_diagonal(const Eigen::VectorXd& populations);

    const ComplexMatrix& matrix() const { return mat_; }
    Eigen::Index dim() const { return mat_.rows(); }

    /// Real diagonal (level populations).
    Eigen::VectorXd populations() const { return mat_.diagonal().real(); }

private:
    explicit DensityMatrix(ComplexMatrix mat) : mat_(std::move(mat)) {}
    ComplexMatrix mat_;
};

/// Jump operator with its nonnegative rate (inverse time).
struct LindbladTerm {
    LindbladTerm(ComplexMatrix jump_op, double rate_value);

    ComplexMatrix jump;
    double rate;
};

namespace testhooks {
/// Test-only mutation hook: flips the sign of the A rho A^dagger term inside
/// dissipator(). Exists so the validation suite can prove it detects a broken
/// generator. Never set outside tests / the CLI fault flag.
inline bool flip_dissipator_sign = false;
}  // namespace testhooks

/// rate * (A rho A^dagger - 1/2 {A^dagger A, rho}). Accepts any matrix of
/// matching dimension (the map is linear, not restricted to states).
ComplexMatrix dissipator(const LindbladTerm& term, const ComplexMatrix& rho);

/// Right-hand side of the master equation: -i[H, rho] + sum of dissipators
/// (hbar = 1). Immutable after construction.
class Generator {
public:
    Generator(ComplexMatrix hamiltonian, std::vector<LindbladTerm> terms);

    Eigen::Index dim() const { return hamiltonian_.rows(); }
    const ComplexMatrix& hamiltonian() const { return hamiltonian_; }
    const std::vector<LindbladTerm>& terms() const { return terms_; }

    ComplexMatrix apply(const ComplexMatrix& rho) const;
    ComplexMatrix apply(const DensityMatrix& rho) const { return apply(rho.matrix()); }

    /// dim^2 x dim^2 superoperator matrix acting on column-stacked states:
    /// unstack(liouvillian() * stack(rho)) == apply(rho).
    ComplexMatrix liouvillian() const;

private:
    ComplexMatrix hamiltonian_;
    std::vector<LindbladTerm> terms_;
};

/// Column-stacking vectorization (columns of rho concatenated).
ComplexVector stack_columns(const ComplexMatrix& rho);
ComplexMatrix unstack_columns(const ComplexVector& vec, Eigen::Index dim);

/// Kronecker product, dense.
ComplexMatrix kronecker(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace qdmol
