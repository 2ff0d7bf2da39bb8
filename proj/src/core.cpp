#include "qdmol/core.hpp"

#include <utility>

namespace qdmol {

double hermiticity_defect(const ComplexMatrix& m) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

double trace_defect(const ComplexMatrix& m) {
    return std::abs(m.trace() - Complex(1.0, 0.0));
}

double min_eigenvalue(const ComplexMatrix& m) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hermitize(m), Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

ComplexMatrix hermitize(const ComplexMatrix& m) {
    return 0.5 * (m + m.adjoint());
}

double max_abs(const ComplexMatrix& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

ValidationReport validate_density(const ComplexMatrix& rho, const ValidationTolerances& tol) {
    ValidationReport report;
    report.hermiticity_defect = hermiticity_defect(rho);
    report.trace_defect = trace_defect(rho);
    report.min_eigenvalue = min_eigenvalue(rho);
    report.hermitian_ok = report.hermiticity_defect <= tol.hermiticity;
    report.trace_ok = report.trace_defect <= tol.trace;
    report.positive_ok = report.min_eigenvalue >= -tol.positivity;
    return report;
}

ValidationReport validate_density(const ComplexMatrix& rho, double tol) {
    ValidationTolerances t;
    t.hermiticity = tol;
    t.trace = tol;
    t.positivity = std::max(tol, 1e-10);
    return validate_density(rho, t);
}

DensityMatrix DensityMatrix::validated(ComplexMatrix mat, const ValidationTolerances& tol) {
    if (mat.rows() != mat.cols() || mat.rows() < 1) {
        throw ContractViolation("density matrix must be square and nonempty");
    }
    const ValidationReport report = validate_density(mat, tol);
    if (!report.ok()) {
        throw ContractViolation(
            "invalid density matrix: hermiticity defect " +
            std::to_string(report.hermiticity_defect) + ", trace defect " +
            std::to_string(report.trace_defect) + ", min eigenvalue " +
            std::to_string(report.min_eigenvalue));
    }
    return DensityMatrix(std::move(mat));
}

DensityMatrix DensityMatrix::ground(Eigen::Index dim, Eigen::Index level) {
    if (dim < 1 || level < 0 || level >= dim) {
        throw ContractViolation("ground state level out of range");
    }
    ComplexMatrix mat = ComplexMatrix::Zero(dim, dim);
    mat(level, level) = 1.0;
    return DensityMatrix(std::move(mat));
}

DensityMatrix DensityMatrix::maximally_mixed(Eigen::Index dim) {
    if (dim < 1) {
        throw ContractViolation("dimension must be positive");
    }
    return DensityMatrix(ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim));
}

DensityMatrix DensityMatrix::from_diagonal(const Eigen::VectorXd& populations) {
    if (populations.size() < 1) {
        throw ContractViolation("empty population vector");
    }
    if (populations.minCoeff() < 0.0) {
        throw ContractViolation("negative population entry");
    }
    if (std::abs(populations.sum() - 1.0) > 1e-12) {
        throw ContractViolation("populations must sum to 1 within 1e-12");
    }
    ComplexMatrix mat = ComplexMatrix::Zero(populations.size(), populations.size());
    mat.diagonal() = populations.cast<Complex>();
    return DensityMatrix(std::move(mat));
}

LindbladTerm::LindbladTerm(ComplexMatrix jump_op, double rate_value)
    : jump(std::move(jump_op)), rate(rate_value) {
    if (jump.rows() != jump.cols()) {
        throw ContractViolation("jump operator must be square");
    }
    if (!(rate >= 0.0)) {
        throw ContractViolation("Lindblad rate must be nonnegative");
    }
}

ComplexMatrix dissipator(const LindbladTerm& term, const ComplexMatrix& rho) {
    if (rho.rows() != rho.cols() || rho.rows() != term.jump.rows()) {
        throw ContractViolation("dissipator dimension mismatch");
    }
    const ComplexMatrix& a = term.jump;
    const ComplexMatrix ada = a.adjoint() * a;
    const double sandwich_sign = testhooks::flip_dissipator_sign ? -1.0 : 1.0;
    return term.rate *
           (sandwich_sign * (a * rho * a.adjoint()) - 0.5 * (ada * rho + rho * ada));
}

Generator::Generator(ComplexMatrix hamiltonian, std::vector<LindbladTerm> terms)
    : hamiltonian_(std::move(hamiltonian)), terms_(std::move(terms)) {
    if (hamiltonian_.rows() != hamiltonian_.cols() || hamiltonian_.rows() < 1) {
        throw ContractViolation("Hamiltonian must be square and nonempty");
    }
    if (hermiticity_defect(hamiltonian_) > 1e-12) {
        throw ContractViolation("Hamiltonian must be Hermitian to 1e-12");
    }
    for (const auto& term : terms_) {
        if (term.jump.rows() != hamiltonian_.rows()) {
            throw ContractViolation("jump operator dimension mismatch");
        }
    }
}

ComplexMatrix Generator::apply(const ComplexMatrix& rho) const {
    if (rho.rows() != rho.cols() || rho.rows() != dim()) {
        throw ContractViolation("generator dimension mismatch");
    }
    const Complex minus_i(0.0, -1.0);
    ComplexMatrix out = minus_i * (hamiltonian_ * rho - rho * hamiltonian_);
    for (const auto& term : terms_) {
        out += dissipator(term, rho);
    }
    return out;
}

ComplexMatrix kronecker(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

ComplexMatrix Generator::liouvillian() const {
    const Eigen::Index n = dim();
    const ComplexMatrix id = ComplexMatrix::Identity(n, n);
    const Complex minus_i(0.0, -1.0);
    // vec(A X B) = (B^T (x) A) vec(X) with column stacking.
    ComplexMatrix sup =
        minus_i * (kronecker(id, hamiltonian_) - kronecker(hamiltonian_.transpose(), id));
    for (const auto& term : terms_) {
        const ComplexMatrix& a = term.jump;
        const ComplexMatrix ada = a.adjoint() * a;
        sup += term.rate * (kronecker(a.conjugate(), a) - 0.5 * kronecker(id, ada) -
                            0.5 * kronecker(ada.transpose(), id));
    }
    return sup;
}

ComplexVector stack_columns(const ComplexMatrix& rho) {
    return Eigen::Map<const ComplexVector>(rho.data(), rho.size());
}

ComplexMatrix unstack_columns(const ComplexVector& vec, Eigen::Index dim) {
    if (vec.size() != dim * dim) {
        throw ContractViolation("vector length does not match dim^2");
    }
    return Eigen::Map<const ComplexMatrix>(vec.data(), dim, dim);
}

}  // namespace qdmol
