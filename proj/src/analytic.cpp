#include "qdmol/analytic.hpp"

#include <cmath>

#include "qdmol/propagate.hpp"

namespace qdmol {

Eigen::Matrix3d population_rate_matrix(const RateParams& rates) {
    Eigen::Matrix3d m;
    m << -rates.m, rates.l, 0.0,
         rates.m, -(rates.l + rates.n), rates.n,
         0.0, rates.n, -rates.n;
    return m;
}

EigenPair decay_eigenvalues(double l, double m, double n) {
    const double s = l + m + 2.0 * n;
    const double discriminant = s * s - 4.0 * (l * n + 2.0 * m * n);
    if (discriminant < 0.0) {
        throw ComplexEigenvaluesError(discriminant);
    }
    const double root = std::sqrt(discriminant);
    return EigenPair{0.5 * (-s - root), 0.5 * (-s + root)};
}

EigenPair decay_eigenvalues(const RateParams& rates) {
    return decay_eigenvalues(rates.l, rates.m, rates.n);
}

UndrivenSolution undriven_solution(double l, double m, double n) {
    const EigenPair eigs = decay_eigenvalues(l, m, n);
    const double gap = eigs.lambda0 - eigs.lambda1;
    if (gap == 0.0) {
        throw DegenerateEigenvaluesError("decay eigenvalues coincide; closed form undefined");
    }
    // rho00(0) = 1 and rho11(0) = 0 pin B and C:
    //   B = -m (2 lambda1 + 2m + l) / ((2m+l)(lambda0-lambda1))
    //   C = +m (2 lambda0 + 2m + l) / ((2m+l)(lambda0-lambda1))
    const double denom = (2.0 * m + l) * gap;
    const double a = l / (2.0 * m + l);
    const double b = -m * (2.0 * eigs.lambda1 + 2.0 * m + l) / denom;
    const double c = m * (2.0 * eigs.lambda0 + 2.0 * m + l) / denom;
    return UndrivenSolution{a, b, c, eigs, RateParams(l, m, n)};
}

UndrivenSolution undriven_solution(const RateParams& rates) {
    UndrivenSolution sol = undriven_solution(rates.l, rates.m, rates.n);
    sol.rates = rates;
    return sol;
}

std::array<double, 3> eval_populations(const UndrivenSolution& sol, double t) {
    if (!(t >= 0.0)) {
        throw ContractViolation("eval_populations requires t >= 0");
    }
    const double e0 = std::exp(sol.eigs.lambda0 * t);
    const double e1 = std::exp(sol.eigs.lambda1 * t);
    const double l = sol.rates.l;
    const double m = sol.rates.m;
    const double rho00 = sol.a_const + sol.b_const * e0 + sol.c_const * e1;
    const double rho11 = m * sol.a_const / l + (sol.eigs.lambda0 + m) * sol.b_const / l * e0 +
                         (sol.eigs.lambda1 + m) * sol.c_const / l * e1;
    // 1 - s is exact for s in [1/2, 2], so the three components sum to 1.
    return {rho00, rho11, 1.0 - (rho00 + rho11)};
}

std::array<double, 3> undriven_steady(double l, double m) {
    const double denom = 2.0 * m + l;
    if (!(denom > 0.0)) {
        throw DomainError("undriven steady state undefined for l = m = 0");
    }
    return {l / denom, m / denom, m / denom};
}

std::array<double, 3> undriven_steady(const RateParams& rates) {
    return undriven_steady(rates.l, rates.m);
}

PrintedDrivenSteady driven_steady_printed(const RateParams& rates) {
    const double l = rates.l;
    const double m = rates.m;
    const double n = rates.n;
    const double p = rates.p;
    if (!(m + n > 0.0)) {
        throw DomainError("printed driven steady state divides by m + n = 0");
    }
    const double coupling = 2.0 * p * p * (1.0 / (m + n) + 1.0 / (l + m + n));
    const double rho00 = (l + coupling) / (2.0 * l + m + 3.0 * coupling);
    const double rho11 = 1.0 - 2.0 * rho00;

    PrintedDrivenSteady report;
    report.populations = {rho00, rho11, rho11};
    report.trace_error = std::abs(rho00 + 2.0 * rho11 - 1.0);
    report.trace_consistent = report.trace_error <= 1e-12;
    report.p0_reference_rho00 = l / (2.0 * m + l);
    report.p0_discrepancy = (p == 0.0) ? std::abs(rho00 - report.p0_reference_rho00) : 0.0;
    report.p0_consistent = (p != 0.0) || report.p0_discrepancy <= 1e-12;
    return report;
}

std::array<double, 3> driven_steady_oracle(const RateParams& rates) {
    const DensityMatrix ss = steady_state(build_driven(rates));
    const Eigen::VectorXd pops = ss.populations();
    return {pops(0), pops(1), pops(2)};
}

}  // namespace qdmol
