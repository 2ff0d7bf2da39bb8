#pragma once

#include <array>

#include "qdmol/core.hpp"
#include "qdmol/model.hpp"

namespace qdmol {

/// The two nonzero eigenvalues of the population rate matrix, both real and
/// nonpositive: lambda0 <= lambda1 <= 0.
struct EigenPair {
    double lambda0;
    double lambda1;
};

/// Rate matrix M of the population sector d/dt(rho00, rho11, rho22)^T =
/// M (rho00, rho11, rho22)^T for the undriven model:
///   [[-m, l, 0], [m, -(l+n), n], [0, n, -n]].
Eigen::Matrix3d population_rate_matrix(const RateParams& rates);

/// lambda_{0,1} = (-(l+m+2n) -+ sqrt((l+m+2n)^2 - 4(ln+2mn))) / 2.
/// Raw-input overload; throws ComplexEigenvaluesError (carrying the
/// discriminant) when the square root turns complex. For valid RateParams the
/// discriminant equals (l+m)^2 + 4n(n-m) >= l^2 + 2lm > 0, so that branch is
/// unreachable there.
EigenPair decay_eigenvalues(double l, double m, double n);
EigenPair decay_eigenvalues(const RateParams& rates);

/// Closed-form undriven populations from the initial state |0><0|:
///   rho00(t) = A + B exp(lambda0 t) + C exp(lambda1 t)
///   rho11(t) = mA/l + (lambda0+m)B/l exp(lambda0 t) + (lambda1+m)C/l exp(lambda1 t)
///   rho22(t) = 1 - rho00(t) - rho11(t)
/// with A = l/(2m+l) and B, C fixed by rho00(0) = 1, rho11(0) = 0.
struct UndrivenSolution {
    double a_const;  // stationary rho00
    double b_const;
    double c_const;
    EigenPair eigs;
    RateParams rates;
};

UndrivenSolution undriven_solution(const RateParams& rates);
/// Raw overload (same guard rails as decay_eigenvalues; throws
/// DegenerateEigenvaluesError when lambda0 == lambda1).
UndrivenSolution undriven_solution(double l, double m, double n);

/// (rho00, rho11, rho22) at time t >= 0. Components sum to 1 exactly.
std::array<double, 3> eval_populations(const UndrivenSolution& sol, double t);

/// Stationary populations (l, m, m)/(2m+l) of the undriven model;
/// independent of n.
std::array<double, 3> undriven_steady(const RateParams& rates);
std::array<double, 3> undriven_steady(double l, double m);

/// The driven stationary values exactly as printed in the source formulas,
/// together with their consistency defects. The printed expressions are not
/// trace-normalized and their p = 0 limit disagrees with the undriven
/// stationary value, so they are quarantined behind this report; use
/// driven_steady_oracle for trusted numbers.
struct PrintedDrivenSteady {
    std::array<double, 3> populations;  // verbatim evaluation
    double trace_error;                 // |sum - 1|
    bool trace_consistent;              // trace_error <= 1e-12
    double p0_reference_rho00;          // l/(2m+l), the undriven stationary value
    double p0_discrepancy;              // |printed - reference| at p == 0, else 0
    bool p0_consistent;                 // false when p == 0 and the values differ
};

PrintedDrivenSteady driven_steady_printed(const RateParams& rates);

/// Trusted driven stationary populations: diagonal of the Hermitized,
/// trace-normalized null vector of the driven Liouvillian.
std::array<double, 3> driven_steady_oracle(const RateParams& rates);

}  // namespace qdmol
