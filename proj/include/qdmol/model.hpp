#pragma once

#include "qdmol/core.hpp"

namespace qdmol {

/// Physical inputs for the double-dot model: spontaneous 0<->1 rate, thermal
/// occupation at that transition, phenomenological 1<->2 tunneling rate, and
/// the Rabi frequency of the resonant drive. All nonnegative.
struct PhysicalParams {
    PhysicalParams(double gamma01, double n_occ, double n_tunnel, double omega_rabi);

    double gamma01;
    double n_occ;
    double n_tunnel;
    double omega_rabi;
};

/// Working rates: l = gamma01*(N+1) downward 0<->1, m = gamma01*N upward,
/// n the 1<->2 rate, p = Omega/2 the drive half-frequency.
/// Invariants: l > 0, l >= m >= 0, n >= 0, p >= 0.
struct RateParams {
    RateParams(double l, double m, double n, double p = 0.0);

    double l;
    double m;
    double n;
    double p;
};

/// Mean thermal photon number N = 1/(exp(x) - 1) for x = beta*hbar*omega > 0.
double planck_occupation(double beta_hbar_omega);

/// Dipole decay rate 4 omega^3 |d|^2 / 3 with hbar = c = 1. Standalone
/// utility; the figure presets specify l and m directly.
double decay_rate(double omega, double dipole_sq);

/// l = gamma01*(N+1), m = gamma01*N, n = n_tunnel, p = Omega/2.
/// l is computed as m + gamma01 so that l - m reproduces gamma01 to within
/// one rounding of the sum (exactly for the paper presets).
RateParams rates_from_physical(const PhysicalParams& phys);

// Lowering/raising operators in the ordered basis (|0>, |1>, |2>).
ComplexMatrix sigma_minus_01();  // |0><1|
ComplexMatrix sigma_plus_01();   // |1><0|
ComplexMatrix sigma_minus_12();  // |1><2|
ComplexMatrix sigma_plus_12();   // |2><1|

/// Bath-only generator: four jump terms (sigma-01, l), (sigma+01, m),
/// (sigma-12, n), (sigma+12, n), zero Hamiltonian (resonant case). The p
/// field is ignored.
Generator build_undriven(const RateParams& rates);

/// Driven generator: same four terms plus H = -p (sigma+01 + sigma-01)
/// in the rotating frame. Reduces to build_undriven at p = 0.
Generator build_driven(const RateParams& rates);

namespace presets {

/// Reference rate pair of the figure captions (l = 0.8, m = 0.4) with the
/// documented artifact choice n = 0.5 (the source never states n) and the
/// given drive strength.
RateParams reference(double p = 0.0);

RateParams fig2_4();    // undriven
RateParams fig5_7();    // l/p = 2     -> p = 0.4
RateParams fig8_9();    // l/p = 1     -> p = 0.8
RateParams fig10_11();  // l/p = 1/2   -> p = 1.6
RateParams fig12_13();  // l/p = 1/10  -> p = 8

}  // namespace presets

}  // namespace qdmol
