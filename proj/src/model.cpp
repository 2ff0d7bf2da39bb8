#include "qdmol/model.hpp"

#include <cmath>

namespace qdmol {

PhysicalParams::PhysicalParams(double gamma01_, double n_occ_, double n_tunnel_,
                               double omega_rabi_)
    : gamma01(gamma01_), n_occ(n_occ_), n_tunnel(n_tunnel_), omega_rabi(omega_rabi_) {
    if (!(gamma01 >= 0.0) || !(n_occ >= 0.0) || !(n_tunnel >= 0.0) || !(omega_rabi >= 0.0)) {
        throw ContractViolation("physical parameters must be nonnegative");
    }
}

RateParams::RateParams(double l_, double m_, double n_, double p_)
    : l(l_), m(m_), n(n_), p(p_) {
    if (!(l > 0.0)) {
        throw ContractViolation("rate l must be positive");
    }
    if (!(m >= 0.0) || m > l) {
        throw ContractViolation("rate m must satisfy 0 <= m <= l");
    }
    if (!(n >= 0.0) || !(p >= 0.0)) {
        throw ContractViolation("rates n and p must be nonnegative");
    }
}

double planck_occupation(double beta_hbar_omega) {
    if (!(beta_hbar_omega > 0.0)) {
        throw DomainError("planck_occupation requires beta*hbar*omega > 0");
    }
    return 1.0 / std::expm1(beta_hbar_omega);
}

double decay_rate(double omega, double dipole_sq) {
    if (!(omega > 0.0)) {
        throw DomainError("decay_rate requires omega > 0");
    }
    if (!(dipole_sq >= 0.0)) {
        throw DomainError("decay_rate requires |d|^2 >= 0");
    }
    return 4.0 * omega * omega * omega * dipole_sq / 3.0;
}

RateParams rates_from_physical(const PhysicalParams& phys) {
    const double m = phys.gamma01 * phys.n_occ;
    const double l = m + phys.gamma01;
    return RateParams(l, m, phys.n_tunnel, 0.5 * phys.omega_rabi);
}

namespace {
ComplexMatrix unit_matrix_entry(Eigen::Index row, Eigen::Index col) {
    ComplexMatrix m = ComplexMatrix::Zero(3, 3);
    m(row, col) = 1.0;
    return m;
}
}  // namespace

ComplexMatrix sigma_minus_01() { return unit_matrix_entry(0, 1); }
ComplexMatrix sigma_plus_01() { return unit_matrix_entry(1, 0); }
ComplexMatrix sigma_minus_12() { return unit_matrix_entry(1, 2); }
ComplexMatrix sigma_plus_12() { return unit_matrix_entry(2, 1); }

namespace {
std::vector<LindbladTerm> bath_terms(const RateParams& rates) {
    return {
        LindbladTerm(sigma_minus_01(), rates.l),
        LindbladTerm(sigma_plus_01(), rates.m),
        LindbladTerm(sigma_minus_12(), rates.n),
        LindbladTerm(sigma_plus_12(), rates.n),
    };
}
}  // namespace

Generator build_undriven(const RateParams& rates) {
    return Generator(ComplexMatrix::Zero(3, 3), bath_terms(rates));
}

Generator build_driven(const RateParams& rates) {
    const ComplexMatrix drive = -rates.p * (sigma_plus_01() + sigma_minus_01());
    return Generator(drive, bath_terms(rates));
}

namespace presets {

RateParams reference(double p) { return RateParams(0.8, 0.4, 0.5, p); }

RateParams fig2_4() { return reference(0.0); }
RateParams fig5_7() { return reference(0.4); }
RateParams fig8_9() { return reference(0.8); }
RateParams fig10_11() { return reference(1.6); }
RateParams fig12_13() { return reference(8.0); }

}  // namespace presets

}  // namespace qdmol
