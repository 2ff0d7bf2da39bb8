#include <doctest.h>

#include <cmath>
#include <random>

#include "qdmol/analytic.hpp"
#include "qdmol/model.hpp"
#include "qdmol/propagate.hpp"

using namespace qdmol;

TEST_CASE("planck occupation") {
    CHECK(planck_occupation(std::log(2.0)) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(planck_occupation(1.0) ==
          doctest::Approx(1.0 / (std::exp(1.0) - 1.0)).epsilon(1e-14));
    CHECK(planck_occupation(1.0) == doctest::Approx(0.5820).epsilon(1e-4));
    CHECK(planck_occupation(745.0) <= 1e-300);  // zero-temperature limit
    CHECK(planck_occupation(1e6) == 0.0);
    CHECK_THROWS_AS(planck_occupation(0.0), DomainError);
    CHECK_THROWS_AS(planck_occupation(-1.0), DomainError);
}

TEST_CASE("planck occupation is strictly decreasing") {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> u(1e-3, 50.0);
    for (int i = 0; i < 200; ++i) {
        const double a = u(rng);
        const double b = u(rng);
        if (a == b) continue;
        const double lo = std::min(a, b);
        const double hi = std::max(a, b);
        CHECK(planck_occupation(lo) > planck_occupation(hi));
    }
}

TEST_CASE("dipole decay rate") {
    CHECK(decay_rate(1.0, 0.0) == 0.0);
    CHECK(decay_rate(1.0, 0.75) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(decay_rate(2.0, 0.75) == doctest::Approx(8.0).epsilon(1e-15));
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> u(0.1, 3.0);
    for (int i = 0; i < 50; ++i) {
        const double w = u(rng);
        const double d2 = u(rng);
        CHECK(decay_rate(2.0 * w, d2) == doctest::Approx(8.0 * decay_rate(w, d2)));
        CHECK(decay_rate(w, 2.0 * d2) == doctest::Approx(2.0 * decay_rate(w, d2)));
    }
    CHECK_THROWS_AS(decay_rate(-1.0, 0.5), DomainError);
    CHECK_THROWS_AS(decay_rate(0.0, 0.5), DomainError);
    CHECK_THROWS_AS(decay_rate(1.0, -0.5), DomainError);
}

TEST_CASE("rates from physical parameters") {
    const RateParams ref = rates_from_physical(PhysicalParams(0.4, 1.0, 0.5, 0.8));
    CHECK(ref.l == 0.8);
    CHECK(ref.m == 0.4);
    CHECK(ref.n == 0.5);
    CHECK(ref.p == 0.4);

    const RateParams cold = rates_from_physical(PhysicalParams(1.0, 0.0, 0.0, 0.0));
    CHECK(cold.l == 1.0);
    CHECK(cold.m == 0.0);
    CHECK(cold.n == 0.0);
    CHECK(cold.p == 0.0);

    // the figure sweep reaches l/p = 1/10 at Omega = 16
    const RateParams strong = rates_from_physical(PhysicalParams(0.4, 1.0, 0.5, 16.0));
    CHECK(strong.p == 8.0);
    CHECK(strong.l / strong.p == doctest::Approx(0.1).epsilon(1e-15));
}

TEST_CASE("l - m reproduces gamma01 to within a rounding") {
    std::mt19937 rng(9);
    std::uniform_real_distribution<double> ug(0.01, 5.0);
    std::uniform_real_distribution<double> un(0.0, 4.0);
    for (int i = 0; i < 500; ++i) {
        const PhysicalParams phys(ug(rng), un(rng), un(rng), un(rng));
        const RateParams r = rates_from_physical(phys);
        CHECK(std::abs(r.l - r.m - phys.gamma01) <= 5e-16 * std::max(1.0, r.l));
    }
}

TEST_CASE("parameter invariants are enforced") {
    CHECK_THROWS_AS(PhysicalParams(-0.1, 1.0, 0.5, 0.0), ContractViolation);
    CHECK_THROWS_AS(RateParams(0.0, 0.0, 0.5), ContractViolation);
    CHECK_THROWS_AS(RateParams(0.4, 0.8, 0.5), ContractViolation);  // m > l
    CHECK_THROWS_AS(RateParams(0.8, 0.4, -0.5), ContractViolation);
    CHECK_THROWS_AS(RateParams(0.8, 0.4, 0.5, -1.0), ContractViolation);
    const RateParams boundary(0.8, 0.8, 0.0);  // l = m is the infinite-temperature limit
    CHECK(boundary.m == boundary.l);
}

TEST_CASE("sigma operators in the (|0>,|1>,|2>) basis") {
    CHECK(sigma_minus_01()(0, 1) == Complex(1.0, 0.0));
    CHECK(sigma_plus_01()(1, 0) == Complex(1.0, 0.0));
    CHECK(sigma_minus_12()(1, 2) == Complex(1.0, 0.0));
    CHECK(sigma_plus_12()(2, 1) == Complex(1.0, 0.0));
    CHECK(max_abs(sigma_minus_01().adjoint() - sigma_plus_01()) == 0.0);
    CHECK(max_abs(sigma_minus_12().adjoint() - sigma_plus_12()) == 0.0);
    for (const auto& s : {sigma_minus_01(), sigma_plus_01(), sigma_minus_12(), sigma_plus_12()}) {
        CHECK(s.cwiseAbs().sum() == 1.0);  // single matrix unit
    }
}

TEST_CASE("undriven steady state from the null space") {
    const Eigen::VectorXd ref = steady_state(build_undriven(presets::fig2_4())).populations();
    CHECK(ref(0) == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(ref(1) == doctest::Approx(0.25).epsilon(1e-10));
    CHECK(ref(2) == doctest::Approx(0.25).epsilon(1e-10));

    const Eigen::VectorXd cold = steady_state(build_undriven(RateParams(1.0, 0.0, 0.5))).populations();
    CHECK(cold(0) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(std::abs(cold(1)) <= 1e-10);
    CHECK(std::abs(cold(2)) <= 1e-10);
}

TEST_CASE("without tunneling the third level never populates") {
    const Generator gen = build_undriven(RateParams(0.8, 0.4, 0.0));
    IntegratorConfig cfg;
    cfg.dense_output_dt = 0.5;
    const Trajectory traj = integrate(gen, DensityMatrix::ground(3), 20.0, cfg);
    for (const auto& s : traj.samples) {
        CHECK(std::abs(s.state.populations()(2)) <= 1e-12);
    }
}

TEST_CASE("driven generator at p = 0 equals the undriven one") {
    std::mt19937 rng(31);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const RateParams rates(1.3, 0.7, 0.2, 0.0);
    const Generator driven = build_driven(rates);
    const Generator undriven = build_undriven(rates);
    for (int i = 0; i < 100; ++i) {
        ComplexMatrix g(3, 3);
        for (int a = 0; a < 3; ++a) {
            for (int b = 0; b < 3; ++b) {
                g(a, b) = Complex(gauss(rng), gauss(rng));
            }
        }
        const ComplexMatrix rho = hermitize(g);
        CHECK(max_abs(driven.apply(rho) - undriven.apply(rho)) <= 1e-14);
    }
}

TEST_CASE("detailed balance holds in the undriven steady state") {
    std::mt19937 rng(37);
    std::uniform_real_distribution<double> u(0.1, 5.0);
    for (int i = 0; i < 25; ++i) {
        double l = u(rng);
        double m = u(rng);
        if (m > l) std::swap(l, m);
        const RateParams r(l, m, u(rng));
        const Eigen::VectorXd pops = steady_state(build_undriven(r)).populations();
        CHECK(std::abs(r.l * pops(1) - r.m * pops(0)) <= 1e-10);
        CHECK(std::abs(pops(1) - pops(2)) <= 1e-10);
    }
}

TEST_CASE("population sector stays closed along undriven trajectories") {
    std::mt19937 rng(41);
    std::uniform_real_distribution<double> u(0.05, 1.0);
    IntegratorConfig cfg;
    cfg.dense_output_dt = 0.4;
    for (int i = 0; i < 3; ++i) {
        Eigen::Vector3d diag(u(rng), u(rng), u(rng));
        diag /= diag.sum();
        const Trajectory traj = integrate(build_undriven(presets::fig2_4()),
                                          DensityMatrix::from_diagonal(diag), 15.0, cfg);
        for (const auto& s : traj.samples) {
            ComplexMatrix off = s.state.matrix();
            off.diagonal().setZero();
            CHECK(max_abs(off) <= 1e-12);
        }
    }
}

TEST_CASE("strong driving pushes the stationary populations toward 1/3") {
    const auto pops = driven_steady_oracle(presets::fig12_13());
    for (const double v : pops) {
        CHECK(std::abs(v - 1.0 / 3.0) <= 0.05);
    }
}

TEST_CASE("steady rho00 is non-increasing in the drive strength") {
    double prev = 2.0;
    for (const double p : {0.0, 0.4, 0.8, 1.6, 8.0}) {
        const auto pops = driven_steady_oracle(presets::reference(p));
        CHECK(pops[0] <= prev + 1e-12);
        prev = pops[0];
    }
}

TEST_CASE("figure presets carry the caption rates") {
    CHECK(presets::fig2_4().l == 0.8);
    CHECK(presets::fig2_4().m == 0.4);
    CHECK(presets::fig2_4().p == 0.0);
    CHECK(presets::fig5_7().p == 0.4);    // l/p = 2
    CHECK(presets::fig8_9().p == 0.8);    // l/p = 1
    CHECK(presets::fig10_11().p == 1.6);  // l/p = 1/2
    CHECK(presets::fig12_13().p == 8.0);  // l/p = 1/10
    // n = 0.5 is the documented artifact choice; every preset shares it
    for (const auto& r : {presets::fig2_4(), presets::fig5_7(), presets::fig8_9(),
                          presets::fig10_11(), presets::fig12_13()}) {
        CHECK(r.n == 0.5);
    }
}
