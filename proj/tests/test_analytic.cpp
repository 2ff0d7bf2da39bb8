#include <doctest.h>

#include <cmath>
#include <random>

#include "qdmol/analytic.hpp"
#include "qdmol/model.hpp"
#include "qdmol/propagate.hpp"

using namespace qdmol;

namespace {

RateParams random_rates(std::mt19937& rng, double lo, double hi) {
    std::uniform_real_distribution<double> u(lo, hi);
    double l = u(rng);
    double m = u(rng);
    while (m > l) {
        l = u(rng);
        m = u(rng);
    }
    return RateParams(l, m, u(rng));
}

}  // namespace

TEST_CASE("decay eigenvalues at the reference rates") {
    const EigenPair eigs = decay_eigenvalues(presets::fig2_4());
    // oracle: numeric eigendecomposition of the rate matrix, frozen values
    CHECK(eigs.lambda0 == doctest::Approx(-1.7403124237432849).epsilon(1e-13));
    CHECK(eigs.lambda1 == doctest::Approx(-0.4596875762567151).epsilon(1e-13));
    Eigen::EigenSolver<Eigen::Matrix3d> es(population_rate_matrix(presets::fig2_4()));
    std::vector<double> numeric;
    for (int k = 0; k < 3; ++k) {
        numeric.push_back(es.eigenvalues()(k).real());
    }
    std::sort(numeric.begin(), numeric.end());
    CHECK(std::abs(numeric[0] - eigs.lambda0) <= 1e-12);
    CHECK(std::abs(numeric[1] - eigs.lambda1) <= 1e-12);
}

TEST_CASE("decay eigenvalues degenerate limits") {
    const EigenPair no_tunneling = decay_eigenvalues(0.8, 0.4, 0.0);
    CHECK(no_tunneling.lambda0 == doctest::Approx(-1.2).epsilon(1e-15));
    CHECK(no_tunneling.lambda1 == doctest::Approx(0.0));
    const EigenPair bare = decay_eigenvalues(0.7, 0.0, 0.0);
    CHECK(bare.lambda0 == doctest::Approx(-0.7).epsilon(1e-15));
    CHECK(bare.lambda1 == doctest::Approx(0.0));
}

TEST_CASE("Vieta identities hold for random rates") {
    std::mt19937 rng(101);
    for (int i = 0; i < 1000; ++i) {
        const RateParams r = random_rates(rng, 1e-3, 10.0);
        const EigenPair eigs = decay_eigenvalues(r);
        CHECK(eigs.lambda0 <= eigs.lambda1);
        CHECK(eigs.lambda1 <= 1e-15);
        CHECK(std::abs(eigs.lambda0 + eigs.lambda1 + (r.l + r.m + 2.0 * r.n)) <= 1e-12);
        CHECK(std::abs(eigs.lambda0 * eigs.lambda1 - (r.l * r.n + 2.0 * r.m * r.n)) <= 1e-12);
    }
}

TEST_CASE("physical rates cannot reach the complex branch") {
    // discriminant = (l+m)^2 + 4n(n-m) >= l^2 + 2lm > 0 for l > 0
    std::mt19937 rng(103);
    for (int i = 0; i < 500; ++i) {
        const RateParams r = random_rates(rng, 1e-6, 20.0);
        CHECK_NOTHROW(decay_eigenvalues(r));
    }
}

TEST_CASE("negative discriminant raises and carries its value") {
    // only reachable with non-physical raw inputs
    try {
        decay_eigenvalues(-2.0, 6.0, 1.0);
        FAIL("expected ComplexEigenvaluesError");
    } catch (const ComplexEigenvaluesError& e) {
        CHECK(e.discriminant() < 0.0);
        CHECK(e.discriminant() == doctest::Approx(-4.0).epsilon(1e-12));
    }
}

TEST_CASE("coincident eigenvalues raise the degenerate error") {
    // (l+m+2n)^2 - 4(ln+2mn) = 36 - 36 = 0 for raw (-1, 5, 1)
    CHECK_THROWS_AS(undriven_solution(-1.0, 5.0, 1.0), DegenerateEigenvaluesError);
}

TEST_CASE("undriven solution satisfies the initial conditions") {
    std::mt19937 rng(107);
    for (int i = 0; i < 200; ++i) {
        const RateParams r = random_rates(rng, 1e-2, 5.0);
        const UndrivenSolution sol = undriven_solution(r);
        CHECK(std::abs(sol.a_const + sol.b_const + sol.c_const - 1.0) <= 1e-12);
        CHECK(sol.a_const == doctest::Approx(r.l / (2.0 * r.m + r.l)).epsilon(1e-12));
        const auto at0 = eval_populations(sol, 0.0);
        CHECK(std::abs(at0[0] - 1.0) <= 1e-10);
        CHECK(std::abs(at0[1]) <= 1e-10);
        CHECK(std::abs(at0[2]) <= 1e-10);
    }
}

TEST_CASE("the printed coefficient C matches the initial-condition derivation") {
    const RateParams r = presets::fig2_4();
    const UndrivenSolution sol = undriven_solution(r);
    const double printed_c =
        r.m * (r.l + 2.0 * (sol.eigs.lambda0 + r.m)) /
        ((2.0 * r.m + r.l) * (sol.eigs.lambda0 - sol.eigs.lambda1));
    CHECK(sol.c_const == doctest::Approx(printed_c).epsilon(1e-14));
}

TEST_CASE("populations sum to one exactly and stay in range") {
    const UndrivenSolution sol = undriven_solution(presets::fig2_4());
    for (double t = 0.0; t <= 40.0; t += 0.37) {
        const auto pops = eval_populations(sol, t);
        CHECK(pops[0] + pops[1] + pops[2] == 1.0);
        for (const double v : pops) {
            CHECK(v >= -1e-10);
            CHECK(v <= 1.0 + 1e-10);
        }
    }
    CHECK_THROWS_AS(eval_populations(sol, -0.1), ContractViolation);
}

TEST_CASE("long-time limit of the closed form is the stationary value") {
    const UndrivenSolution sol = undriven_solution(presets::fig2_4());
    const auto late = eval_populations(sol, 200.0);
    CHECK(late[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(late[1] == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(late[2] == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("rho11 leads rho22 on the way to equilibrium") {
    const UndrivenSolution sol = undriven_solution(presets::fig2_4());
    for (double t = 0.0; t <= 30.0; t += 0.1) {
        const auto pops = eval_populations(sol, t);
        CHECK(pops[1] >= pops[2] - 1e-12);
    }
}

TEST_CASE("closed form matches numeric propagation") {
    const RateParams r = presets::fig2_4();
    const UndrivenSolution sol = undriven_solution(r);
    IntegratorConfig cfg;
    cfg.dense_output_dt = 1.0;
    const Trajectory traj = integrate(build_undriven(r), DensityMatrix::ground(3), 15.0, cfg);
    for (const auto& s : traj.samples) {
        const auto closed = eval_populations(sol, s.t);
        const Eigen::VectorXd pops = s.state.populations();
        for (int k = 0; k < 3; ++k) {
            CHECK(std::abs(closed[k] - pops(k)) <= 1e-8);
        }
    }
}

TEST_CASE("closed form satisfies the corrected rate equations") {
    std::mt19937 rng(109);
    const double dt = 1e-5;
    for (int i = 0; i < 10; ++i) {
        const RateParams r = random_rates(rng, 1e-2, 2.0);
        const UndrivenSolution sol = undriven_solution(r);
        const Eigen::Matrix3d m = population_rate_matrix(r);
        for (double t = 0.5; t <= 5.0; t += 0.5) {
            const auto lo = eval_populations(sol, t - dt);
            const auto hi = eval_populations(sol, t + dt);
            const auto mid = eval_populations(sol, t);
            const Eigen::Vector3d rhs = m * Eigen::Vector3d(mid[0], mid[1], mid[2]);
            for (int c = 0; c < 3; ++c) {
                CHECK(std::abs((hi[c] - lo[c]) / (2.0 * dt) - rhs(c)) <= 1e-6);
            }
        }
    }
}

TEST_CASE("undriven stationary values") {
    const auto ref = undriven_steady(presets::fig2_4());
    CHECK(ref[0] == 0.5);
    CHECK(ref[1] == 0.25);
    CHECK(ref[2] == 0.25);
    CHECK(ref[0] + ref[1] + ref[2] == 1.0);

    const auto cold = undriven_steady(RateParams(1.0, 0.0, 0.3));
    CHECK(cold[0] == 1.0);
    CHECK(cold[1] == 0.0);

    const auto hot = undriven_steady(RateParams(0.7, 0.7, 0.0));  // infinite temperature
    CHECK(hot[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(hot[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-15));

    CHECK_THROWS_AS(undriven_steady(0.0, 0.0), DomainError);
}

TEST_CASE("stationary values do not depend on n") {
    for (const double n : {0.0, 0.1, 0.5, 3.0}) {
        const auto pops = undriven_steady(RateParams(0.8, 0.4, n));
        CHECK(pops[0] == 0.5);
        CHECK(pops[1] == 0.25);
    }
}

TEST_CASE("undriven steady vector is the fixed point of the rate matrix") {
    std::mt19937 rng(113);
    for (int i = 0; i < 100; ++i) {
        const RateParams r = random_rates(rng, 1e-2, 5.0);
        const auto ss = undriven_steady(r);
        const Eigen::Vector3d v(ss[0], ss[1], ss[2]);
        CHECK((population_rate_matrix(r) * v).cwiseAbs().maxCoeff() <= 1e-12);
    }
}

TEST_CASE("printed driven stationary formulas are quarantined with flags") {
    const PrintedDrivenSteady at_p0 = driven_steady_printed(presets::reference(0.0));
    // the printed p = 0 limit is l/(2l+m), against the undriven l/(2m+l)
    CHECK(at_p0.populations[0] == doctest::Approx(0.4).epsilon(1e-14));
    CHECK(at_p0.p0_reference_rho00 == doctest::Approx(0.5).epsilon(1e-14));
    CHECK_FALSE(at_p0.p0_consistent);
    CHECK(at_p0.p0_discrepancy == doctest::Approx(0.1).epsilon(1e-12));

    const PrintedDrivenSteady finite = driven_steady_printed(presets::fig8_9());
    CHECK_FALSE(finite.trace_consistent);
    CHECK(finite.trace_error > 1e-3);
    CHECK(finite.populations[1] == finite.populations[2]);

    const PrintedDrivenSteady large = driven_steady_printed(presets::reference(1e4));
    for (const double v : large.populations) {
        CHECK(std::abs(v - 1.0 / 3.0) <= 1e-6);
    }

    CHECK_THROWS_AS(driven_steady_printed(RateParams(1.0, 0.0, 0.0, 1.0)), DomainError);
}

TEST_CASE("null-space oracle for the driven stationary state") {
    const auto at_p0 = driven_steady_oracle(presets::reference(0.0));
    CHECK(at_p0[0] == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(at_p0[1] == doctest::Approx(0.25).epsilon(1e-10));

    const auto strong = driven_steady_oracle(presets::reference(8.0));
    for (const double v : strong) {
        CHECK(std::abs(v - 1.0 / 3.0) <= 0.02);
    }

    const auto weak = driven_steady_oracle(presets::reference(0.4));
    CHECK(weak[0] > 1.0 / 3.0);
    CHECK(weak[0] < 0.5);
    CHECK(std::abs(weak[1] - weak[2]) <= 1e-10);
}

TEST_CASE("oracle at p = 0 equals the undriven closed form for random rates") {
    std::mt19937 rng(127);
    for (int i = 0; i < 20; ++i) {
        const RateParams base = random_rates(rng, 0.1, 5.0);
        const auto oracle = driven_steady_oracle(base);
        const auto closed = undriven_steady(base);
        for (int k = 0; k < 3; ++k) {
            CHECK(std::abs(oracle[k] - closed[k]) <= 1e-10);
        }
    }
}

TEST_CASE("driven stationary rho00 never falls below 1/3") {
    for (const double p : {0.1, 0.4, 1.0, 4.0, 20.0, 100.0}) {
        const auto pops = driven_steady_oracle(presets::reference(p));
        CHECK(pops[0] >= 1.0 / 3.0 - 1e-9);
    }
}
