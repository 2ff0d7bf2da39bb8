#include "qdmol/validate.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <sstream>
#include <vector>

#include "qdmol/analytic.hpp"
#include "qdmol/core.hpp"
#include "qdmol/model.hpp"
#include "qdmol/propagate.hpp"

namespace qdmol {

namespace {

using Rng = std::mt19937;

ComplexMatrix random_complex(Rng& rng, Eigen::Index dim) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    ComplexMatrix g(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        for (Eigen::Index j = 0; j < dim; ++j) {
            g(i, j) = Complex(gauss(rng), gauss(rng));
        }
    }
    return g;
}

/// Wishart-normalized random state: Hermitian, unit trace, positive.
DensityMatrix random_density(Rng& rng, Eigen::Index dim = 3) {
    const ComplexMatrix g = random_complex(rng, dim);
    ComplexMatrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    return DensityMatrix::validated(hermitize(rho), ValidationTolerances{1e-12, 1e-12, 1e-10});
}

ComplexMatrix random_hermitian(Rng& rng, Eigen::Index dim = 3) {
    return hermitize(random_complex(rng, dim));
}

RateParams random_rates(Rng& rng, double lo, double hi, double p = 0.0) {
    std::uniform_real_distribution<double> u(lo, hi);
    double l = u(rng);
    double m = u(rng);
    double n = u(rng);
    while (m > l) {  // the rate invariant l >= m restricts the cube
        l = u(rng);
        m = u(rng);
    }
    return RateParams(l, m, n, p);
}

std::vector<std::pair<std::string, Generator>> shipped_generators() {
    std::vector<std::pair<std::string, Generator>> gens;
    gens.emplace_back("fig2-4", build_undriven(presets::fig2_4()));
    gens.emplace_back("fig5-7", build_driven(presets::fig5_7()));
    gens.emplace_back("fig8-9", build_driven(presets::fig8_9()));
    gens.emplace_back("fig10-11", build_driven(presets::fig10_11()));
    gens.emplace_back("fig12-13", build_driven(presets::fig12_13()));
    gens.emplace_back("zero-temperature", build_undriven(RateParams(1.0, 0.0, 0.5)));
    return gens;
}

struct Harness {
    std::vector<CheckResult> results;

    void run(const std::string& name, const std::function<std::string()>& body) {
        try {
            std::string detail = body();
            results.push_back({name, true, std::move(detail)});
        } catch (const std::exception& e) {
            results.push_back({name, false, e.what()});
        }
    }
};

struct CheckFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void expect(bool cond, const std::string& msg) {
    if (!cond) {
        throw CheckFailure(msg);
    }
}

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(6);
    os << x;
    return os.str();
}

}  // namespace

std::vector<CheckResult> run_validation_suite(Fault fault, unsigned seed) {
    testhooks::flip_dissipator_sign = (fault == Fault::dissipator_sign);
    Harness h;
    const auto gens = shipped_generators();

    h.run("dissipator-hermitian-traceless", [&] {
        Rng rng(seed);
        double worst = 0.0;
        for (const auto& [name, gen] : gens) {
            for (int i = 0; i < 20; ++i) {
                const DensityMatrix rho = random_density(rng);
                for (const auto& term : gen.terms()) {
                    const ComplexMatrix d = dissipator(term, rho.matrix());
                    worst = std::max(worst, hermiticity_defect(d));
                    worst = std::max(worst, std::abs(d.trace()));
                }
            }
        }
        expect(worst <= 1e-12, "dissipator defect " + fmt(worst));
        return "max defect " + fmt(worst);
    });

    h.run("generator-trace-preservation", [&] {
        Rng rng(seed + 1);
        double worst = 0.0;
        for (const auto& [name, gen] : gens) {
            for (int i = 0; i < 100; ++i) {
                const ComplexMatrix out = gen.apply(random_density(rng).matrix());
                worst = std::max(worst, std::abs(out.trace()));
            }
        }
        expect(worst <= 1e-12, "trace leak " + fmt(worst));
        return "max |tr| " + fmt(worst);
    });

    h.run("generator-hermiticity-preservation", [&] {
        Rng rng(seed + 2);
        double worst = 0.0;
        for (const auto& [name, gen] : gens) {
            for (int i = 0; i < 100; ++i) {
                worst = std::max(
                    worst, hermiticity_defect(gen.apply(random_hermitian(rng))));
            }
        }
        expect(worst <= 1e-12, "hermiticity defect " + fmt(worst));
        return "max defect " + fmt(worst);
    });

    h.run("generator-linearity", [&] {
        Rng rng(seed + 3);
        std::uniform_real_distribution<double> coeff(-2.0, 2.0);
        double worst = 0.0;
        for (const auto& [name, gen] : gens) {
            for (int i = 0; i < 20; ++i) {
                const ComplexMatrix r1 = random_hermitian(rng);
                const ComplexMatrix r2 = random_hermitian(rng);
                const double a = coeff(rng);
                const double b = coeff(rng);
                const ComplexMatrix lhs = gen.apply(a * r1 + b * r2);
                const ComplexMatrix rhs = a * gen.apply(r1) + b * gen.apply(r2);
                worst = std::max(worst, max_abs(lhs - rhs));
            }
        }
        expect(worst <= 1e-12, "linearity defect " + fmt(worst));
        return "max defect " + fmt(worst);
    });

    h.run("liouvillian-matrix-agreement", [&] {
        Rng rng(seed + 4);
        double worst = 0.0;
        for (const auto& [name, gen] : gens) {
            const ComplexMatrix sup = gen.liouvillian();
            for (int i = 0; i < 50; ++i) {
                const DensityMatrix rho = random_density(rng);
                const ComplexMatrix direct = gen.apply(rho.matrix());
                const ComplexMatrix via_sup =
                    unstack_columns(sup * stack_columns(rho.matrix()), gen.dim());
                worst = std::max(worst, max_abs(direct - via_sup));
            }
        }
        expect(worst <= 1e-12, "vectorization mismatch " + fmt(worst));
        return "max mismatch " + fmt(worst);
    });

    h.run("liouvillian-null-vector-physical", [&] {
        double worst = 0.0;
        for (const auto& [name, gen] : gens) {
            const DensityMatrix ss = steady_state(gen);
            worst = std::min(worst, min_eigenvalue(ss.matrix()));
            const double residual = max_abs(gen.apply(ss));
            expect(residual <= 1e-10, name + " residual " + fmt(residual));
        }
        expect(worst >= -1e-10, "negative steady eigenvalue " + fmt(worst));
        return "min steady eigenvalue " + fmt(worst);
    });

    h.run("population-rate-matrix-embedding", [&] {
        const Generator gen = build_undriven(presets::fig2_4());
        const ComplexMatrix sup = gen.liouvillian();
        const Eigen::Matrix3d m = population_rate_matrix(presets::fig2_4());
        const int pop_idx[3] = {0, 4, 8};
        double worst = 0.0;
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 9; ++j) {
                const bool in_pop = (j == 0 || j == 4 || j == 8);
                const Complex entry = sup(pop_idx[i], j);
                if (in_pop) {
                    const int jj = j / 4;
                    worst = std::max(worst, std::abs(entry - Complex(m(i, jj), 0.0)));
                } else {
                    worst = std::max(worst, std::abs(entry));  // sector closure
                }
            }
        }
        expect(worst <= 1e-14, "embedding defect " + fmt(worst));
        return "max defect " + fmt(worst);
    });

    h.run("decay-eigenvalues-vieta", [&] {
        Rng rng(seed + 5);
        double worst = 0.0;
        for (int i = 0; i < 1000; ++i) {
            const RateParams r = random_rates(rng, 1e-3, 10.0);
            const EigenPair eigs = decay_eigenvalues(r);
            expect(eigs.lambda0 <= eigs.lambda1 && eigs.lambda1 <= 1e-15,
                   "eigenvalue ordering violated");
            const double sum_defect =
                std::abs(eigs.lambda0 + eigs.lambda1 + (r.l + r.m + 2.0 * r.n));
            const double prod_defect =
                std::abs(eigs.lambda0 * eigs.lambda1 - (r.l * r.n + 2.0 * r.m * r.n));
            const double scale = std::max(1.0, r.l + r.m + 2.0 * r.n);
            worst = std::max(worst, std::max(sum_defect, prod_defect) / (scale * scale));
            // cross-check against a numeric eigendecomposition of M
            Eigen::EigenSolver<Eigen::Matrix3d> es(population_rate_matrix(r));
            std::vector<double> numeric;
            for (int k = 0; k < 3; ++k) {
                numeric.push_back(es.eigenvalues()(k).real());
            }
            std::sort(numeric.begin(), numeric.end());
            worst = std::max(worst, std::abs(numeric[0] - eigs.lambda0) / scale);
            worst = std::max(worst, std::abs(numeric[1] - eigs.lambda1) / scale);
        }
        expect(worst <= 1e-12, "vieta defect " + fmt(worst));
        return "max scaled defect " + fmt(worst);
    });

    h.run("rates-identity-l-minus-m", [&] {
        Rng rng(seed + 6);
        std::uniform_real_distribution<double> ug(0.01, 5.0);
        std::uniform_real_distribution<double> un(0.0, 4.0);
        double worst = 0.0;
        for (int i = 0; i < 200; ++i) {
            const PhysicalParams phys(ug(rng), un(rng), un(rng), un(rng));
            const RateParams r = rates_from_physical(phys);
            worst = std::max(worst,
                             std::abs(r.l - r.m - phys.gamma01) / std::max(1.0, r.l));
        }
        const RateParams ref = rates_from_physical(PhysicalParams(0.4, 1.0, 0.5, 0.8));
        expect(ref.l == 0.8 && ref.m == 0.4 && ref.n == 0.5 && ref.p == 0.4,
               "reference preset conversion drifted");
        expect(worst <= 5e-16, "identity defect " + fmt(worst));
        return "max relative defect " + fmt(worst);
    });

    h.run("driven-p0-reduction", [&] {
        Rng rng(seed + 7);
        double worst = 0.0;
        for (int trial = 0; trial < 5; ++trial) {
            const RateParams r = random_rates(rng, 1e-2, 5.0, 0.0);
            const Generator driven = build_driven(r);
            const Generator undriven = build_undriven(r);
            for (int i = 0; i < 20; ++i) {
                const DensityMatrix rho = random_density(rng);
                worst = std::max(worst, max_abs(driven.apply(rho) - undriven.apply(rho)));
            }
        }
        expect(worst <= 1e-14, "p=0 mismatch " + fmt(worst));
        return "max mismatch " + fmt(worst);
    });

    h.run("detailed-balance-steady", [&] {
        Rng rng(seed + 8);
        double worst = 0.0;
        for (int i = 0; i < 20; ++i) {
            const RateParams r = random_rates(rng, 0.1, 5.0);
            const DensityMatrix ss = steady_state(build_undriven(r));
            const Eigen::VectorXd pops = ss.populations();
            worst = std::max(worst, std::abs(r.l * pops(1) - r.m * pops(0)));
            worst = std::max(worst, std::abs(pops(1) - pops(2)));
        }
        expect(worst <= 1e-10, "detailed balance defect " + fmt(worst));
        return "max defect " + fmt(worst);
    });

    h.run("population-sector-closure", [&] {
        Rng rng(seed + 9);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        double worst = 0.0;
        IntegratorConfig cfg;
        cfg.dense_output_dt = 0.5;
        for (int i = 0; i < 3; ++i) {
            Eigen::Vector3d diag(u(rng), u(rng), u(rng));
            diag /= diag.sum();
            const Trajectory traj = integrate(build_undriven(presets::fig2_4()),
                                              DensityMatrix::from_diagonal(diag), 20.0, cfg);
            for (const auto& s : traj.samples) {
                ComplexMatrix off = s.state.matrix();
                off.diagonal().setZero();
                worst = std::max(worst, max_abs(off));
            }
        }
        expect(worst <= 1e-12, "off-diagonal leak " + fmt(worst));
        return "max off-diagonal " + fmt(worst);
    });

    h.run("closed-form-propagation-agreement", [&] {
        Rng rng(seed + 10);
        double worst = 0.0;
        IntegratorConfig cfg;
        cfg.dense_output_dt = 30.0 / 50.0;
        for (int trial = 0; trial < 20; ++trial) {
            const RateParams r = random_rates(rng, 1e-2, 2.0);
            const UndrivenSolution sol = undriven_solution(r);
            const Trajectory traj =
                integrate(build_undriven(r), DensityMatrix::ground(3), 30.0, cfg);
            for (const auto& s : traj.samples) {
                const auto closed = eval_populations(sol, s.t);
                const Eigen::VectorXd pops = s.state.populations();
                for (int k = 0; k < 3; ++k) {
                    worst = std::max(worst, std::abs(closed[k] - pops(k)));
                }
            }
        }
        expect(worst <= 1e-8, "closed form vs propagation " + fmt(worst));
        return "max deviation " + fmt(worst);
    });

    h.run("closed-form-ode-residual", [&] {
        Rng rng(seed + 11);
        double worst = 0.0;
        const double dt = 1e-5;
        for (int trial = 0; trial < 20; ++trial) {
            const RateParams r = random_rates(rng, 1e-2, 2.0);
            const UndrivenSolution sol = undriven_solution(r);
            const Eigen::Matrix3d m = population_rate_matrix(r);
            for (int k = 1; k <= 10; ++k) {
                const double t = 0.5 * k;
                const auto lo = eval_populations(sol, t - dt);
                const auto hi = eval_populations(sol, t + dt);
                const auto mid = eval_populations(sol, t);
                const Eigen::Vector3d v(mid[0], mid[1], mid[2]);
                const Eigen::Vector3d rhs = m * v;
                for (int c = 0; c < 3; ++c) {
                    const double deriv = (hi[c] - lo[c]) / (2.0 * dt);
                    worst = std::max(worst, std::abs(deriv - rhs(c)));
                }
            }
        }
        expect(worst <= 1e-6, "ODE residual " + fmt(worst));
        return "max residual " + fmt(worst);
    });

    h.run("closed-form-initial-conditions", [&] {
        Rng rng(seed + 12);
        double worst = 0.0;
        for (int trial = 0; trial < 100; ++trial) {
            const RateParams r = random_rates(rng, 1e-2, 5.0);
            const UndrivenSolution sol = undriven_solution(r);
            worst = std::max(worst,
                             std::abs(sol.a_const + sol.b_const + sol.c_const - 1.0));
            const auto at0 = eval_populations(sol, 0.0);
            worst = std::max(worst, std::abs(at0[0] - 1.0));
            worst = std::max(worst, std::abs(at0[1]));
            worst = std::max(worst, std::abs(at0[2]));
        }
        expect(worst <= 1e-10, "initial condition defect " + fmt(worst));
        return "max defect " + fmt(worst);
    });

    h.run("undriven-steady-fixed-point", [&] {
        Rng rng(seed + 13);
        double worst = 0.0;
        for (int trial = 0; trial < 100; ++trial) {
            const RateParams r = random_rates(rng, 1e-2, 5.0);
            const auto ss = undriven_steady(r);
            const Eigen::Vector3d v(ss[0], ss[1], ss[2]);
            worst = std::max(worst, (population_rate_matrix(r) * v).cwiseAbs().maxCoeff());
        }
        expect(worst <= 1e-12, "fixed point residual " + fmt(worst));
        return "max residual " + fmt(worst);
    });

    h.run("driven-oracle-p0-agreement", [&] {
        Rng rng(seed + 14);
        double worst = 0.0;
        for (int trial = 0; trial < 20; ++trial) {
            const RateParams r = random_rates(rng, 0.1, 5.0);
            const auto oracle = driven_steady_oracle(r);
            const auto closed = undriven_steady(r);
            for (int k = 0; k < 3; ++k) {
                worst = std::max(worst, std::abs(oracle[k] - closed[k]));
            }
        }
        expect(worst <= 1e-10, "p=0 oracle mismatch " + fmt(worst));
        return "max mismatch " + fmt(worst);
    });

    h.run("drive-monotonicity", [&] {
        const double ps[] = {0.0, 0.4, 0.8, 1.6, 8.0};
        double prev = std::numeric_limits<double>::infinity();
        for (const double p : ps) {
            const auto pops = driven_steady_oracle(presets::reference(p));
            expect(pops[0] <= prev + 1e-12,
                   "rho00 increased at p=" + fmt(p) + ": " + fmt(pops[0]));
            if (p > 0.0) {
                expect(pops[0] >= 1.0 / 3.0 - 1e-9,
                       "rho00 fell below 1/3 at p=" + fmt(p));
            }
            prev = pops[0];
        }
        return "rho00 non-increasing over the drive sweep, bounded by 1/3";
    });

    h.run("driven-high-intensity-limit", [&] {
        const double ps[] = {0.4, 0.8, 1.6, 8.0, 80.0};
        double prev = std::numeric_limits<double>::infinity();
        double at8 = 0.0, at80 = 0.0;
        for (const double p : ps) {
            const auto pops = driven_steady_oracle(presets::reference(p));
            double dev = 0.0;
            for (int k = 0; k < 3; ++k) {
                dev = std::max(dev, std::abs(pops[k] - 1.0 / 3.0));
            }
            expect(dev < prev, "deviation from 1/3 not strictly decreasing at p=" + fmt(p));
            prev = dev;
            if (p == 8.0) at8 = dev;
            if (p == 80.0) at80 = dev;
        }
        expect(at8 <= 0.05, "p=8 deviation " + fmt(at8));
        expect(at80 <= 0.005, "p=80 deviation " + fmt(at80));
        return "deviation p=8: " + fmt(at8) + ", p=80: " + fmt(at80);
    });

    h.run("printed-driven-steady-audit", [&] {
        const PrintedDrivenSteady at_p0 = driven_steady_printed(presets::reference(0.0));
        expect(!at_p0.p0_consistent, "printed p=0 inconsistency not flagged");
        expect(std::abs(at_p0.populations[0] -
                        0.8 / (2.0 * 0.8 + 0.4)) <= 1e-12,
               "printed p=0 value is not l/(2l+m)");
        const PrintedDrivenSteady at_large = driven_steady_printed(presets::reference(1e4));
        for (int k = 0; k < 3; ++k) {
            expect(std::abs(at_large.populations[k] - 1.0 / 3.0) <= 1e-6,
                   "printed high-intensity limit misses 1/3");
        }
        const PrintedDrivenSteady finite = driven_steady_printed(presets::reference(0.8));
        expect(!finite.trace_consistent, "printed finite-p trace defect not flagged");
        return "p=0 flagged, trace defect flagged, p->infinity limit 1/3";
    });

    h.run("trajectory-physicality", [&] {
        double trace_drift = 0.0;
        double herm_drift = 0.0;
        double min_eig = 0.0;
        IntegratorConfig cfg;
        cfg.dense_output_dt = 0.05;
        for (const auto& [name, gen] : gens) {
            const Trajectory traj = integrate(gen, DensityMatrix::ground(3), 30.0, cfg);
            trace_drift = std::max(trace_drift, traj.stats.max_trace_drift);
            herm_drift = std::max(herm_drift, traj.stats.max_hermiticity_drift);
            for (const auto& s : traj.samples) {
                min_eig = std::min(min_eig, min_eigenvalue(s.state.matrix()));
            }
        }
        expect(trace_drift <= 1e-9, "trace drift " + fmt(trace_drift));
        expect(herm_drift <= 1e-9, "hermiticity drift " + fmt(herm_drift));
        expect(min_eig >= -1e-8, "negative eigenvalue " + fmt(min_eig));
        return "trace drift " + fmt(trace_drift) + ", min eigenvalue " + fmt(min_eig);
    });

    h.run("oracle-triangle", [&] {
        // analytic <-> integrate <-> null space on the undriven preset
        const RateParams ref = presets::fig2_4();
        const Generator gen = build_undriven(ref);
        const UndrivenSolution sol = undriven_solution(ref);
        IntegratorConfig cfg;
        cfg.dense_output_dt = 0.6;
        const Trajectory traj = integrate(gen, DensityMatrix::ground(3), 30.0, cfg);
        double worst = 0.0;
        for (const auto& s : traj.samples) {
            const auto closed = eval_populations(sol, s.t);
            for (int k = 0; k < 3; ++k) {
                worst = std::max(worst, std::abs(closed[k] - s.state.populations()(k)));
            }
        }
        expect(worst <= 1e-8, "analytic vs integrate " + fmt(worst));
        const auto closed_ss = undriven_steady(ref);
        const Eigen::VectorXd null_ss = steady_state(gen).populations();
        for (int k = 0; k < 3; ++k) {
            expect(std::abs(closed_ss[k] - null_ss(k)) <= 1e-10,
                   "closed form vs null space steady state");
        }
        // integrate <-> null space for every driven preset
        for (const auto& [name, gen2] : gens) {
            const AgreementReport rep =
                long_time_agreement(gen2, DensityMatrix::ground(3), 0.0, 1e-6);
            expect(rep.pass, name + " long-time disagreement " + fmt(rep.distance));
        }
        return "triangle closed, max closed-form deviation " + fmt(worst);
    });

    h.run("fixed-step-convergence-order", [&] {
        const Generator gen = build_undriven(presets::fig2_4());
        const UndrivenSolution sol = undriven_solution(presets::fig2_4());
        const auto exact = eval_populations(sol, 10.0);
        double errs[3];
        const long steps[3] = {100, 200, 400};
        for (int i = 0; i < 3; ++i) {
            const ComplexMatrix end =
                fixed_step_endpoint(gen, DensityMatrix::ground(3), 10.0, steps[i]);
            double e = 0.0;
            for (int k = 0; k < 3; ++k) {
                e = std::max(e, std::abs(end(k, k).real() - exact[k]));
            }
            errs[i] = e;
        }
        expect(errs[0] / errs[1] >= 8.0, "halving gain " + fmt(errs[0] / errs[1]));
        expect(errs[1] / errs[2] >= 8.0, "halving gain " + fmt(errs[1] / errs[2]));
        return "error ratios " + fmt(errs[0] / errs[1]) + ", " + fmt(errs[1] / errs[2]);
    });

    h.run("oscillation-trend", [&] {
        IntegratorConfig cfg;
        cfg.dense_output_dt = 0.02;
        const Trajectory undriven =
            integrate(build_undriven(presets::fig2_4()), DensityMatrix::ground(3), 30.0, cfg);
        expect(count_oscillations(undriven, 0) == 0, "undriven rho00 is not monotone");
        const double ps[] = {0.4, 0.8, 1.6, 8.0};
        int prev = -1;
        std::string counts;
        for (const double p : ps) {
            const Trajectory traj = integrate(build_driven(presets::reference(p)),
                                              DensityMatrix::ground(3), 80.0, cfg);
            const int c = count_oscillations(traj, 0);
            expect(c >= prev, "oscillation count dropped at p=" + fmt(p));
            prev = c;
            counts += (counts.empty() ? "" : ",") + std::to_string(c);
        }
        return "rho00 counts over l/p={2,1,1/2,1/10}: " + counts;
    });

    h.run("relaxation-trend-spectral", [&] {
        const double ps[] = {0.4, 0.8, 1.6, 8.0};
        double prev = 0.0;
        std::string times;
        for (const double p : ps) {
            const double tau = spectral_relaxation_time(build_driven(presets::reference(p)));
            expect(tau >= prev - 1e-9, "relaxation estimate decreased at p=" + fmt(p));
            prev = tau;
            times += (times.empty() ? "" : ",") + fmt(tau);
        }
        return "spectral relaxation times " + times;
    });

    testhooks::flip_dissipator_sign = false;
    return h.results;
}

}  // namespace qdmol
