#include "qdmol/propagate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qdmol {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double a21 = 1.0 / 5.0;
constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0,
                 a54 = -212.0 / 729.0;
constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                 a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0,
                 b5 = -2187.0 / 6784.0, b6 = 11.0 / 84.0;
// Difference between the 5th- and embedded 4th-order weights.
constexpr double e1 = b1 - 5179.0 / 57600.0, e3 = b3 - 7571.0 / 16695.0,
                 e4 = b4 - 393.0 / 640.0, e5 = b5 + 92097.0 / 339200.0,
                 e6 = b6 - 187.0 / 2100.0, e7 = -1.0 / 40.0;

double error_norm(const ComplexVector& err, const ComplexVector& y0, const ComplexVector& y1,
                  double abs_tol, double rel_tol) {
    double acc = 0.0;
    for (Eigen::Index i = 0; i < err.size(); ++i) {
        const double scale = abs_tol + rel_tol * std::max(std::abs(y0(i)), std::abs(y1(i)));
        const double q = std::abs(err(i)) / scale;
        acc += q * q;
    }
    return std::sqrt(acc / static_cast<double>(err.size()));
}

struct SampleRecorder {
    Trajectory* traj;
    ValidationTolerances sample_tol;

    void record(double t, const ComplexVector& y, Eigen::Index dim) {
        ComplexMatrix rho = unstack_columns(y, dim);
        const double herm_drift = hermiticity_defect(rho);
        rho = hermitize(rho);
        const double trace_drift = trace_defect(rho);
        traj->stats.max_hermiticity_drift =
            std::max(traj->stats.max_hermiticity_drift, herm_drift);
        traj->stats.max_trace_drift = std::max(traj->stats.max_trace_drift, trace_drift);
        traj->samples.push_back({t, DensityMatrix::validated(std::move(rho), sample_tol)});
    }
};

}  // namespace

Trajectory integrate(const Generator& gen, const DensityMatrix& rho0, double t_end,
                     const IntegratorConfig& cfg) {
    if (!(t_end > 0.0)) {
        throw ContractViolation("integrate requires t_end > 0");
    }
    if (!(cfg.rel_tol > 0.0) || !(cfg.abs_tol > 0.0) || !(cfg.dense_output_dt > 0.0)) {
        throw ContractViolation("integrator tolerances and dt must be positive");
    }
    if (rho0.dim() != gen.dim()) {
        throw ContractViolation("initial state dimension mismatch");
    }

    const ComplexMatrix sup = gen.liouvillian();
    const Eigen::Index dim = gen.dim();
    const double rate_scale = std::max(1.0, max_abs(sup));
    const double max_step = cfg.max_step > 0.0 ? cfg.max_step : 0.1 / rate_scale;
    const double min_step = 1e-12 * t_end;

    Trajectory traj;
    // Propagation drifts may exceed construction tolerances; the contract
    // bounds are 1e-9 on trace and -1e-8 on the spectrum.
    SampleRecorder recorder{&traj, ValidationTolerances{1e-10, 1e-8, 1e-8}};

    ComplexVector y = stack_columns(rho0.matrix());
    recorder.record(0.0, y, dim);

    const double t_eps = 1e-12 * std::max(1.0, t_end);
    auto sample_time = [&](long k) {
        const double s = static_cast<double>(k) * cfg.dense_output_dt;
        return s > t_end - t_eps ? t_end : s;
    };

    double t = 0.0;
    long sample_k = 1;
    double h_prop = std::min(max_step, cfg.dense_output_dt);
    ComplexVector k1 = sup * y;  // FSAL
    ComplexVector k2(y.size()), k3(y.size()), k4(y.size()), k5(y.size()), k6(y.size()),
        k7(y.size());

    while (t < t_end - t_eps) {
        const double target = sample_time(sample_k);
        double h = std::min(h_prop, max_step);
        bool clamped = false;
        if (t + h >= target - t_eps) {
            h = target - t;
            clamped = true;
        }

        k2 = sup * (y + h * (a21 * k1));
        k3 = sup * (y + h * (a31 * k1 + a32 * k2));
        k4 = sup * (y + h * (a41 * k1 + a42 * k2 + a43 * k3));
        k5 = sup * (y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
        k6 = sup * (y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
        const ComplexVector y_new =
            y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        k7 = sup * y_new;
        const ComplexVector err =
            h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

        const double err_norm = error_norm(err, y, y_new, cfg.abs_tol, cfg.rel_tol);
        const double factor =
            err_norm == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err_norm, -0.2), 0.2, 5.0);
        if (err_norm <= 1.0) {
            y = y_new;
            k1 = k7;
            ++traj.stats.accepted_steps;
            if (clamped) {
                t = target;
                ++sample_k;
                recorder.record(t, y, dim);
                // An event-shortened step says nothing against the current
                // proposal; only let it grow.
                h_prop = std::max(h_prop, h * factor);
            } else {
                t += h;
                h_prop = h * factor;
            }
        } else {
            ++traj.stats.rejected_steps;
            h_prop = h * factor;
            if (h_prop < min_step) {
                throw StiffnessError("integrator step underflow: required step " +
                                     std::to_string(h_prop) + " below " +
                                     std::to_string(min_step));
            }
        }
    }
    return traj;
}

ComplexMatrix fixed_step_endpoint(const Generator& gen, const DensityMatrix& rho0,
                                  double t_end, long n_steps) {
    if (!(t_end > 0.0) || n_steps < 1) {
        throw ContractViolation("fixed_step_endpoint requires t_end > 0 and n_steps >= 1");
    }
    const ComplexMatrix sup = gen.liouvillian();
    const double h = t_end / static_cast<double>(n_steps);
    ComplexVector y = stack_columns(rho0.matrix());
    for (long i = 0; i < n_steps; ++i) {
        const ComplexVector k1 = sup * y;
        const ComplexVector k2 = sup * (y + 0.5 * h * k1);
        const ComplexVector k3 = sup * (y + 0.5 * h * k2);
        const ComplexVector k4 = sup * (y + h * k3);
        y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return unstack_columns(y, gen.dim());
}

DensityMatrix steady_state(const Generator& gen) {
    const ComplexMatrix sup = gen.liouvillian();
    Eigen::JacobiSVD<ComplexMatrix> svd(sup, Eigen::ComputeFullV);
    const Eigen::VectorXd sigma = svd.singularValues();
    const double sigma_max = sigma(0);
    const double null_tol = 1e-10 * std::max(sigma_max, 1e-30);

    int null_dim = 0;
    for (Eigen::Index i = 0; i < sigma.size(); ++i) {
        if (sigma(i) < null_tol) {
            ++null_dim;
        }
    }
    if (sigma_max == 0.0) {
        null_dim = static_cast<int>(sigma.size());
    }
    if (null_dim != 1) {
        throw DegenerateSteadyStateError(
            "Liouvillian null space has dimension " + std::to_string(null_dim), null_dim);
    }

    ComplexMatrix rho = hermitize(unstack_columns(svd.matrixV().col(sigma.size() - 1), gen.dim()));
    const double tr = rho.trace().real();
    if (std::abs(tr) < 1e-12 * rho.cwiseAbs().maxCoeff()) {
        throw NonPhysicalFixedPointError("stationary null vector is traceless");
    }
    rho /= tr;

    const ValidationReport report = validate_density(rho, 1e-8);
    if (!report.positive_ok) {
        throw NonPhysicalFixedPointError("stationary state has eigenvalue " +
                                         std::to_string(report.min_eigenvalue));
    }
    return DensityMatrix::validated(std::move(rho), ValidationTolerances{1e-8, 1e-8, 1e-8});
}

double spectral_relaxation_time(const Generator& gen) {
    const ComplexMatrix sup = gen.liouvillian();
    Eigen::ComplexEigenSolver<ComplexMatrix> es(sup, false);
    const ComplexVector eigs = es.eigenvalues();
    const double scale = std::max(1.0, eigs.cwiseAbs().maxCoeff());
    double gap = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < eigs.size(); ++i) {
        if (std::abs(eigs(i)) > 1e-10 * scale) {
            gap = std::min(gap, -eigs(i).real());
        }
    }
    if (!std::isfinite(gap) || gap <= 0.0) {
        throw DegenerateSteadyStateError("no decaying Liouvillian mode; relaxation undefined",
                                         static_cast<int>(eigs.size()));
    }
    return 1.0 / gap;
}

AgreementReport long_time_agreement(const Generator& gen, const DensityMatrix& rho0,
                                    double t_end, double tolerance) {
    const DensityMatrix ss = steady_state(gen);
    if (t_end <= 0.0) {
        t_end = 20.0 * spectral_relaxation_time(gen);
    }
    IntegratorConfig cfg;
    cfg.dense_output_dt = t_end;  // endpoint only
    const Trajectory traj = integrate(gen, rho0, t_end, cfg);
    const double distance =
        max_abs(traj.samples.back().state.matrix() - ss.matrix());
    return AgreementReport{distance, t_end, tolerance, distance <= tolerance};
}

Eigen::VectorXd population_series(const Trajectory& traj, int level) {
    Eigen::VectorXd out(static_cast<Eigen::Index>(traj.samples.size()));
    for (size_t i = 0; i < traj.samples.size(); ++i) {
        out(static_cast<Eigen::Index>(i)) =
            traj.samples[i].state.matrix()(level, level).real();
    }
    return out;
}

int count_oscillations(const Trajectory& traj, int level, double prominence) {
    if (traj.samples.size() < 3) {
        throw ContractViolation("oscillation count needs at least 3 samples");
    }
    if (level < 0 || level >= traj.samples.front().state.dim()) {
        throw ContractViolation("population index out of range");
    }
    const Eigen::VectorXd v = population_series(traj, level);
    // Zigzag scan: an extremum counts once the series reverses by at least
    // the prominence threshold on both sides.
    int direction = 0;
    double anchor = v(0);
    int count = 0;
    for (Eigen::Index i = 1; i < v.size(); ++i) {
        const double x = v(i);
        if (direction == 0) {
            if (std::abs(x - anchor) >= prominence) {
                direction = x > anchor ? 1 : -1;
                anchor = x;
            }
        } else if (direction > 0) {
            if (x > anchor) {
                anchor = x;
            } else if (anchor - x >= prominence) {
                ++count;
                direction = -1;
                anchor = x;
            }
        } else {
            if (x < anchor) {
                anchor = x;
            } else if (x - anchor >= prominence) {
                ++count;
                direction = 1;
                anchor = x;
            }
        }
    }
    return count;
}

double settle_time(const Trajectory& traj, const DensityMatrix& rho_ss, double eps) {
    if (traj.samples.empty()) {
        throw ContractViolation("settle_time on empty trajectory");
    }
    double result = traj.samples.front().t;
    bool inside = false;
    for (const auto& sample : traj.samples) {
        const double d = max_abs(sample.state.matrix() - rho_ss.matrix());
        if (d > eps) {
            inside = false;
        } else if (!inside) {
            inside = true;
            result = sample.t;
        }
    }
    return inside ? result : std::numeric_limits<double>::infinity();
}

}  // namespace qdmol
