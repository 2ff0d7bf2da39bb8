#pragma once

#include <vector>

#include "qdmol/core.hpp"

namespace qdmol {

struct IntegratorConfig {
    double rel_tol = 1e-9;
    double abs_tol = 1e-11;
    /// Step-size ceiling; 0 selects 0.1 / max(1, largest Liouvillian entry),
    /// i.e. a tenth of the fastest rate scale in the generator.
    double max_step = 0.0;
    /// Sampling interval of the returned trajectory.
    double dense_output_dt = 0.1;
};

struct TrajectoryStats {
    long accepted_steps = 0;
    long rejected_steps = 0;
    double max_trace_drift = 0.0;        // max |tr rho(t) - 1| over samples
    double max_hermiticity_drift = 0.0;  // before re-Hermitization, per sample
};

struct TrajectorySample {
    double t;
    DensityMatrix state;
};

/// Dense-output samples at 0, dt, 2dt, ..., t_end (t_end always included),
/// times strictly increasing. Samples are re-Hermitized before storage; the
/// recorded drifts stay bounded by the integrator tolerances.
struct Trajectory {
    std::vector<TrajectorySample> samples;
    TrajectoryStats stats;
};

/// One population component over the sample grid.
Eigen::VectorXd population_series(const Trajectory& traj, int level);

/// Adaptive Dormand-Prince 5(4) propagation of the vectorized state
/// d/dt vec(rho) = L vec(rho). Throws StiffnessError if the controller
/// demands a step below 1e-12 * t_end.
Trajectory integrate(const Generator& gen, const DensityMatrix& rho0, double t_end,
                     const IntegratorConfig& cfg = {});

/// Classical fixed-step fourth-order endpoint, for convergence studies.
ComplexMatrix fixed_step_endpoint(const Generator& gen, const DensityMatrix& rho0,
                                  double t_end, long n_steps);

/// Stationary state from the null space of the vectorized Liouvillian
/// (SVD, Hermitized, trace-normalized). Throws DegenerateSteadyStateError
/// when the null space is not one-dimensional and NonPhysicalFixedPointError
/// when the normalized fixed point fails the density checks at 1e-8.
DensityMatrix steady_state(const Generator& gen);

/// 1 / min |Re lambda| over the nonzero Liouvillian eigenvalues: the
/// asymptotic relaxation time scale.
double spectral_relaxation_time(const Generator& gen);

struct AgreementReport {
    double distance;   // max-entry distance |rho(t_end) - rho_ss|
    double t_end;      // horizon actually used
    double tolerance;  // pass threshold
    bool pass;
};

/// Cross-validates long-time integration against the null-space steady state.
/// t_end = 0 selects 20 spectral relaxation times.
AgreementReport long_time_agreement(const Generator& gen, const DensityMatrix& rho0,
                                    double t_end = 0.0, double tolerance = 1e-6);

/// Strict local extrema of one population along the sample grid, ignoring
/// swings below the prominence threshold. Deterministic for a fixed grid.
int count_oscillations(const Trajectory& traj, int level, double prominence = 1e-4);

/// First sample time after which every later sample stays within eps of
/// rho_ss in max-entry distance; +infinity if the trajectory still ends
/// outside the ball.
double settle_time(const Trajectory& traj, const DensityMatrix& rho_ss, double eps = 1e-3);

}  // namespace qdmol
