"""Smoke tests for the python bindings."""

import math

import numpy as np
import pytest

import qdmol


def test_version():
    assert qdmol.__version__


def test_planck_and_rates():
    assert qdmol.planck_occupation(math.log(2.0)) == pytest.approx(1.0)
    with pytest.raises(ValueError):
        qdmol.planck_occupation(0.0)
    rates = qdmol.rates_from_physical(qdmol.PhysicalParams(0.4, 1.0, 0.5, 0.8))
    assert (rates.l, rates.m, rates.n, rates.p) == (0.8, 0.4, 0.5, 0.4)


def test_rate_invariants():
    with pytest.raises(ValueError):
        qdmol.RateParams(0.4, 0.8, 0.5)  # m > l


def test_undriven_steady_state():
    gen = qdmol.build_undriven(qdmol.presets.fig2_4())
    pops = qdmol.steady_state(gen).populations()
    assert pops == pytest.approx([0.5, 0.25, 0.25], abs=1e-10)


def test_liouvillian_shape_and_nullspace():
    gen = qdmol.build_driven(qdmol.presets.fig5_7())
    sup = gen.liouvillian()
    assert sup.shape == (9, 9)
    w = np.linalg.eigvals(sup)
    assert np.min(np.abs(w)) < 1e-10


def test_integration_matches_closed_form():
    rates = qdmol.presets.fig2_4()
    sol = qdmol.undriven_solution(rates)
    cfg = qdmol.IntegratorConfig()
    cfg.dense_output_dt = 1.0
    traj = qdmol.integrate(qdmol.build_undriven(rates), qdmol.DensityMatrix.ground(), 20.0, cfg)
    times = traj.times()
    pops = traj.populations()
    for t, row in zip(times, pops):
        closed = qdmol.eval_populations(sol, t)
        assert row == pytest.approx(closed, abs=1e-8)
    assert traj.stats.max_trace_drift <= 1e-9


def test_oscillation_counts():
    cfg = qdmol.IntegratorConfig()
    cfg.dense_output_dt = 0.02
    undriven = qdmol.integrate(
        qdmol.build_undriven(qdmol.presets.fig2_4()), qdmol.DensityMatrix.ground(), 30.0, cfg
    )
    assert qdmol.count_oscillations(undriven, 0) == 0
    strong = qdmol.integrate(
        qdmol.build_driven(qdmol.presets.fig12_13()), qdmol.DensityMatrix.ground(), 40.0, cfg
    )
    assert qdmol.count_oscillations(strong, 0) >= 10


def test_driven_oracle_and_printed_report():
    pops = qdmol.driven_steady_oracle(qdmol.presets.reference(8.0))
    assert pops == pytest.approx([1 / 3] * 3, abs=0.02)
    printed = qdmol.driven_steady_printed(qdmol.presets.reference(0.0))
    assert not printed.p0_consistent
    assert printed.populations[0] == pytest.approx(0.4)


def test_density_validation_round_trip():
    rho = qdmol.DensityMatrix.from_diagonal(np.array([0.2, 0.3, 0.5]))
    report = qdmol.validate_density(rho.matrix)
    assert report.ok()
    bad = np.eye(3, dtype=complex) / 3
    bad[0, 0] = 0.5
    assert not qdmol.validate_density(bad).ok()


def test_degenerate_steady_state_raises():
    with pytest.raises(RuntimeError):
        qdmol.steady_state(qdmol.build_undriven(qdmol.RateParams(0.8, 0.4, 0.0)))
