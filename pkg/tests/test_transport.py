"""Transport laboratory: spectral solver, characteristics oracle, growth bound."""

import math

import numpy as np
import pytest

from machlab import spectral, transport
from machlab.experiments import transport_initial_density


BOX = 16.0 * math.pi


def test_catalog_divergence_matches_sampled_field(grid64):
    """The analytic divergence callable must agree with the spectral
    divergence of the sampled velocity."""
    vel = transport.compressible_mode(0.8, (3, 1), 2.0, BOX, phase=0.4)
    t = 0.37
    x, y = grid64.coordinates()
    vx, vy = vel.velocity(t, x, y)
    v = spectral.vector(
        spectral.fft_forward(grid64, np.broadcast_to(vx, (64, 64)).copy()),
        spectral.fft_forward(grid64, np.broadcast_to(vy, (64, 64)).copy()),
    )
    div_spectral = spectral.fft_inverse(spectral.div(v))
    div_analytic = np.broadcast_to(vel.divergence(t, x, y), (64, 64))
    assert np.max(np.abs(div_spectral - div_analytic)) <= 1e-10


def test_shear_is_divergence_free(grid64):
    vel = transport.shear_velocity(1.0, 2, 0.9, BOX)
    x, y = grid64.coordinates()
    assert np.max(np.abs(np.broadcast_to(vel.divergence(0.3, x, y), (64, 64)))) == 0.0


def test_mass_is_conserved_exactly(grid64):
    f0 = transport_initial_density(grid64, seed=5)
    vel = transport.compressible_mode(1.0, (2, 2), 1.5, BOX)
    _, ledger = transport.solve_transport_spectral(f0, vel, 0.5, max_dt=0.02)
    mass = ledger.column("f_mass")
    assert np.max(np.abs(mass - mass[0])) <= 1e-12 * abs(mass[0])


def test_spectral_solution_matches_characteristics(grid64):
    f0 = transport_initial_density(grid64, seed=5)
    vel = transport.superpose([
        transport.shear_velocity(0.8, 2, 1.0, BOX),
        transport.compressible_mode(0.8, (3, 1), 2.0, BOX),
    ])
    fT, ledger = transport.solve_transport_spectral(f0, vel, 0.5, max_dt=0.02)
    steps = max(1, len(ledger) - 1)
    oracle = transport.solve_transport_oracle(f0, vel, 0.5, substeps=4 * steps)
    assert np.max(np.abs(fT.values() - oracle)) <= 1e-3


def test_divergence_free_max_principle(grid64):
    f0 = transport_initial_density(grid64, seed=5)
    vel = transport.shear_velocity(1.0, 1, 0.9, BOX)
    fT, _ = transport.solve_transport_spectral(f0, vel, 1.0, max_dt=0.02)
    lo0, hi0 = spectral.refined_extrema(f0)
    lo1, hi1 = spectral.refined_extrema(fT)
    expansion = max(hi1 - hi0, lo0 - lo1, 0.0) / (hi0 - lo0)
    assert expansion <= 1e-6


def test_log_constant_transfers_to_holdout(grid64):
    f0 = transport_initial_density(grid64, seed=5)
    cal = transport.superpose([
        transport.shear_velocity(0.8, 2, 1.0, BOX),
        transport.compressible_mode(0.8, (3, 1), 2.0, BOX),
    ])
    _, cal_led = transport.solve_transport_spectral(f0, cal, 0.5, max_dt=0.02)
    c_fit = transport.fit_log_constant(cal_led)
    assert transport.evaluate_log_estimate(cal_led, c_fit).max_ratio <= 1.0 + 1e-12
    hold = transport.compressible_mode(0.6, (5, 2), 3.0, BOX)
    _, led = transport.solve_transport_spectral(f0, hold, 0.5, max_dt=0.02)
    rep = transport.evaluate_log_estimate(led, c_fit)
    assert rep.max_ratio <= 1.0 + 1e-12


def test_oracle_is_exact_for_uniform_translation(grid64):
    """Constant velocity: characteristics are straight lines and the density
    is a pure shift; the oracle must track it to interpolation accuracy."""
    f0 = transport_initial_density(grid64, seed=7)
    vel = transport.superpose([
        transport.shear_velocity(0.0, 1, 1.0, BOX),
    ])
    out = transport.solve_transport_oracle(f0, vel, 0.5, substeps=8)
    assert np.max(np.abs(out - f0.values())) <= 1e-10


def test_solver_rejects_bad_time():
    grid = spectral.Grid(32, BOX)
    f0 = transport_initial_density(grid, seed=0)
    vel = transport.shear_velocity(1.0, 1, 0.9, BOX)
    with pytest.raises(ValueError):
        transport.solve_transport_spectral(f0, vel, -0.5)
