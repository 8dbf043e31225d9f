"""Vorticity-form reference solver."""

import math

import numpy as np

from machlab import incompressible, spectral
from machlab.incompressible import IncompressibleState


def test_velocity_from_vorticity_inverts_curl(grid64, rng):
    omega = spectral.dealias(spectral.fft_forward(grid64, rng.standard_normal((64, 64))))
    omega.modes[0, 0] = 0.0
    v = incompressible.velocity_from_vorticity(omega)
    assert spectral.l2_norm(spectral.div(v)) <= 1e-12 * spectral.l2_norm([v.ux, v.uy])
    back = spectral.curl2d(v)
    assert np.max(np.abs(back.modes - omega.modes)) <= 1e-12 * np.max(np.abs(omega.modes))


def test_cellular_eigenfield_is_steady(grid64):
    """sin(kx) sin(ky) vorticity is an exact steady Euler state; any motion
    is scheme error."""
    k = 2.0 * math.pi / grid64.box_length * 2
    omega = spectral.from_function(
        grid64, lambda x, y: np.sin(k * x) * np.sin(k * y))
    final, _, _ = incompressible.run_incompressible(
        IncompressibleState(omega=spectral.dealias(omega)), 0.5, cfl=0.4, max_dt=0.02)
    drift = spectral.l2_norm(spectral.sub(final.omega, spectral.dealias(omega)))
    assert drift <= 1e-10 * spectral.l2_norm(omega)


def test_energy_and_vorticity_sup_nearly_conserved(grid64, rng):
    raw = rng.standard_normal((64, 64))
    k_corner = 1.0
    modes = spectral.fft_forward(grid64, raw).modes * np.exp(-(grid64.kmag / k_corner) ** 2)
    omega = spectral.dealias(spectral.SpectralScalarField(grid64, modes))
    omega.modes[0, 0] = 0.0
    final, ledger, _ = incompressible.run_incompressible(
        IncompressibleState(omega=omega), 1.0, cfl=0.4, max_dt=0.02)
    energy = ledger.column("v_l2") ** 2
    assert np.max(np.abs(energy - energy[0])) <= 1e-8 * energy[0]
    # grid-sampled sup wobbles by O(h^2) as the peak moves between points
    sup = ledger.column("omega_linf")
    assert np.max(np.abs(sup - sup[0])) <= 0.03 * sup[0]


def test_mean_vorticity_stays_zero(grid64, rng):
    omega = spectral.dealias(spectral.fft_forward(grid64, rng.standard_normal((64, 64))))
    omega.modes[0, 0] = 0.0
    state = IncompressibleState(omega=omega)
    out = incompressible.step_incompressible(state, 0.01)
    assert abs(out.omega.modes[0, 0]) <= 1e-18  # rounding-level quadrature residue
