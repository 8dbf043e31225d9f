"""Reference incompressible Euler solver in vorticity-stream form.

The scalar vorticity is advected by its own Biot-Savart velocity:

    d omega / dt + v . grad omega = 0,    v = perp_grad inv_laplacian omega.

Classical RK4 in time with 2/3-rule dealiasing of the advection product.
Kinetic energy and every L^p norm of omega are conserved by the continuous
flow, which makes long-run drift a sharp discretization diagnostic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Optional

import numpy as np

from . import littlewood_paley as lp
from . import spectral
from .ledger import INCOMPRESSIBLE_COLUMNS, RunLedger
from .spectral import Grid, SpectralScalarField, SpectralVectorField

_CFL_FLOOR = 1e-12


@dataclass(frozen=True)
class IncompressibleState:
    omega: SpectralScalarField
    time: float = 0.0

    @property
    def grid(self) -> Grid:
        return self.omega.grid


def velocity_from_vorticity(omega: SpectralScalarField) -> SpectralVectorField:
    """Biot-Savart law on the torus: v = perp_grad inv_laplacian omega.

    The vorticity zero mode is ignored (it has no periodic stream function);
    curl(velocity_from_vorticity(w)) returns the mean-free part of w.
    """
    g = omega.grid
    psi = -g.inv_k2 * omega.modes  # inv_laplacian without the mean warning
    return spectral.vector(
        SpectralScalarField(g, -1j * g.ky * psi, dealiased=omega.dealiased),
        SpectralScalarField(g, 1j * g.kx * psi, dealiased=omega.dealiased),
    )


def _advection_tendency(omega: SpectralScalarField) -> SpectralScalarField:
    g = omega.grid
    n2 = g.n**2
    v = velocity_from_vorticity(omega)
    vx = np.real(np.fft.ifft2(v.ux.modes * n2))
    vy = np.real(np.fft.ifft2(v.uy.modes * n2))
    wx = np.real(np.fft.ifft2(1j * g.kx * omega.modes * n2))
    wy = np.real(np.fft.ifft2(1j * g.ky * omega.modes * n2))
    adv = vx * wx + vy * wy
    return SpectralScalarField(
        g, np.where(g.dealias_mask, -np.fft.fft2(adv) / n2, 0.0), dealiased=True
    )


def step_incompressible(state: IncompressibleState, dt: float) -> IncompressibleState:
    w0 = state.omega
    k1 = _advection_tendency(w0)
    k2 = _advection_tendency(SpectralScalarField(w0.grid, w0.modes + 0.5 * dt * k1.modes, dealiased=True))
    k3 = _advection_tendency(SpectralScalarField(w0.grid, w0.modes + 0.5 * dt * k2.modes, dealiased=True))
    k4 = _advection_tendency(SpectralScalarField(w0.grid, w0.modes + dt * k3.modes, dealiased=True))
    modes = w0.modes + (dt / 6.0) * (k1.modes + 2.0 * k2.modes + 2.0 * k3.modes + k4.modes)
    omega = spectral.dealias(SpectralScalarField(w0.grid, modes))
    return IncompressibleState(omega=omega, time=state.time + dt)


def cfl_dt_incompressible(state: IncompressibleState, cfl: float, max_dt: float) -> float:
    v = velocity_from_vorticity(state.omega)
    speed = spectral.lp_norm(v, math.inf) + _CFL_FLOOR
    return min(max_dt, cfl * state.grid.spacing / speed)


def run_incompressible(initial: IncompressibleState, t_final: float, cfl: float = 0.4,
                       max_dt: float = 0.05,
                       snapshot_times: Optional[list[float]] = None,
                       run_id: str = "", config_hash: str = "",
                       ) -> tuple[IncompressibleState, RunLedger, dict[float, IncompressibleState]]:
    """Integrate to t_final with per-step norm logging and exact snapshot times."""
    if not (t_final > initial.time):
        raise ValueError("t_final must exceed the initial time")
    state = IncompressibleState(spectral.dealias(initial.omega), time=initial.time)
    ledger = RunLedger(INCOMPRESSIBLE_COLUMNS, run_id=run_id, config_hash=config_hash)
    pending = sorted(t for t in (snapshot_times or []) if t > state.time)
    snapshots: dict[float, IncompressibleState] = {}
    for t in (snapshot_times or []):
        if t <= state.time:
            snapshots[t] = state

    def log(st: IncompressibleState) -> None:
        v = velocity_from_vorticity(st.omega)
        g = st.grid
        n2 = g.n**2
        worst = 0.0
        for comp in (v.ux, v.uy):
            for kdir in (g.kx, g.ky):
                d = np.real(np.fft.ifft2(1j * kdir * comp.modes * n2))
                worst = max(worst, float(np.max(np.abs(d))))
        ledger.append(
            st.time,
            grad_v_linf=worst,
            omega_linf=spectral.lp_norm(st.omega, math.inf),
            omega_l2=spectral.l2_norm(st.omega),
            v_l2=spectral.l2_norm(v),
            omega_b0=lp.besov_norm(st.omega, 0.0, math.inf, 1.0),
        )

    log(state)
    while state.time < t_final - 1e-12:
        dt = cfl_dt_incompressible(state, cfl, max_dt)
        dt = min(dt, t_final - state.time)
        if pending:
            dt = min(dt, pending[0] - state.time)
        state = step_incompressible(state, dt)
        log(state)
        if pending and state.time >= pending[0] - 1e-12:
            snapshots[pending.pop(0)] = state
    return state, ledger, snapshots
