"""Pseudo-spectral integrator for the rescaled 2D barotropic system.

The state (v, c) obeys

    dv/dt + v.grad v + gamma_bar c grad c + (1/eps) grad c = 0
    dc/dt + v.grad c + gamma_bar c div v + (1/eps) div v = 0

split per step into the stiff linear acoustic flow, solved exactly mode by
mode, and the quadratic terms, advanced with classical RK4 under an
advective CFL condition. The Strang composition

    half acoustic step -> full RK4 nonlinear step -> half acoustic step

is second order in dt and conserves the per-mode acoustic energy of the
linear flow to rounding.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Optional

import numpy as np

from . import littlewood_paley as lp
from . import spectral
from .ledger import COMPRESSIBLE_COLUMNS, RunLedger
from .spectral import FlowState, SpectralScalarField, SpectralVectorField

_CFL_FLOOR = 1e-12


@dataclass(frozen=True)
class StepperConfig:
    """Time stepping knobs and blowup thresholds.

    ``disable_nonlinear`` freezes the quadratic terms (the step reduces to the
    exact acoustic flow) and ``project_solenoidal_rhs`` replaces the velocity
    tendency by its divergence-free part; both exist so the stepper can be
    checked against closed-form references.
    """

    cfl: float = 0.4
    max_dt: float = 0.05
    blowup_grad_linf: float = 1e4
    blowup_besov: float = 1e8
    disable_nonlinear: bool = False
    project_solenoidal_rhs: bool = False
    profile: Optional[lp.BesovProfile] = None

    def __post_init__(self) -> None:
        if not (0.0 < self.cfl <= 1.0):
            raise ValueError(f"cfl must lie in (0, 1], got {self.cfl}")
        if not (self.max_dt > 0.0):
            raise ValueError(f"max_dt must be positive, got {self.max_dt}")


class Blowup(RuntimeError):
    """Raised when a monitored norm crosses its threshold or goes non-finite."""

    def __init__(self, time: float, reason: str, ledger: Optional[RunLedger] = None):
        super().__init__(f"blowup at t={time:.6g}: {reason}")
        self.time = time
        self.reason = reason
        self.ledger = ledger


def rhs_nonlinear(state: FlowState) -> tuple[SpectralVectorField, SpectralScalarField]:
    """Quadratic tendencies, dealiased:

    f = -(v.grad) v - gamma_bar c grad c
    g = -(v.grad) c - gamma_bar c div v
    """
    g = state.grid
    n2 = g.n**2
    vx_m, vy_m = state.v.ux.modes, state.v.uy.modes
    c_m = state.c.modes
    vx = np.real(np.fft.ifft2(vx_m * n2))
    vy = np.real(np.fft.ifft2(vy_m * n2))
    c = np.real(np.fft.ifft2(c_m * n2))
    dx_vx = np.real(np.fft.ifft2(1j * g.kx * vx_m * n2))
    dy_vx = np.real(np.fft.ifft2(1j * g.ky * vx_m * n2))
    dx_vy = np.real(np.fft.ifft2(1j * g.kx * vy_m * n2))
    dy_vy = np.real(np.fft.ifft2(1j * g.ky * vy_m * n2))
    dx_c = np.real(np.fft.ifft2(1j * g.kx * c_m * n2))
    dy_c = np.real(np.fft.ifft2(1j * g.ky * c_m * n2))
    gb = state.gamma_bar
    fx = -(vx * dx_vx + vy * dy_vx) - gb * c * dx_c
    fy = -(vx * dx_vy + vy * dy_vy) - gb * c * dy_c
    gg = -(vx * dx_c + vy * dy_c) - gb * c * (dx_vx + dy_vy)
    mask = g.dealias_mask
    f_vec = spectral.vector(
        SpectralScalarField(g, np.where(mask, np.fft.fft2(fx) / n2, 0.0), dealiased=True),
        SpectralScalarField(g, np.where(mask, np.fft.fft2(fy) / n2, 0.0), dealiased=True),
    )
    g_scal = SpectralScalarField(g, np.where(mask, np.fft.fft2(gg) / n2, 0.0), dealiased=True)
    return f_vec, g_scal


def acoustic_exact_step(state: FlowState, dt: float) -> FlowState:
    """Exact flow of the stiff linear part over dt.

    Per mode, with a the component of the velocity coefficient along the unit
    wavevector and b the sound speed coefficient, the update is the rotation

        a' = a cos(theta) - i b sin(theta)
        b' = b cos(theta) - i a sin(theta),    theta = |k| dt / eps.

    The divergence-free velocity part and the zero mode are untouched, and
    |a|^2 + |b|^2 is conserved mode by mode.
    """
    g = state.grid
    theta = g.kmag * (dt / state.eps)
    cos_t = np.cos(theta)
    sin_t = np.sin(theta)
    khat_x = g.kx * g.inv_kmag
    khat_y = g.ky * g.inv_kmag
    vx, vy = state.v.ux.modes, state.v.uy.modes
    b = state.c.modes
    a = khat_x * vx + khat_y * vy
    a2 = a * cos_t - 1j * b * sin_t
    b2 = b * cos_t - 1j * a * sin_t
    vx2 = vx + (a2 - a) * khat_x
    vy2 = vy + (a2 - a) * khat_y
    v2 = spectral.vector(
        SpectralScalarField(g, vx2, dealiased=state.v.ux.dealiased),
        SpectralScalarField(g, vy2, dealiased=state.v.uy.dealiased),
    )
    c2 = SpectralScalarField(g, b2, dealiased=state.c.dealiased)
    return replace(state, v=v2, c=c2, time=state.time + dt)


def cfl_dt(state: FlowState, config: StepperConfig) -> float:
    """Advective step size: the fast linear part is integrated exactly, so
    only |v| and the quadratic sound speed coupling constrain dt."""
    v_max = spectral.lp_norm(state.v, math.inf)
    c_max = spectral.lp_norm(state.c, math.inf)
    speed = v_max + state.gamma_bar * c_max + _CFL_FLOOR
    return min(config.max_dt, config.cfl * state.grid.spacing / speed)


def _nonlinear_rk4(state: FlowState, dt: float, config: StepperConfig) -> FlowState:
    def deriv(v: SpectralVectorField, c: SpectralScalarField):
        f, gg = rhs_nonlinear(replace(state, v=v, c=c))
        if config.project_solenoidal_rhs:
            f = spectral.leray_p(f)
        return f, gg

    def axpy(v, c, f, gg, h):
        return (
            spectral.vector(
                SpectralScalarField(v.grid, v.ux.modes + h * f.ux.modes, dealiased=True),
                SpectralScalarField(v.grid, v.uy.modes + h * f.uy.modes, dealiased=True),
            ),
            SpectralScalarField(c.grid, c.modes + h * gg.modes, dealiased=True),
        )

    v0, c0 = state.v, state.c
    k1f, k1g = deriv(v0, c0)
    v1, c1 = axpy(v0, c0, k1f, k1g, dt / 2.0)
    k2f, k2g = deriv(v1, c1)
    v2, c2 = axpy(v0, c0, k2f, k2g, dt / 2.0)
    k3f, k3g = deriv(v2, c2)
    v3, c3 = axpy(v0, c0, k3f, k3g, dt)
    k4f, k4g = deriv(v3, c3)
    vx = v0.ux.modes + (dt / 6.0) * (
        k1f.ux.modes + 2.0 * k2f.ux.modes + 2.0 * k3f.ux.modes + k4f.ux.modes
    )
    vy = v0.uy.modes + (dt / 6.0) * (
        k1f.uy.modes + 2.0 * k2f.uy.modes + 2.0 * k3f.uy.modes + k4f.uy.modes
    )
    cm = c0.modes + (dt / 6.0) * (k1g.modes + 2.0 * k2g.modes + 2.0 * k3g.modes + k4g.modes)
    g = state.grid
    return replace(
        state,
        v=spectral.vector(
            SpectralScalarField(g, vx, dealiased=True), SpectralScalarField(g, vy, dealiased=True)
        ),
        c=SpectralScalarField(g, cm, dealiased=True),
    )


def step(state: FlowState, config: StepperConfig, dt: Optional[float] = None) -> FlowState:
    """One Strang step; dt defaults to the advective CFL value."""
    if dt is None:
        dt = cfl_dt(state, config)
    t0 = state.time
    half = acoustic_exact_step(state, 0.5 * dt)
    if not config.disable_nonlinear:
        half = _nonlinear_rk4(half, dt, config)
    full = acoustic_exact_step(half, 0.5 * dt)
    full = replace(
        full,
        v=spectral.dealias_vector(full.v),
        c=spectral.dealias(full.c),
        time=t0 + dt,
    )
    return full


def _jacobian_sup(v: SpectralVectorField) -> float:
    """Largest sup norm over the four entries of grad v."""
    g = v.grid
    n2 = g.n**2
    worst = 0.0
    for comp in (v.ux, v.uy):
        for kdir in (g.kx, g.ky):
            d = np.real(np.fft.ifft2(1j * kdir * comp.modes * n2))
            worst = max(worst, float(np.max(np.abs(d))))
    return worst


def monitor_row(state: FlowState, config: StepperConfig) -> dict[str, float]:
    """All ledger columns for one state (accumulators excluded)."""
    grad_v = _jacobian_sup(state.v)
    grad_c = spectral.lp_norm(spectral.grad(state.c), math.inf)
    div_v = spectral.div(state.v)
    omega = spectral.curl2d(state.v)
    qv = spectral.leray_q(state.v)
    fields_vc = [state.v.ux, state.v.uy, state.c]
    row = {
        "grad_v_linf": grad_v,
        "grad_c_linf": grad_c,
        "div_v_linf": spectral.lp_norm(div_v, math.inf),
        "omega_linf": spectral.lp_norm(omega, math.inf),
        "vc_l2": spectral.l2_norm(fields_vc),
        "vc_b2": lp.besov_norm(fields_vc, 2.0, 2.0, 1.0),
        "vc_b2_hetero": (
            lp.besov_norm_hetero(fields_vc, 2.0, 2.0, 1.0, config.profile)
            if config.profile is not None
            else math.nan
        ),
        "omega_b0": lp.besov_norm(omega, 0.0, math.inf, 1.0),
        "div_v_b0": lp.besov_norm(div_v, 0.0, math.inf, 1.0),
        "qv_linf": spectral.lp_norm(qv, math.inf),
        "c_linf": spectral.lp_norm(state.c, math.inf),
        "v_l2": spectral.l2_norm(state.v),
        "div_v_b12": lp.besov_norm(div_v, 0.5, 4.0, 1.0),
        "div_v_b1": lp.besov_norm(div_v, 1.0, 2.0, 1.0),
    }
    row["grad_sum"] = row["grad_v_linf"] + row["grad_c_linf"]
    return row


def _check_blowup(state: FlowState, row: dict[str, float], config: StepperConfig,
                  ledger: RunLedger) -> None:
    if not all(math.isfinite(v) for k, v in row.items() if k != "vc_b2_hetero"):
        raise Blowup(state.time, "non-finite monitored norm", ledger)
    if row["grad_v_linf"] > config.blowup_grad_linf:
        raise Blowup(state.time, f"grad_v_linf {row['grad_v_linf']:.3e} over threshold", ledger)
    if row["vc_b2"] > config.blowup_besov:
        raise Blowup(state.time, f"vc_b2 {row['vc_b2']:.3e} over threshold", ledger)


def run(initial: FlowState, t_final: float, config: StepperConfig,
        snapshot_times: Optional[list[float]] = None,
        run_id: str = "", config_hash: str = "") -> tuple[FlowState, RunLedger, dict[float, FlowState]]:
    """Integrate to t_final, logging every accepted step.

    ``snapshot_times`` are hit exactly (dt is clipped); the returned dict maps
    each requested time to the state there. On blowup the partial ledger is
    attached to the raised exception.
    """
    if not (t_final > initial.time):
        raise ValueError("t_final must exceed the initial time")
    state = replace(
        initial, v=spectral.dealias_vector(initial.v), c=spectral.dealias(initial.c)
    )
    ledger = RunLedger(COMPRESSIBLE_COLUMNS, run_id=run_id, config_hash=config_hash)
    pending = sorted(t for t in (snapshot_times or []) if t > state.time)
    snapshots: dict[float, FlowState] = {}
    for t in (snapshot_times or []):
        if t <= state.time:
            snapshots[t] = state
    row = monitor_row(state, config)
    ledger.append(state.time, **row)
    _check_blowup(state, row, config, ledger)
    while state.time < t_final - 1e-12:
        dt = cfl_dt(state, config)
        dt = min(dt, t_final - state.time)
        if pending:
            dt = min(dt, pending[0] - state.time)
        state = step(state, config, dt)
        row = monitor_row(state, config)
        ledger.append(state.time, **row)
        _check_blowup(state, row, config, ledger)
        if pending and state.time >= pending[0] - 1e-12:
            snapshots[pending.pop(0)] = state
    return state, ledger, snapshots
