"""Experiment plumbing: probes, the velocity catalog, sweeps, artifacts."""

import math
import os

import numpy as np
import pytest

from machlab import spectral
from machlab.config import ExperimentConfig, canonical_dump, with_overrides
from machlab.experiments import (
    build_profile,
    drive_incompressible_limit,
    drive_strichartz_sweep,
    free_wave_normalized,
    gaussian_bump_complex,
    run_experiment,
    run_sweep,
    transport_catalog,
    transport_initial_density,
)
from machlab import littlewood_paley as lp
from machlab.spectral import Grid


def test_gaussian_probe_is_unit_norm_mean_free_dealiased(grid64):
    probe = gaussian_bump_complex(grid64)
    norm = grid64.box_length * math.sqrt(float(np.sum(np.abs(probe.modes) ** 2)))
    assert norm == pytest.approx(1.0, rel=1e-12)
    assert probe.modes[0, 0] == 0.0
    assert np.max(np.abs(np.where(grid64.dealias_mask, 0.0, probe.modes))) == 0.0


def test_free_wave_normalized_reports_window_validity(grid64):
    out = free_wave_normalized(grid64, (0.2, 0.1))
    assert set(out) == {0.2, 0.1}
    for e, (val, normalized, ok) in out.items():
        assert val > 0.0 and normalized > 0.0
        assert ok  # the shared window sits inside every member's wraparound


def test_transport_catalog_contract():
    cal, holdouts = transport_catalog(16.0 * math.pi)
    assert len(holdouts) == 4
    names = [cal.name] + [h.name for h in holdouts]
    assert len(set(names)) == len(names)
    x = np.linspace(0.0, 16.0 * math.pi, 7)
    y = np.linspace(0.0, 16.0 * math.pi, 7)[:, None]
    # calibration must exercise the compressible terms of the bound
    assert np.max(np.abs(cal.divergence(0.3, x, y))) > 0.1
    # the last holdout drives the divergence-free reduction
    assert np.max(np.abs(holdouts[-1].divergence(0.3, x, y))) == 0.0


def test_transport_initial_density_is_positive_and_smooth(grid64):
    f = transport_initial_density(grid64, seed=0)
    vals = f.values()
    assert np.min(vals) > 0.0
    top = np.where(grid64.dealias_mask, 0.0, f.modes)
    assert np.max(np.abs(top)) == 0.0


def test_build_profile_named_and_fitted(grid32):
    cfg = ExperimentConfig(profile="power:2")
    named = build_profile(cfg, grid32)
    assert named.name == "power:2"
    fitted = build_profile(
        ExperimentConfig(n=32, eps=(0.2, 0.1), data="random-band:1", profile="from-data"),
        grid32)
    assert fitted.values[0] == 1.0
    assert fitted.ratio_bound <= 2.0 + 1e-12
    assert np.all(np.diff(fitted.values) >= 0.0)


def test_run_sweep_output_does_not_depend_on_thread_count(tmp_path):
    base = ExperimentConfig(experiment="acoustic-decay", n=32, eps=(0.2, 0.1, 0.05),
                            t_final=0.1, max_dt=0.05, profile="constant")
    grid = Grid(base.n, base.box_length)
    profile = lp.named_profile("constant")
    serial = run_sweep(with_overrides(base, threads=1), grid, profile)
    pooled = run_sweep(with_overrides(base, threads=3), grid, profile)
    for e in base.eps:
        a, b = serial[e][0], pooled[e][0]
        pa, pb = tmp_path / "a.csv", tmp_path / "b.csv"
        a.to_csv(pa)
        b.to_csv(pb)
        assert pa.read_bytes() == pb.read_bytes()


def test_strichartz_driver_artifacts(tmp_path):
    cfg = ExperimentConfig(experiment="strichartz-sweep", n=32, eps=(0.2, 0.1, 0.05),
                           out=str(tmp_path / "out"))
    passed, lines = drive_strichartz_sweep(cfg)
    assert passed
    assert any(line.startswith("PASS strichartz.free_wave_scaling") for line in lines)
    out = tmp_path / "out"
    table = (out / "strichartz.csv").read_text().splitlines()
    assert table[0] == "eps,p,r,decay_exponent,window,value,normalized,window_ok"
    assert len(table) == 1 + len(cfg.eps)
    plot = (out / "plot_mixed_norm_vs_eps.csv").read_text().splitlines()
    assert plot[0] == "eps,mixed_norm" and len(plot) == 1 + len(cfg.eps)
    summary = (out / "summary.txt").read_text().splitlines()
    assert summary[0].startswith("machlab summary v1 config=")
    assert summary[-1] == "RESULT PASS"
    assert (out / "config.resolved").read_text() == canonical_dump(cfg)


def test_incompressible_limit_driver_smoke(tmp_path):
    cfg = ExperimentConfig(experiment="incompressible-limit", n=32,
                           eps=(0.4, 0.2, 0.05), t_final=0.2, max_dt=0.02,
                           snapshots=5, out=str(tmp_path / "out"))
    passed, lines = drive_incompressible_limit(cfg)
    assert passed, "\n".join(lines)
    out = tmp_path / "out"
    for name in ("ledger_reference.csv", "incompressible_limit.csv",
                 "plot_sup_gap_vs_eps.csv", "snap_reference_final.mlf"):
        assert (out / name).exists()
    n, L, fields = spectral.read_snapshot(out / "snap_eps_0p4_final.mlf")
    assert n == 32 and L == pytest.approx(cfg.box_length) and len(fields) == 3
    _, _, ref_fields = spectral.read_snapshot(out / "snap_reference_final.mlf")
    assert len(ref_fields) == 2


def test_run_experiment_rejects_unknown_driver():
    with pytest.raises(ValueError, match="no driver"):
        run_experiment(ExperimentConfig(experiment="bogus"))
