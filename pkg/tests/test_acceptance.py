"""Desk-scale acceptance battery: one test and one PASS/FAIL line per check.

Everything runs at the default AcceptanceScale (n = 256, high-resolution
cross-checks at 512), so this file is the slow end of the suite; the shared
Workbench caches the eps sweep and the reference run across tests.
"""

import pytest

from machlab import acceptance


@pytest.fixture(scope="module")
def bench():
    return acceptance.Workbench(acceptance.AcceptanceScale())


def _report(result: acceptance.CheckResult) -> None:
    print(f"{'PASS' if result.passed else 'FAIL'} {result.name}: {result.detail}")
    assert result.passed, f"{result.name}: {result.detail}"


def test_spectral_substrate(bench):
    _report(acceptance.check_spectral_substrate(bench))


def test_dyadic_partition(bench):
    _report(acceptance.check_dyadic_partition(bench))


def test_weighted_besov_norms(bench):
    _report(acceptance.check_weighted_norms(bench))


def test_linear_acoustics_conjugacy(bench):
    _report(acceptance.check_linear_acoustics(bench))


def test_strang_splitting_order(bench):
    _report(acceptance.check_splitting_order(bench))


def test_transport_laboratory(bench):
    _report(acceptance.check_transport_lab(bench))


def test_acoustic_decay_trend(bench):
    _report(acceptance.check_acoustic_decay_trend(bench))


def test_incompressible_limit_trend(bench):
    _report(acceptance.check_incompressible_limit_trend(bench))


def test_vorticity_control(bench):
    _report(acceptance.check_vorticity_control(bench))


def test_lifespan_bookkeeping(bench):
    _report(acceptance.check_lifespan_bookkeeping(bench))


def test_repeatability(bench):
    _report(acceptance.check_determinism(bench))
