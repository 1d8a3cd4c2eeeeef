import json
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy import integrate

from supertrees.airy import airy_zero
from supertrees.errors import DegenerateInput
from supertrees.scaling import (
    KpzCheck,
    KpzSources,
    fit_power_law,
    kpz_pipeline,
    laplace_log_r,
    lifshitz_laplace,
    saddle_coefficient,
    synthetic_sources,
)
from supertrees.spectral import eigenvalues
from supertrees.supertree import build_profile, transfer_matrix

GRID = np.geomspace(1e2, 1e5, 13)


def test_exact_cube_root_law():
    xs = np.arange(1, 11)
    fit = fit_power_law(xs, 2 * xs ** (1 / 3))
    assert fit.exponent == pytest.approx(1 / 3, abs=1e-12)
    assert fit.prefactor == pytest.approx(2, abs=1e-12)
    assert fit.r_squared == pytest.approx(1, abs=1e-12)


@given(st.floats(-2, 2), st.floats(0.1, 10), st.booleans())
def test_exact_power_laws_fit_perfectly(nu, c, negative):
    xs = np.geomspace(1, 1000, 9)
    ys = (-1 if negative else 1) * c * xs**nu
    fit = fit_power_law(xs, ys)
    assert fit.exponent == pytest.approx(nu, abs=1e-9)
    assert fit.prefactor == pytest.approx(-c if negative else c, rel=1e-9)
    assert fit.r_squared == pytest.approx(1, abs=1e-12)


def test_fit_input_checks():
    with pytest.raises(DegenerateInput):
        fit_power_law([1, 2, 3], [1, 2, 3])
    with pytest.raises(DegenerateInput):
        fit_power_law([1, 2, 3, 4], [1, -2, 3, 4])
    with pytest.raises(DegenerateInput):
        fit_power_law([1, 2, 3, 4], [1, 2, 3, 4], sign="negative")
    with pytest.raises(DegenerateInput):
        fit_power_law([0, 2, 3, 4], [1, 2, 3, 4])


def test_edge_gap_follows_sixth_root():
    Ks = [100, 200, 400, 800, 1600, 3200]
    ys = [eigenvalues(transfer_matrix(build_profile("growing", K=K))).lambda_max - 2 * math.sqrt(K) for K in Ks]
    fit = fit_power_law(Ks, ys)
    assert fit.exponent == pytest.approx(-1 / 6, abs=0.02)
    assert fit.prefactor < 0


@pytest.mark.parametrize("alpha", [0.5, 1.0, 2.0])
def test_saddle_oracle(alpha):
    assert saddle_coefficient(alpha) == pytest.approx(3 * (alpha / 2) ** (2 / 3), rel=1e-10)


def test_laplace_integral_against_direct_quadrature():
    alpha, N = 1.0, 50.0
    direct, _ = integrate.quad(lambda E: math.exp(-alpha / math.sqrt(E) - N * E), 0, 2, epsabs=0, epsrel=1e-12, points=[0.05])
    assert laplace_log_r(alpha, N) == pytest.approx(-math.log(direct), rel=1e-9)


def test_lifshitz_exponent_and_coefficient():
    rep = lifshitz_laplace(1.0, GRID)
    assert 0.31 <= rep.fitted_exponent <= 0.35
    assert rep.coefficient_error < 0.02
    assert rep.printed_coefficient == pytest.approx(1.5 ** (2 / 3))
    # the printed constant is a factor 3**(1/3) away from the saddle value
    assert rep.printed_coefficient / rep.saddle_coefficient == pytest.approx(3 ** (-1 / 3), rel=1e-9)


def test_lifshitz_coefficient_scales_as_two_thirds_power():
    c1 = lifshitz_laplace(1.0, GRID).fitted_coefficient
    c2 = lifshitz_laplace(2.0, GRID).fitted_coefficient
    assert c2 / c1 == pytest.approx(2 ** (2 / 3), rel=0.02)


def test_lifshitz_discrepancy_shrinks_with_range():
    errs = [lifshitz_laplace(1.0, np.geomspace(1e2, top, 13)).coefficient_error for top in (1e3, 1e4, 1e5)]
    assert errs[0] > errs[1] > errs[2]


def test_lifshitz_grid_checks():
    with pytest.raises(DegenerateInput):
        lifshitz_laplace(1.0, [100, 200, 300, 400, 500])
    with pytest.raises(ValueError):
        lifshitz_laplace(-1.0, GRID)


def test_kpz_check_kinds():
    assert KpzCheck("x", 1.01, 1.0, 0.02, "relative").passed
    assert not KpzCheck("x", 1.05, 1.0, 0.02, "absolute").passed
    assert KpzCheck("x", 0.3, 0.33, 0.05, "interval").passed


def test_synthetic_pipeline_passes_exactly():
    report = kpz_pipeline(sources=synthetic_sources())
    assert report["passed"]
    by_name = {c["name"]: c for c in report["checks"]}
    assert by_name["edge_prefactor"]["value"] == pytest.approx(airy_zero(1), rel=1e-12)
    assert by_name["edge_exponent"]["value"] == pytest.approx(-1 / 6, abs=1e-12)
    assert by_name["entropy_exponent"]["value"] == pytest.approx(1 / 3, abs=1e-12)
    json.dumps(report)


def test_pipeline_modes_are_separate():
    calls = []
    src = KpzSources(
        lambda_max=lambda K: calls.append("edge") or 2 * math.sqrt(K) - K ** (-1 / 6),
        entropy=lambda N: calls.append("entropy") or 0.0,
        watermelon_coeff=lambda N: calls.append("watermelon") or 0.0,
    )
    report = kpz_pipeline(mode="edge", sources=src)
    assert set(calls) == {"edge"}
    assert [c["name"] for c in report["checks"]] == ["edge_exponent", "edge_prefactor"]
    with pytest.raises(ValueError):
        kpz_pipeline(mode="nope", sources=src)
