import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from supertrees import _poly
from supertrees.errors import OutOfWindow, PoleHit
from supertrees.genfunc import (
    RationalGF,
    arbitrate_to_end,
    descending_cf_series,
    descending_continued_fraction,
    descending_root_gf,
    gf_edge_asymptotic,
    gf_root_return_descending,
    gf_root_return_growing,
    gf_to_end_growing,
    growing_root_gf,
    level_gf,
    pole_estimate,
    r_polynomial,
    series_from_counts,
    to_end_gf,
    to_end_candidates,
)
from supertrees.pathcount import count_paths
from supertrees.supertree import build_profile

NMAX = 40


def growing(K):
    return build_profile("growing", K=K, p0=1, a=1)


def test_r_polynomials():
    assert r_polynomial(0).coeffs == (1,)
    assert r_polynomial(1).coeffs == (1,)
    assert r_polynomial(2).coeffs == (1, 0, -2)
    assert r_polynomial(3).coeffs == (1, 0, -5)
    assert r_polynomial(4).coeffs == (1, 0, -9, 0, 8)


def test_counts_series_agrees_with_pathcount():
    prof = growing(6)
    s = series_from_counts(prof, 2, 12)
    assert s == [count_paths(prof, n)[2] for n in range(13)]


@pytest.mark.parametrize("K", range(1, 13))
def test_growing_root_returns(K):
    assert growing_root_gf(K).series(NMAX) == series_from_counts(growing(K), 0, NMAX)


@pytest.mark.parametrize("K", range(1, 13))
def test_root_to_end(K):
    assert to_end_gf(K).series(NMAX) == series_from_counts(growing(K), K - 1, NMAX)


@pytest.mark.parametrize("P", range(1, 9))
def test_descending_root_returns(P):
    counts = series_from_counts(build_profile("descending", K=P), 0, NMAX)
    assert descending_root_gf(P).series(NMAX) == counts
    assert descending_cf_series(P, NMAX) == counts


def test_one_power_of_s_per_level_is_wrong():
    # the same fraction with s instead of s**2 at each level does not count paths
    P = 5
    f = [1]
    for j in range(1, P):
        f = _poly.series_inverse_one_minus(_poly.shift(_poly.scale(f, j), 1)[: NMAX + 1], NMAX + 1)
    counts = series_from_counts(build_profile("descending", K=P), 0, NMAX)
    assert f[: NMAX + 1] != counts


def test_only_cofactor_form_counts_paths_to_the_end():
    for K in (3, 5, 8):
        verdict = arbitrate_to_end(K)
        assert verdict == {"hermite_times_r": False, "logderiv_r_of_s2": False, "cofactor": True}


def test_rejected_forms_have_negative_powers():
    cands = to_end_candidates(6)
    assert any(p < 0 for p in cands["hermite_times_r"].laurent(10))
    with pytest.raises(ValueError):
        cands["logderiv_r_of_s2"].series(10)


profiles = st.one_of(
    st.builds(lambda K, p0, a: build_profile("growing", K=K, p0=p0, a=a), st.integers(1, 9), st.integers(1, 3), st.integers(0, 3)),
    st.builds(lambda K: build_profile("descending", K=K), st.integers(1, 9)),
    st.builds(lambda K, q: build_profile("dyck_q", K=K, q=q), st.integers(1, 7), st.fractions(Fraction(1, 9), 1)),
)


@given(profiles, st.data())
def test_cofactor_gf_at_every_level(prof, data):
    k = data.draw(st.integers(0, prof.K - 1))
    assert level_gf(prof, k).series(24) == series_from_counts(prof, k, 24)


def test_closed_forms_evaluate_exactly():
    s = Fraction(1, 10)
    K = 4
    direct = sum(c * s**n for n, c in enumerate(series_from_counts(growing(K), 0, 200)))
    assert abs(gf_root_return_growing(K, s) - direct) < Fraction(1, 10**60)
    assert isinstance(gf_to_end_growing(K, "1/10"), Fraction)


@given(st.integers(2, 30), st.fractions(Fraction(1, 1000), Fraction(1, 20)))
def test_continued_fraction_equals_hermite_ratio(P, s):
    cf, ratio = gf_root_return_descending(P, s)
    assert cf == ratio


def test_truncated_continued_fraction_differs():
    cf_full = descending_continued_fraction(12, Fraction(1, 10))
    cf_cut = descending_continued_fraction(12, Fraction(1, 10), depth=3)
    assert cf_full != cf_cut
    assert abs(float(cf_full - cf_cut)) < 1e-3


def test_pole_hit():
    # He_2(1/s) = 1/s**2 - 1 vanishes at s = 1
    with pytest.raises(PoleHit):
        descending_root_gf(2)(1)


def test_first_pole_is_inverse_largest_eigenvalue():
    K = 9
    assert growing_root_gf(K).smallest_positive_pole() == pytest.approx(pole_estimate(K), rel=1e-10)


def test_edge_asymptotic_close_to_exact_near_edge():
    P = 400
    for z in (-1.0, -0.5, 0.0, 0.5, 1.0):
        s = 1 / (2 * math.sqrt(P) + z * P ** (-1 / 6))
        exact = descending_continued_fraction(P, s)
        assert gf_edge_asymptotic(P, s) == pytest.approx(exact, rel=0.05)


def test_edge_asymptotic_error_shrinks_with_P():
    errs = []
    for P in (100, 400, 1600):
        s = 1 / (2 * math.sqrt(P) + 0.5 * P ** (-1 / 6))
        errs.append(abs(gf_edge_asymptotic(P, s) / descending_continued_fraction(P, s) - 1))
    assert errs[0] > errs[1] > errs[2]


def test_edge_asymptotic_window_enforced():
    P = 400
    with pytest.raises(OutOfWindow):
        gf_edge_asymptotic(P, 1 / (2 * math.sqrt(P) + 10))
    with pytest.raises(ValueError):
        gf_edge_asymptotic(20, 0.1)


def test_rational_gf_shift_and_series_guard():
    gf = RationalGF((1,), (1, -1), shift=-1)
    assert gf.laurent(2) == {-1: 1, 0: 1, 1: 1, 2: 1}
    with pytest.raises(ValueError):
        gf.series(2)
