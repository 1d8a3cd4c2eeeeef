import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from supertrees.errors import EmptyEnsemble, OracleTooLarge
from supertrees.pathcount import (
    WATERMELON_C,
    count_paths,
    entropy,
    enumerate_paths_bruteforce,
    log_count,
    mean_displacement,
    propagate,
    watermelon,
)
from supertrees.supertree import build_profile, transfer_matrix


def double_factorial(n):
    return math.prod(range(n, 0, -2)) if n > 0 else 1


@pytest.mark.parametrize("m", range(1, 7))
def test_root_returns_are_gaussian_moments(m):
    prof = build_profile("growing", K=2 * m + 1, p0=1, a=1)
    assert count_paths(prof, 2 * m)[0] == double_factorial(2 * m - 1)


def test_six_step_row():
    Z = count_paths(build_profile("growing", K=8, p0=1, a=1), 6)
    assert Z.counts == (15, 0, 90, 0, 360, 0, 720, 0)
    assert Z.total == 1185


def test_parity_of_levels():
    Z = count_paths(build_profile("growing", K=10, p0=2, a=2), 7)
    assert all(z == 0 for k, z in enumerate(Z.counts) if k % 2 == 0)


def test_constant_branching_gives_ballot_numbers():
    # p_k = 2: one way forward, one way back; root returns are Catalan numbers
    prof = build_profile("growing", K=30, p0=1, a=0)
    assert [count_paths(prof, 2 * n)[0] for n in range(8)] == [1, 1, 2, 5, 14, 42, 132, 429]


def test_rational_weights_stay_exact():
    prof = build_profile("dyck_q", K=5, q="1/3")
    Z = count_paths(prof, 4)
    assert Z[0] == Fraction(4, 3)
    assert all(isinstance(z, (int, Fraction)) for z in Z.counts)


def test_propagate_from_interior_level():
    T = transfer_matrix(build_profile("growing", K=4))
    assert propagate(T, 1, start=2) == [0, 1, 0, 3]


def test_bruteforce_limit():
    with pytest.raises(OracleTooLarge):
        enumerate_paths_bruteforce(build_profile("growing", K=4), 21)


def test_mean_displacement_of_first_step():
    assert mean_displacement(build_profile("growing", K=5, p0=3, a=1), 1) == 1.0


def test_mean_displacement_needs_paths():
    with pytest.raises(EmptyEnsemble):
        mean_displacement(build_profile("growing", K=1), 3)


def test_entropy_is_log_of_total():
    total = count_paths(build_profile("growing", K=6, p0=1, a=1), 6).total
    assert entropy(6) == pytest.approx(math.log(total), rel=1e-15)


def test_log_count_handles_huge_integers():
    assert log_count(10**400) == pytest.approx(400 * math.log(10))
    assert log_count(Fraction(1, 10**400)) == pytest.approx(-400 * math.log(10))


def test_watermelon_fields():
    w = watermelon(50)
    assert w.logZW == pytest.approx(2 * entropy(50) - math.lgamma(51))
    assert w.linear_coeff == pytest.approx(w.logZW / 50)
    assert w.correction == pytest.approx(w.logZW - WATERMELON_C * 50)


small_profiles = st.one_of(
    st.builds(
        lambda K, p0, a: build_profile("growing", K=K, p0=p0, a=a),
        st.integers(1, 8),
        st.integers(1, 4),
        st.integers(0, 3),
    ),
    st.builds(lambda K: build_profile("descending", K=K), st.integers(1, 7)),
    st.builds(
        lambda K, w: build_profile("custom", K=K, custom=[w[i % len(w)] for i in range(K - 1)]),
        st.integers(1, 7),
        st.lists(st.fractions(min_value=Fraction(1, 5), max_value=5), min_size=1, max_size=4),
    ),
)


@given(small_profiles, st.integers(0, 11))
def test_recursion_matches_enumeration(prof, N):
    assert count_paths(prof, N).counts == enumerate_paths_bruteforce(prof, N).counts


@given(small_profiles, st.integers(0, 8), st.integers(0, 8))
def test_counts_compose(prof, n1, n2):
    T = transfer_matrix(prof)
    via_split = [0] * prof.K
    first = propagate(T, n1)
    for j, z in enumerate(first):
        if z:
            for k, y in enumerate(propagate(T, n2, start=j)):
                via_split[k] += z * y
    assert via_split == propagate(T, n1 + n2)
