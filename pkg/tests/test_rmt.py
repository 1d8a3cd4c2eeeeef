import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from supertrees.errors import InvalidDimension
from supertrees.rmt import (
    EnsembleSpec,
    averaged_matrix,
    chi_mean,
    dense_rows,
    empirical_density,
    exact_det,
    partial_density,
    pooled_eigenvalues,
    rationalized,
    sample_matrix,
    semicircle_ks,
    shifted_matrix,
    tridiagonal_det,
)
from supertrees.spectral import charpoly, monic_hermite
from supertrees.supertree import build_profile, transfer_matrix


def test_chi_means_closed_form():
    assert chi_mean(1).mean == pytest.approx(math.sqrt(2 / math.pi), rel=1e-14)
    assert chi_mean(2).mean == pytest.approx(math.sqrt(math.pi / 2), rel=1e-14)
    assert chi_mean(7).mean_square == 7


def test_chi_mean_approaches_sqrt_k():
    m = chi_mean(10**4)
    assert abs(m.mean / 100 - 1) < 1e-4
    assert m.mean < 100


@given(st.integers(1, 10**6))
def test_chi_mean_below_root_mean_square(k):
    assert chi_mean(k).mean <= math.sqrt(k)


def test_chi_mean_domain():
    with pytest.raises(ValueError):
        chi_mean(0)


def test_spec_validation():
    with pytest.raises(InvalidDimension):
        EnsembleSpec(K=1)
    with pytest.raises(ValueError):
        EnsembleSpec(K=4, sample_count=0)
    with pytest.raises(ValueError):
        EnsembleSpec(K=4, diag_sigma=0)


def test_sample_index_bounds():
    with pytest.raises(IndexError):
        sample_matrix(EnsembleSpec(K=4, sample_count=2), 2)


def test_samples_are_reproducible_and_distinct():
    spec = EnsembleSpec(K=30, seed=11, sample_count=3)
    assert sample_matrix(spec, 1) == sample_matrix(spec, 1)
    assert sample_matrix(spec, 0) != sample_matrix(spec, 1)
    other = EnsembleSpec(K=30, seed=12, sample_count=3)
    assert sample_matrix(spec, 0) != sample_matrix(other, 0)


def test_sample_does_not_depend_on_sample_count():
    a = sample_matrix(EnsembleSpec(K=10, seed=5, sample_count=3), 2)
    b = sample_matrix(EnsembleSpec(K=10, seed=5, sample_count=50), 2)
    assert a == b


def test_diagonal_and_first_coupling_moments():
    spec = EnsembleSpec(K=2, seed=1, sample_count=20000)
    draws = [sample_matrix(spec, i) for i in range(spec.sample_count)]
    diag = np.array([d for M in draws for d in M.diag])
    assert abs(diag.mean()) < 3 * diag.std() / math.sqrt(diag.size)
    b1 = np.array([M.offdiag[0] for M in draws])
    assert b1.mean() == pytest.approx(math.sqrt(2 / math.pi), rel=0.02)


def test_coupling_mean_square_at_fifty():
    spec = EnsembleSpec(K=51, seed=2, sample_count=4000)
    b50 = np.array([sample_matrix(spec, i).offdiag[49] for i in range(spec.sample_count)])
    assert np.mean(b50**2) == pytest.approx(50, rel=0.01)


def test_averaged_matrix_entries():
    sym, shifted = averaged_matrix(5)
    assert sym.offdiag == pytest.approx((1, math.sqrt(2), math.sqrt(3), 2))
    assert sym.offdiag_sq == (1, 2, 3, 4)
    assert shifted.sub == (1, 2, 3, 4) and shifted.sup == (1, 1, 1, 1)


@pytest.mark.parametrize("K", [2, 3, 8, 32])
def test_mean_tree_is_the_growing_tree(K):
    _, shifted = averaged_matrix(K)
    assert charpoly(shifted) == monic_hermite(K)
    assert charpoly(shifted) == charpoly(transfer_matrix(build_profile("growing", K=K, p0=1, a=1)))


def test_averaged_determinants_agree_exactly():
    sym, shifted = averaged_matrix(9)
    assert tridiagonal_det(sym) == tridiagonal_det(shifted)
    assert tridiagonal_det(shifted) == (-1) ** 9 * monic_hermite(9)(0)


@given(st.integers(0, 2**32), st.integers(2, 12))
def test_rationalized_determinant_identity_is_exact(seed, K):
    M = rationalized(sample_matrix(EnsembleSpec(K=K, seed=seed), 0))
    assert exact_det(dense_rows(M)) == tridiagonal_det(shifted_matrix(M))


def test_exact_det_with_pivoting():
    assert exact_det([[0, 1], [1, 0]]) == -1
    assert exact_det([[0, 0], [0, 1]]) == 0
    assert exact_det([[Fraction(1, 2), 1], [1, 4]]) == 1


def test_float_determinant_identity():
    spec = EnsembleSpec(K=50, seed=3, sample_count=50)
    for i in range(spec.sample_count):
        M = sample_matrix(spec, i)
        d_dense = np.linalg.det(M.dense())
        d_shift = tridiagonal_det(shifted_matrix(M))
        assert abs(d_dense - d_shift) <= 1e-8 * abs(d_shift)


def test_histograms_merge_across_partitions():
    spec = EnsembleSpec(K=40, seed=9, sample_count=12)
    whole = empirical_density(spec, 20, baseline=False)
    parts = [partial_density(spec, 20, range(i, i + 4)) for i in (0, 4, 8)]
    left = parts[0].merge(parts[1]).merge(parts[2])
    right = parts[0].merge(parts[1].merge(parts[2]))
    assert np.array_equal(left.counts, whole.counts)
    assert np.array_equal(right.counts, whole.counts)


def test_identical_seed_identical_histogram():
    spec = EnsembleSpec(K=60, seed=4, sample_count=10)
    a, b = empirical_density(spec, 30), empirical_density(spec, 30)
    assert a.counts.tobytes() == b.counts.tobytes()


def test_pooled_spectrum_is_centered():
    spec = EnsembleSpec(K=100, seed=6, sample_count=50)
    lam = pooled_eigenvalues(spec)
    assert abs(lam.mean()) < 3 * lam.std() / math.sqrt(lam.size)


def test_rescaled_density_is_semicircle():
    assert semicircle_ks(EnsembleSpec(K=200, seed=8, sample_count=50)) < 0.05


def test_density_bin_floor():
    with pytest.raises(ValueError):
        empirical_density(EnsembleSpec(K=10), 5)
