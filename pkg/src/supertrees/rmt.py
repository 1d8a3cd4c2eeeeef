"""Symmetric tridiagonal random matrices with chi-distributed couplings.

The coupling between rows ``k`` and ``k+1`` (``k = 1 .. K-1``) is drawn from
``chi_k``, so the parameter grows away from the top-left corner.  The more
common convention counts down from ``K-1``; the two are related by reversing
the basis, which leaves the spectrum unchanged.

Every sample is a pure function of ``(seed, index)``: sample ``index`` reads
its own Philox counter block, so samples can be drawn in any order or
partition and pooled histograms merge without coordination.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

import numpy as np

from .errors import InvalidDimension
from .spectral import SpectralHistogram, continuant, eigenvalues, ks_distance, semicircle_cdf, semicircle_pdf
from .supertree import SymmetricTridiagonal, TransferMatrix

# rescaled eigenvalues are binned on this fixed range so partial histograms merge
DENSITY_RANGE = (-3.0, 3.0)


@dataclass(frozen=True)
class ChiMoment:
    k: int
    mean: float
    mean_square: int


def chi_mean(k: int) -> ChiMoment:
    """``E[chi_k] = sqrt(2) Gamma((k+1)/2) / Gamma(k/2)``; ``E[chi_k**2] = k``."""
    if k < 1:
        raise ValueError("k must be at least 1")
    mean = math.sqrt(2) * math.exp(math.lgamma((k + 1) / 2) - math.lgamma(k / 2))
    return ChiMoment(k=k, mean=mean, mean_square=k)


@dataclass(frozen=True)
class EnsembleSpec:
    K: int
    diag_sigma: float = 1.0
    seed: int = 0
    sample_count: int = 1

    def __post_init__(self):
        if self.K < 2:
            raise InvalidDimension(f"K must be at least 2, got {self.K}")
        if self.sample_count < 1:
            raise ValueError("sample_count must be at least 1")
        if not self.diag_sigma > 0:
            raise ValueError("diag_sigma must be positive")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be an unsigned 64-bit integer")


def _stream(seed: int, index: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(key=seed, counter=[0, 0, 0, index]))


def sample_matrix(spec: EnsembleSpec, index: int) -> SymmetricTridiagonal:
    if not 0 <= index < spec.sample_count:
        raise IndexError(f"sample index {index} outside 0..{spec.sample_count - 1}")
    rng = _stream(spec.seed, index)
    diag = rng.normal(0.0, spec.diag_sigma, size=spec.K)
    k = np.arange(1, spec.K)
    offdiag = np.sqrt(rng.gamma(k / 2, 2.0))
    return SymmetricTridiagonal(diag=tuple(diag.tolist()), offdiag=tuple(offdiag.tolist()))


def shifted_matrix(M: SymmetricTridiagonal) -> TransferMatrix:
    """Unit superdiagonal, squared couplings below: same determinant and spectrum."""
    return TransferMatrix(diag=M.diag, sub=tuple(b * b for b in M.offdiag), sup=(1,) * (M.K - 1))


def averaged_matrix(K: int) -> tuple[SymmetricTridiagonal, TransferMatrix]:
    """Zero diagonal with couplings ``sqrt(k)``, and its shifted form with ``k`` below.

    ``sqrt(E[b**2]) = sqrt(k)`` is used (not ``E[b]``), so the products of
    opposite couplings are the integers ``k`` and both matrices share the
    determinant exactly.
    """
    if K < 2:
        raise InvalidDimension(f"K must be at least 2, got {K}")
    k = range(1, K)
    sym = SymmetricTridiagonal(
        diag=(0,) * K,
        offdiag=tuple(math.sqrt(j) for j in k),
        offdiag_sq=tuple(k),
    )
    return sym, TransferMatrix(diag=(0,) * K, sub=tuple(k), sup=(1,) * (K - 1))


def tridiagonal_det(T) -> float:
    """Determinant from the continuant; only diagonal and coupling products enter."""
    products = T.products if isinstance(T, TransferMatrix) else T.offdiag_sq
    minors = continuant(T.diag, products, x=0)
    return (-1) ** T.K * minors[-1]


def exact_det(rows) -> Fraction:
    """Determinant of a square matrix by fraction-exact Gaussian elimination."""
    A = [[Fraction(x) for x in row] for row in rows]
    n = len(A)
    det = Fraction(1)
    for c in range(n):
        pivot = next((r for r in range(c, n) if A[r][c] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != c:
            A[c], A[pivot] = A[pivot], A[c]
            det = -det
        det *= A[c][c]
        for r in range(c + 1, n):
            f = A[r][c] / A[c][c]
            if f:
                for j in range(c, n):
                    A[r][j] -= f * A[c][j]
    return det


def rationalized(M: SymmetricTridiagonal) -> SymmetricTridiagonal:
    """Exact copy of a float sample: every entry becomes the ``Fraction`` it already is."""
    diag = tuple(Fraction(x) for x in M.diag)
    off = tuple(Fraction(b) for b in M.offdiag)
    return SymmetricTridiagonal(diag=diag, offdiag=off, offdiag_sq=tuple(b * b for b in off))


def dense_rows(M: SymmetricTridiagonal) -> list:
    K = M.K
    rows = [[0] * K for _ in range(K)]
    for i in range(K):
        rows[i][i] = M.diag[i]
    for i, b in enumerate(M.offdiag):
        rows[i][i + 1] = rows[i + 1][i] = b
    return rows


def pooled_eigenvalues(spec: EnsembleSpec, indices: Iterable[int] | None = None) -> np.ndarray:
    idx = range(spec.sample_count) if indices is None else indices
    parts = [eigenvalues(sample_matrix(spec, i)).eigenvalues for i in idx]
    return np.concatenate(parts) if parts else np.empty(0)


def partial_density(spec: EnsembleSpec, bins: int, indices: Iterable[int]) -> SpectralHistogram:
    """Histogram of ``lambda / sqrt(K)`` over a subset of samples."""
    lam = pooled_eigenvalues(spec, indices) / math.sqrt(spec.K)
    lo, hi = DENSITY_RANGE
    counts, edges = np.histogram(np.clip(lam, lo, hi), bins=bins, range=DENSITY_RANGE)
    return SpectralHistogram(edges=edges, counts=counts)


def empirical_density(spec: EnsembleSpec, bins: int, baseline: bool = True) -> SpectralHistogram:
    if bins < 10:
        raise ValueError("at least 10 bins")
    hist = partial_density(spec, bins, range(spec.sample_count))
    if baseline:
        hist.baseline = semicircle_pdf(hist.centers, K=1)
    return hist


def semicircle_ks(spec: EnsembleSpec) -> float:
    """KS distance of the pooled rescaled spectrum from the unit-radius-2 semicircle."""
    lam = pooled_eigenvalues(spec) / math.sqrt(spec.K)
    return ks_distance(lam, lambda x: semicircle_cdf(x, 1))
