"""Characteristic polynomials, Hermite polynomials and transfer-matrix spectra.

Polynomials are exact (integer or rational coefficients).  Eigenvalues come
from LAPACK's tridiagonal solver applied to the symmetrized matrix, with a
Sturm-sequence count as an independent cross-check.

Sign convention: every characteristic polynomial is monic, ``det(lambda I - T)``.
The determinant ``det(T - lambda I)`` differs by ``(-1)**K``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np
from scipy.linalg import eigh_tridiagonal

from . import _poly
from .airy import airy, airy_zero
from .errors import OutOfWindow
from .supertree import SymmetricTridiagonal, TransferMatrix, symmetrize


@dataclass(frozen=True)
class CharPolynomial:
    """Monic polynomial, ``coeffs[i]`` multiplies ``lambda**i``."""

    coeffs: tuple

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x):
        return _poly.horner(self.coeffs, x)

    def derivative(self) -> "CharPolynomial":
        return CharPolynomial(tuple(_poly.derivative(self.coeffs)))


class Method(str, enum.Enum):
    SYMMETRIC_TRIDIAG_QL = "symmetric_tridiag_ql"
    POLYNOMIAL_ROOTS = "polynomial_roots"


@dataclass(frozen=True)
class SpectrumResult:
    eigenvalues: np.ndarray
    lambda_max: float
    method: Method


@dataclass
class SpectralHistogram:
    edges: np.ndarray
    counts: np.ndarray
    baseline: np.ndarray | None = None

    @property
    def total(self) -> int:
        return int(self.counts.sum())

    @property
    def mass(self) -> np.ndarray:
        return self.counts / self.total

    @property
    def density(self) -> np.ndarray:
        return self.mass / np.diff(self.edges)

    @property
    def centers(self) -> np.ndarray:
        return 0.5 * (self.edges[1:] + self.edges[:-1])

    def merge(self, other: "SpectralHistogram") -> "SpectralHistogram":
        if not np.array_equal(self.edges, other.edges):
            raise ValueError("histograms with different bin edges cannot be merged")
        return SpectralHistogram(self.edges, self.counts + other.counts, self.baseline)

    def rows(self):
        """``(bin_left, bin_right, density, baseline)`` tuples."""
        base = self.baseline if self.baseline is not None else [math.nan] * len(self.counts)
        dens = self.density
        for i in range(len(self.counts)):
            yield float(self.edges[i]), float(self.edges[i + 1]), float(dens[i]), float(base[i])


def continuant(diag: Sequence, products: Sequence, x=0) -> list:
    """Leading principal minors of ``x I - T`` for a tridiagonal ``T``.

    Only the diagonal and the products of opposite off-diagonal pairs enter.
    """
    D = [1, x - diag[0]]
    for k in range(1, len(diag)):
        D.append((x - diag[k]) * D[-1] - products[k - 1] * D[-2])
    return D


def charpoly(T: TransferMatrix) -> CharPolynomial:
    products = T.products
    prev, cur = [1], _poly.trim([-T.diag[0], 1])
    for k in range(1, T.K):
        nxt = _poly.sub(_poly.mul([-T.diag[k], 1], cur), _poly.scale(prev, products[k - 1]))
        prev, cur = cur, nxt
    return CharPolynomial(tuple(cur))


@lru_cache(maxsize=None)
def monic_hermite(K: int) -> CharPolynomial:
    """Probabilists' Hermite polynomial, ``He_k = x He_{k-1} - (k-1) He_{k-2}``."""
    if K < 0:
        raise ValueError("degree must be non-negative")
    if K == 0:
        return CharPolynomial((1,))
    if K == 1:
        return CharPolynomial((0, 1))
    prev, cur = monic_hermite(K - 2).coeffs, monic_hermite(K - 1).coeffs
    return CharPolynomial(tuple(_poly.sub(_poly.shift(cur, 1), _poly.scale(prev, K - 1))))


@lru_cache(maxsize=None)
def physicists_hermite(K: int) -> CharPolynomial:
    """``H_k = 2x H_{k-1} - 2(k-1) H_{k-2}``; not monic, wrapped for evaluation only."""
    if K == 0:
        return CharPolynomial((1,))
    if K == 1:
        return CharPolynomial((0, 2))
    prev, cur = physicists_hermite(K - 2).coeffs, physicists_hermite(K - 1).coeffs
    return CharPolynomial(tuple(_poly.sub(_poly.shift(_poly.scale(cur, 2), 1), _poly.scale(prev, 2 * (K - 1)))))


def hermite_value(K: int, x):
    """``He_K(x)`` by the three-term recurrence; exact for rational ``x``."""
    prev, cur = 1, x
    if K == 0:
        return prev
    for k in range(2, K + 1):
        prev, cur = cur, x * cur - (k - 1) * prev
    return cur


def sturm_count(diag: Sequence, products: Sequence, x: float) -> int:
    """Number of eigenvalues strictly below ``x``."""
    count = 0
    d = float(diag[0]) - x
    tiny = 1e-300
    if d < 0:
        count += 1
    for k in range(1, len(diag)):
        if d == 0:
            d = tiny
        d = float(diag[k]) - x - float(products[k - 1]) / d
        if d < 0:
            count += 1
    return count


def _as_symmetric(T) -> SymmetricTridiagonal:
    return T if isinstance(T, SymmetricTridiagonal) else symmetrize(T)


def eigenvalues(T, method: Method | str = Method.SYMMETRIC_TRIDIAG_QL) -> SpectrumResult:
    method = Method(method)
    if method is Method.POLYNOMIAL_ROOTS:
        if not isinstance(T, TransferMatrix):
            T = TransferMatrix(T.diag, T.offdiag_sq, (1,) * (T.K - 1))
        coeffs = [float(c) for c in charpoly(T).coeffs]
        ev = np.sort(np.roots(coeffs[::-1]).real)
    else:
        S = _as_symmetric(T)
        d = np.array([float(x) for x in S.diag])
        if S.K == 1:
            ev = d.copy()
        else:
            e = np.array([float(x) for x in S.offdiag])
            ev = np.sort(eigh_tridiagonal(d, e, eigvals_only=True, lapack_driver="stev"))
    return SpectrumResult(eigenvalues=ev, lambda_max=float(ev[-1]), method=method)


def semicircle_pdf(lam, K: float = 1.0):
    """Wigner semicircle of radius ``2 sqrt(K)`` normalized to unit mass."""
    lam = np.asarray(lam, dtype=float)
    return np.sqrt(np.clip(4 * K - lam**2, 0, None)) / (2 * np.pi * K)


def semicircle_cdf(lam, K: float = 1.0):
    x = np.clip(np.asarray(lam, dtype=float) / (2 * math.sqrt(K)), -1.0, 1.0)
    return 0.5 + (x * np.sqrt(1 - x * x) + np.arcsin(x)) / np.pi


def ks_distance(sample, cdf) -> float:
    """Kolmogorov-Smirnov distance between an empirical sample and a CDF."""
    x = np.sort(np.asarray(sample, dtype=float))
    n = len(x)
    F = cdf(x)
    hi = np.arange(1, n + 1) / n - F
    lo = F - np.arange(0, n) / n
    return float(max(hi.max(), lo.max()))


def spectral_density(T, bins: int, baseline: bool = True) -> SpectralHistogram:
    if bins < 10:
        raise ValueError("at least 10 bins")
    ev = eigenvalues(T).eigenvalues
    counts, edges = np.histogram(ev, bins=bins, range=(ev[0], ev[-1]))
    base = None
    if baseline:
        centers = 0.5 * (edges[1:] + edges[:-1])
        base = semicircle_pdf(centers, K=len(ev))
    return SpectralHistogram(edges=edges, counts=counts, baseline=base)


def edge_window(K: int) -> tuple[float, float]:
    half = 4 * K ** (-1 / 6)
    return 2 * math.sqrt(K) - half, 2 * math.sqrt(K) + half


def hermite_edge_asymptotic(K: int, lam: float, log: bool = False):
    """Airy approximation of ``He_K(lam)`` near the spectral edge ``2 sqrt(K)``.

    With ``log=True`` returns ``(sign, ln|value|)``, which stays finite when
    the value itself overflows a double.
    """
    if K < 10:
        raise ValueError("edge asymptotics need K >= 10")
    lo, hi = edge_window(K)
    if not lo <= lam <= hi:
        raise OutOfWindow(f"lambda={lam} outside the edge window [{lo:.6g}, {hi:.6g}]")
    ai = airy((lam - 2 * math.sqrt(K)) * K ** (1 / 6))
    log_mag = (
        0.5 * math.log(2 * math.pi)
        - K / 2 * math.log(2)
        + K * math.log(2 * K) / 2
        - 1.5 * K
        + lam * math.sqrt(K)
        + math.log(K) / 6
    )
    if log:
        if ai == 0:
            return 0, -math.inf
        return (1 if ai > 0 else -1), log_mag + math.log(abs(ai))
    return math.exp(log_mag) * ai


def edge_prediction(K: int) -> float:
    """Largest eigenvalue predicted by the first Airy zero."""
    return 2 * math.sqrt(K) + airy_zero(1) * K ** (-1 / 6)


def exact_log_abs(x) -> float:
    if isinstance(x, Fraction):
        return math.log(abs(x.numerator)) - math.log(x.denominator)
    return math.log(abs(x))
