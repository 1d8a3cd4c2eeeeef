"""Generating functions of path counts, ``sum_N s**N Z_N(k)``.

Every closed form is stored as an exact rational function of ``s`` so its
Maclaurin coefficients can be compared digit for digit with the path counts.

Descending trees use weight ``s**2`` per level of the continued fraction: one
excursion to the next level and back costs two steps.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import _poly
from .airy import airy_log_derivative
from .errors import OutOfWindow, PoleHit
from .spectral import eigenvalues, monic_hermite
from .supertree import BranchingProfile, as_number, build_profile, transfer_matrix


@dataclass(frozen=True)
class RationalGF:
    """``s**shift * num(s) / den(s)`` with ascending integer coefficient tuples."""

    num: tuple
    den: tuple
    shift: int = 0

    def __call__(self, s):
        s = as_number(s) if isinstance(s, str) else s
        d = _poly.horner(self.den, s)
        if d == 0:
            raise PoleHit(f"denominator vanishes at s={s}")
        n = _poly.horner(self.num, s)
        if isinstance(d, int) and isinstance(n, int):
            val = Fraction(n, d)
        else:
            val = n / d
        if self.shift >= 0:
            return val * s**self.shift
        return val / s ** (-self.shift)

    def laurent(self, nmax: int) -> dict:
        """Coefficients of ``s**p`` for ``p <= nmax`` (negative powers included)."""
        n_terms = nmax + 1 - self.shift
        if n_terms <= 0:
            return {}
        coeffs = _poly.series_divide(self.num, self.den, n_terms)
        return {p + self.shift: c for p, c in enumerate(coeffs) if c != 0}

    def series(self, nmax: int) -> list:
        """Maclaurin coefficients of ``s**0 .. s**nmax``."""
        terms = self.laurent(nmax)
        if any(p < 0 for p in terms):
            raise ValueError("not a power series: negative powers of s present")
        return [terms.get(p, 0) for p in range(nmax + 1)]

    def smallest_positive_pole(self, hi: float = 1.0, grid: int = 4000) -> float:
        """Bisect the first sign change of the denominator on ``(0, hi]``."""
        f = lambda s: _poly.horner(self.den, s)
        prev_s, prev = 0.0, f(0.0)
        for i in range(1, grid + 1):
            s = hi * i / grid
            cur = f(s)
            if cur == 0:
                return s
            if (cur > 0) != (prev > 0):
                lo, up = prev_s, s
                for _ in range(200):
                    mid = 0.5 * (lo + up)
                    if (f(mid) > 0) == (prev > 0):
                        lo = mid
                    else:
                        up = mid
                    if up - lo < 1e-16:
                        break
                return 0.5 * (lo + up)
            prev_s, prev = s, cur
        raise ValueError(f"no pole in (0, {hi}]")


@dataclass(frozen=True)
class RPolynomial:
    k: int
    coeffs: tuple

    def __call__(self, s):
        return _poly.horner(self.coeffs, s)


@lru_cache(maxsize=None)
def r_polynomial(k: int) -> RPolynomial:
    """``R_{k+1} = R_k - (k+1) s**2 R_{k-1}``, ``R_0 = R_1 = 1``."""
    if k < 0:
        raise ValueError("k must be non-negative")
    if k <= 1:
        return RPolynomial(k, (1,))
    prev, cur = r_polynomial(k - 2).coeffs, r_polynomial(k - 1).coeffs
    return RPolynomial(k, tuple(_poly.sub(cur, _poly.shift(_poly.scale(prev, k), 2))))


def _reversed_hermite(K: int) -> list:
    """Coefficients of ``s**K He_K(1/s)``."""
    return _poly.reciprocal(monic_hermite(K).coeffs, K)


def series_from_counts(profile: BranchingProfile, k: int, nmax: int) -> list:
    if not 0 <= k < profile.K:
        raise ValueError(f"level {k} outside 0..{profile.K - 1}")
    if nmax < 0:
        raise ValueError("nmax must be non-negative")
    T = transfer_matrix(profile)
    K = T.K
    vec = [0] * K
    vec[0] = 1
    out = []
    for _ in range(nmax + 1):
        out.append(vec[k])
        new = [0] * K
        for j in range(K):
            v = T.sub[j - 1] * vec[j - 1] if j >= 1 else 0
            if j + 1 < K:
                v += vec[j + 1]
            new[j] = v
        vec = new
    return out


def level_gf(profile: BranchingProfile, k: int) -> RationalGF:
    """Cofactor form of ``sum_N s**N Z_N(k)`` for any exact profile.

    ``(I - sT)^{-1}_{k0} = s**k w_1..w_k det(I - s T_tail) / det(I - sT)``
    where ``T_tail`` is the block of levels ``k+1 .. K-1``.
    """
    K, w = profile.K, profile.weights
    if not 0 <= k < K:
        raise ValueError(f"level {k} outside 0..{K - 1}")
    zeros = (0,) * K
    den = _poly.reciprocal(_full_charpoly(zeros, w), K)
    tail_w = w[k + 1 :]
    tail_K = K - 1 - k
    tail = _poly.reciprocal(_full_charpoly(zeros[:tail_K], tail_w), tail_K) if tail_K else [1]
    num = _poly.scale(tail, math.prod(w[:k]))
    return RationalGF(tuple(num), tuple(den), shift=k)


def _full_charpoly(diag, products) -> list:
    prev, cur = [1], _poly.trim([-diag[0], 1]) if diag else [1]
    for j in range(1, len(diag)):
        prev, cur = cur, _poly.sub(_poly.mul([-diag[j], 1], cur), _poly.scale(prev, products[j - 1]))
    return cur


@lru_cache(maxsize=None)
def growing_root_gf(K: int) -> RationalGF:
    """Returns to the root on the growing ``a = 1`` tree: ``R_{K-1}(s) / (s**K He_K(1/s))``."""
    if K < 1:
        raise ValueError("K must be positive")
    return RationalGF(r_polynomial(K - 1).coeffs, tuple(_reversed_hermite(K)))


def gf_root_return_growing(K: int, s):
    return growing_root_gf(K)(s)


@lru_cache(maxsize=None)
def descending_root_gf(P: int) -> RationalGF:
    """``He_{P-1}(1/s) / (s He_P(1/s))`` as a rational function of ``s``."""
    if P < 1:
        raise ValueError("P must be positive")
    num = _reversed_hermite(P - 1)
    return RationalGF(tuple(num), tuple(_reversed_hermite(P)))


def descending_continued_fraction(P: int, s, depth: int | None = None):
    """``1/(1 - (P-1)s^2/(1 - (P-2)s^2/(... /(1 - 1*s^2))))`` evaluated bottom-up."""
    if P < 1:
        raise ValueError("P must be positive")
    levels = P - 1 if depth is None else min(depth, P - 1)
    s2 = s * s
    f = 1
    # innermost level carries the smallest weight that is still inside the cut
    for j in range(P - levels, P):
        denom = 1 - j * s2 * f
        if denom == 0:
            raise PoleHit(f"continued fraction hits a pole at s={s}")
        f = Fraction(1) / denom if not isinstance(denom, float) else 1 / denom
    return f


def descending_cf_series(P: int, nmax: int) -> list:
    """Maclaurin coefficients of the descending continued fraction, by series inversion."""
    f = [1]
    for j in range(1, P):
        # 1 / (1 - j s^2 f)
        f = _poly.series_inverse_one_minus(_poly.shift(_poly.scale(f, j), 2)[: nmax + 1], nmax + 1)
    return (list(f) + [0] * (nmax + 1))[: nmax + 1]


def gf_root_return_descending(P: int, s, depth: int | None = None):
    """``(continued_fraction, hermite_ratio)``; they agree identically."""
    return descending_continued_fraction(P, s, depth), descending_root_gf(P)(s)


@lru_cache(maxsize=None)
def to_end_gf(K: int) -> RationalGF:
    """Paths from the root to the last level: ``(K-1)! s**(K-1) / (s**K He_K(1/s))``."""
    if K < 1:
        raise ValueError("K must be positive")
    return RationalGF((math.factorial(K - 1),), tuple(_reversed_hermite(K)), shift=K - 1)


def gf_to_end_growing(K: int, s):
    return to_end_gf(K)(s)


def to_end_candidates(K: int) -> dict:
    """Competing closed forms for root-to-end paths, for arbitration by the series.

    ``hermite_times_r``: ``He_{K-1}(1/s) R_{K-1}(s) / (s**K He_K(1/s))``.
    ``logderiv_r_of_s2``: ``R_{K-1}(s**2) / (K s**K) * d/d(1/s) ln He_K(1/s)``.
    ``cofactor``: the form implemented by :func:`to_end_gf`.
    """
    den = tuple(_reversed_hermite(K))
    r = r_polynomial(K - 1).coeffs
    # He_{K-1}(1/s) = s**-(K-1) * rev(He_{K-1})
    hermite_times_r = RationalGF(tuple(_poly.mul(_reversed_hermite(K - 1), r)), den, shift=-(K - 1))
    dH = _poly.derivative(monic_hermite(K).coeffs)
    num = _poly.mul(_poly.reciprocal(dH, K - 1), _poly.substitute_square(r))
    num = [Fraction(c, K) for c in num]
    logderiv = RationalGF(tuple(num), den, shift=-(K - 1))
    return {"hermite_times_r": hermite_times_r, "logderiv_r_of_s2": logderiv, "cofactor": to_end_gf(K)}


def arbitrate_to_end(K: int, nmax: int = 40) -> dict:
    """Which candidate's expansion equals the exact root-to-end counts."""
    counts = series_from_counts(build_profile("growing", K=K, p0=1, a=1), K - 1, nmax)
    target = {p: c for p, c in enumerate(counts) if c != 0}
    return {name: gf.laurent(nmax) == target for name, gf in to_end_candidates(K).items()}


def edge_variable(P: int, s: float) -> float:
    return (1 / s - 2 * math.sqrt(P)) * P ** (1 / 6)


def gf_edge_asymptotic(P: int, s: float) -> float:
    """``2 + 2 P**(-1/3) Ai'(z)/Ai(z)`` with ``z = (1/s - 2 sqrt(P)) P**(1/6)``."""
    if P < 50:
        raise ValueError("edge asymptotics need P >= 50")
    if abs(1 / float(s) - 2 * math.sqrt(P)) > 4 * P ** (-1 / 6):
        raise OutOfWindow(f"1/s={1 / float(s):.6g} is farther than 4 P^(-1/6) from 2 sqrt(P)")
    z = edge_variable(P, float(s))
    return 2 + 2 * P ** (-1 / 3) * airy_log_derivative(z)


def pole_estimate(K: int) -> float:
    """``1 / lambda_max``: radius of convergence of the growing/descending series."""
    profile = build_profile("growing", K=K, p0=1, a=1)
    lam = eigenvalues(transfer_matrix(profile)).lambda_max
    return 1.0 / lam if lam > 0 else math.inf
