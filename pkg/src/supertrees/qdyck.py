"""Area-weighted Dyck paths, q-Catalan numbers and the q-Airy continued fraction.

Levels are counted from 0 at the root.  A step up into level ``h`` carries
the fugacity ``q**(h-1)``, so the exponent collected by an excursion is its
area in full plaquettes between the path and the diagonal.  Writing
``q = exp(H)`` makes ``H`` the field conjugate to that area.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Sequence

import numpy as np

from .airy import airy_log_derivative, airy_zero
from .errors import NotConverged, OracleTooLarge, PoleHit, WeightUnderflow
from .pathcount import count_paths
from .supertree import as_exact, build_profile

BRUTE_FORCE_LIMIT = 24
# the collapse variable z must keep s = 1/4 - z (1-q)^(2/3) inside the Catalan disc
COLLAPSE_WINDOW = (0.0, 4.0)


@dataclass(frozen=True)
class QPolynomial:
    """Polynomial in ``q`` with integer coefficients, ``coeffs[e]`` multiplies ``q**e``."""

    coeffs: tuple = (0,)

    def __post_init__(self):
        c = list(self.coeffs) or [0]
        while len(c) > 1 and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def monomial(cls, e: int, c: int = 1) -> "QPolynomial":
        return cls((0,) * e + (c,))

    @classmethod
    def from_map(cls, mapping: dict) -> "QPolynomial":
        if not mapping:
            return cls()
        top = max(int(e) for e in mapping)
        c = [0] * (top + 1)
        for e, v in mapping.items():
            c[int(e)] += int(v)
        return cls(tuple(c))

    @property
    def coefficients(self) -> dict:
        return {e: c for e, c in enumerate(self.coeffs) if c != 0}

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1 if self else -1

    def to_json(self) -> dict:
        return {str(e): c for e, c in self.coefficients.items()}

    def __bool__(self):
        return self.coeffs != (0,)

    def __add__(self, other: "QPolynomial") -> "QPolynomial":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return QPolynomial(tuple(x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)))

    def __mul__(self, other: "QPolynomial") -> "QPolynomial":
        if not self or not other:
            return QPolynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(other.coeffs):
                    out[i + j] += x * y
        return QPolynomial(tuple(out))

    def shifted(self, e: int) -> "QPolynomial":
        """Multiply by ``q**e``."""
        if not self:
            return self
        return QPolynomial((0,) * e + self.coeffs)

    def __call__(self, q):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * q + c
        return acc

    def total(self) -> int:
        """Value at ``q = 1``: the plain path count."""
        return sum(self.coeffs)


ZERO = QPolynomial()
ONE = QPolynomial((1,))


@dataclass(frozen=True)
class QSeriesValue:
    s: float
    q: float
    value: float
    truncation: int
    achieved_tol: float


def dyck_partition(N: int, K: int, q=None) -> list:
    """Area-weighted path counts ``W_N(h)`` for every level ``h < K``.

    With ``q=None`` the entries are :class:`QPolynomial`; otherwise ``q`` is
    substituted (exactly, when it is rational) at every step.
    """
    if N < 0:
        raise ValueError("N must be non-negative")
    if K < 2:
        raise ValueError("K must be at least 2")
    if q is None:
        W = [ONE] + [ZERO] * (K - 1)
        for _ in range(N):
            new = [ZERO] * K
            for h in range(K):
                acc = W[h - 1].shifted(h - 1) if h >= 1 else ZERO
                if h + 1 < K:
                    acc = acc + W[h + 1]
                new[h] = acc
            W = new
        return W
    q = as_exact(q) if not isinstance(q, float) else q
    return _walk_history([0] + [q ** (h - 1) for h in range(1, K)], N)[-1]


def plaquette_area(path: Sequence[int]) -> int:
    """Full unit squares between a Dyck path and the diagonal.

    Up steps go north and down steps go east; in column ``i`` the cells
    strictly above the diagonal and below the path number
    ``max(0, y_i - (i + 1))``.
    """
    area, y, col = 0, 0, 0
    for step in path:
        if step > 0:
            y += 1
        else:
            area += max(0, y - (col + 1))
            col += 1
    return area


def dyck_bruteforce(N: int) -> QPolynomial:
    """Sum of ``q**area`` over every ``N``-step excursion, enumerated explicitly."""
    if N > BRUTE_FORCE_LIMIT:
        raise OracleTooLarge(f"brute force is limited to N <= {BRUTE_FORCE_LIMIT}, got {N}")
    if N % 2:
        return ZERO
    counts: dict = {}
    for ups in combinations(range(N), N // 2):
        path = [-1] * N
        for i in ups:
            path[i] = 1
        height = 0
        for step in path:
            height += step
            if height < 0:
                break
        else:
            a = plaquette_area(path)
            counts[a] = counts.get(a, 0) + 1
    return QPolynomial.from_map(counts)


@lru_cache(maxsize=None)
def q_catalan(n: int) -> QPolynomial:
    """``C_n(q) = sum_k q**k C_k(q) C_{n-k-1}(q)``, ``C_0 = 1``."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 0:
        return ONE
    acc = ZERO
    for k in range(n):
        acc = acc + (q_catalan(k) * q_catalan(n - k - 1)).shifted(k)
    return acc


def catalan_number(n: int) -> int:
    return math.comb(2 * n, n) // (n + 1)


def q_airy(s: float, q: float, tol: float = 1e-13, max_terms: int = 100_000) -> QSeriesValue:
    """``A_q(s) = sum_n q**(n**2) (-s)**n / (q;q)_n``.

    The sum stops once the geometric bound on the tail drops below ``tol``.
    Rounding in the partial sums is bounded by ``eps * sum |t_n|``; when that
    alone exceeds ``tol`` the series cannot deliver the requested accuracy.
    """
    if not 0 < q < 1:
        raise ValueError(f"q must lie in (0, 1), got {q}")
    if tol <= 0:
        raise ValueError("tol must be positive")
    term, total, abs_sum = 1.0, 1.0, 1.0
    n = 0
    while n < max_terms:
        n += 1
        ratio = -s * q ** (2 * n - 1) / (1 - q**n)
        term *= ratio
        total += term
        abs_sum += abs(term)
        nxt = abs(s) * q ** (2 * n + 1) / (1 - q ** (n + 1))
        if nxt < 1:
            tail = abs(term) * nxt / (1 - nxt)
            roundoff = np.finfo(float).eps * abs_sum * 4
            if tail + roundoff < tol:
                return QSeriesValue(s, q, total, n, tail + roundoff)
            if tail < tol:
                raise NotConverged(
                    f"A_q(s) at q={q}, s={s}: cancellation leaves error ~{roundoff:.1e} above tol={tol:.1e}"
                )
    raise NotConverged(f"A_q(s) at q={q}, s={s} needs more than {max_terms} terms")


def F_ratio(s: float, q: float, tol: float = 1e-13) -> float:
    """``A_q(s) / A_q(s/q)``, the q-Airy form of the area generating function."""
    den = q_airy(s / q, q, tol).value
    if den == 0:
        raise PoleHit(f"A_q(s/q) vanishes at s={s}, q={q}")
    return q_airy(s, q, tol).value / den


def _cf_bottom_up(s: float, q: float, depth: int) -> float:
    f = 1.0
    for j in range(depth - 1, -1, -1):
        denom = 1 - s * q**j * f
        if denom == 0:
            raise PoleHit(f"continued fraction hits a pole at s={s}, q={q}")
        f = 1 / denom
    return f


def cf_F(s: float, q: float, depth: int = 200, tol: float = 1e-14, max_depth: int = 1 << 20) -> float:
    """``F = 1/(1 - s/(1 - sq/(1 - sq^2/...)))``, doubling the depth until two evaluations agree."""
    if depth < 1:
        raise ValueError("depth must be at least 1")
    if s == 0:
        return 1.0
    prev = _cf_bottom_up(s, q, depth)
    while depth < max_depth:
        depth *= 2
        cur = _cf_bottom_up(s, q, depth)
        if abs(cur - prev) <= tol * max(1.0, abs(cur)):
            return cur
        prev = cur
    raise NotConverged(f"continued fraction at s={s}, q={q} still moving at depth {depth}")


def cf_series(nmax: int) -> list:
    """Exact ``s``-expansion of the continued fraction, one :class:`QPolynomial` per power.

    Level ``j`` of the fraction is ``F(s q**j) = 1 / (1 - s q**j F(s q**(j+1)))``;
    the coefficient of ``s**n`` only sees the top ``n`` levels, so truncating at
    depth ``nmax + 1`` is exact up to ``s**nmax``.
    """
    below = [ONE] + [ZERO] * nmax
    for j in range(nmax, -1, -1):
        # X = s q^j F_{j+1}: X_m = q^j below[m-1]
        X = [ZERO] + [below[m - 1].shifted(j) for m in range(1, nmax + 1)]
        G = [ONE] + [ZERO] * nmax
        for n in range(1, nmax + 1):
            acc = ZERO
            for m in range(1, n + 1):
                if X[m] and G[n - m]:
                    acc = acc + X[m] * G[n - m]
            G[n] = acc
        below = G
    return below


def catalan_closed(s: float) -> float:
    """``(1 - sqrt(1 - 4s)) / (2s)``, the ``q = 1`` value of ``F``."""
    if s == 0:
        return 1.0
    if s > 0.25:
        raise ValueError(f"s={s} is beyond the branch point 1/4")
    return (1 - math.sqrt(1 - 4 * s)) / (2 * s)


def _collapse_s(q: float, z: float) -> float:
    return 0.25 - z * (1 - q) ** (2 / 3)


@dataclass
class CollapseTable:
    rows: list
    regular: str

    def curves(self) -> dict:
        out: dict = {}
        for q, z, g in self.rows:
            out.setdefault(q, []).append((z, g))
        return {q: np.array(v) for q, v in out.items()}

    @property
    def range(self) -> float:
        g = np.array([r[2] for r in self.rows])
        return float(g.max() - g.min())


def edge_collapse(q_list: Sequence[float], z_grid: Sequence[float], regular: str = "catalan") -> CollapseTable:
    """``g(q, z) = (F(s, q) - F_reg(s)) / (1 - q)**(1/3)`` at ``s = 1/4 - z (1-q)**(2/3)``.

    ``regular="catalan"`` subtracts ``F(s, 1)``; ``regular="constant"`` subtracts
    the branch-point value 2.
    """
    lo, hi = COLLAPSE_WINDOW
    for q in q_list:
        if not 0.9 < q < 1:
            raise ValueError(f"collapse needs q in (0.9, 1), got {q}")
    for z in z_grid:
        if not lo <= z <= hi:
            raise ValueError(f"z={z} outside the collapse window [{lo}, {hi}]")
    if regular not in ("catalan", "constant"):
        raise ValueError(f"unknown regular part {regular!r}")
    rows = []
    for q in q_list:
        for z in z_grid:
            s = _collapse_s(q, z)
            reg = catalan_closed(s) if regular == "catalan" else 2.0
            rows.append((float(q), float(z), (cf_F(s, q) - reg) / (1 - q) ** (1 / 3)))
    return CollapseTable(rows, regular)


def collapse_deviation(table: CollapseTable) -> float:
    """Largest pairwise gap between curves, as a fraction of the pooled range."""
    curves = list(table.curves().values())
    worst = 0.0
    for i in range(len(curves)):
        for j in range(i + 1, len(curves)):
            worst = max(worst, float(np.max(np.abs(curves[i][:, 1] - curves[j][:, 1]))))
    rng = table.range
    return worst / rng if rng > 0 else 0.0


def airy_profile(z) -> np.ndarray:
    """``d/dz ln Ai(4z)``; finite for ``z > a_1 / 4``."""
    z = np.atleast_1d(np.asarray(z, dtype=float))
    if np.any(z <= airy_zero(1) / 4):
        raise ValueError("profile has a pole at z = a_1/4")
    return np.array([4 * airy_log_derivative(4 * x) for x in z])


@dataclass(frozen=True)
class AiryCalibration:
    scale: float
    offset: float
    max_residual: float
    range: float


def airy_calibration(q: float, z_grid: Sequence[float]) -> AiryCalibration:
    """Fit ``g(q, z) ~ scale * d/dz ln Ai(4z) + offset`` once, with the constant regular part."""
    table = edge_collapse([q], z_grid, regular="constant")
    z, g = table.curves()[float(q)].T
    prof = airy_profile(z)
    A = np.column_stack([prof, np.ones_like(prof)])
    (scale, offset), *_ = np.linalg.lstsq(A, g, rcond=None)
    resid = g - (scale * prof + offset)
    return AiryCalibration(float(scale), float(offset), float(np.max(np.abs(resid))), float(g.max() - g.min()))


@dataclass(frozen=True)
class CorrespondenceReport:
    eps: Fraction
    N: int
    K: int
    linear_equals_growing: bool
    max_remainder: float
    max_count: float


def _walk_history(fug: list, N: int) -> list:
    """Level vectors after 0..N steps; ``fug[h]`` weights the step up into level ``h``."""
    K = len(fug)
    W = [Fraction(1)] + [Fraction(0)] * (K - 1)
    history = [W]
    for _ in range(N):
        W = [(fug[h] * W[h - 1] if h >= 1 else 0) + (W[h + 1] if h + 1 < K else 0) for h in range(K)]
        history.append(W)
    return history


def tree_correspondence_check(eps, N: int, K: int) -> CorrespondenceReport:
    """Compare area-weighted counts at ``q = 1 - eps`` with the growing tree of velocity ``-eps``.

    The linearized fugacities ``1 - eps (h-1)`` are exactly the passage
    weights of that tree, so those two agree identically; the exact
    deformation differs from them at second order in ``eps``.
    """
    eps = as_exact(eps)
    if eps < 0:
        raise ValueError("eps must be non-negative")
    if eps * (K - 1) >= 1:
        raise WeightUnderflow(f"eps*(K-1) = {float(eps * (K - 1))} >= 1 drives passage weights to zero")
    if N > 200:
        raise OracleTooLarge("correspondence check is limited to N <= 200")
    q = 1 - eps
    lin = _walk_history([0] + [1 - eps * (h - 1) for h in range(1, K)], N)
    exact = _walk_history([0] + [q ** (h - 1) for h in range(1, K)], N)
    tree = build_profile("growing", K=K, p0=1, a=-eps)
    same = all(list(count_paths(tree, n).counts) == lin[n] for n in range(N + 1))
    remainder = max(abs(e - l) for row_e, row_l in zip(exact, lin) for e, l in zip(row_e, row_l))
    biggest = max(abs(x) for row in lin for x in row)
    return CorrespondenceReport(eps, N, K, same, float(remainder), float(biggest))


def remainder_ratio(eps, N: int, K: int) -> float:
    """``remainder(eps) / remainder(eps / 2)``; close to 4 for a second-order gap."""
    eps = as_exact(eps)
    big = tree_correspondence_check(eps, N, K).max_remainder
    small = tree_correspondence_check(eps / 2, N, K).max_remainder
    return big / small
