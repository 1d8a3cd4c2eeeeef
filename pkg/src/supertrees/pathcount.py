"""Exact path counting on super trees.

``Z_N(k)`` counts the ``N``-step nearest-level walks from the root that end at
level ``k``, summed over all vertices of that level.  Counts are Python ints
(or ``Fraction`` for rational weights), so nothing overflows.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import EmptyEnsemble, OracleTooLarge
from .supertree import BranchingProfile, TransferMatrix, build_profile, transfer_matrix

BRUTE_FORCE_LIMIT = 20
# constant of the linear watermelon entropy term: 2 ln 2 + 1
WATERMELON_C = 2 * math.log(2) + 1


@dataclass(frozen=True)
class PathCountVector:
    N: int
    counts: tuple

    @property
    def total(self):
        return sum(self.counts)

    def __getitem__(self, k):
        return self.counts[k]

    def __len__(self):
        return len(self.counts)


@dataclass(frozen=True)
class WatermelonEstimate:
    N: int
    logZW: float
    linear_coeff: float
    correction: float


def propagate(T: TransferMatrix, N: int, start: int = 0) -> list:
    """``T**N`` applied to the indicator of level ``start``."""
    if N < 0:
        raise ValueError("N must be non-negative")
    K = T.K
    Z = [0] * K
    Z[start] = 1
    diag, sub, sup = T.diag, T.sub, T.sup
    has_diag = any(d != 0 for d in diag)
    lo = hi = start  # support of Z after n steps
    for _ in range(N):
        lo2, hi2 = max(lo - 1, 0), min(hi + 1, K - 1)
        new = [0] * K
        for k in range(lo2, hi2 + 1):
            v = diag[k] * Z[k] if has_diag else 0
            if k >= 1:
                v += sub[k - 1] * Z[k - 1]
            if k + 1 < K:
                v += sup[k] * Z[k + 1]
            new[k] = v
        Z, lo, hi = new, lo2, hi2
    return Z


def count_paths(profile: BranchingProfile, N: int) -> PathCountVector:
    return PathCountVector(N=N, counts=tuple(propagate(transfer_matrix(profile), N)))


def enumerate_paths_bruteforce(profile: BranchingProfile, N: int) -> PathCountVector:
    """Depth-first walk over every level sequence; exponential in ``N``."""
    if N > BRUTE_FORCE_LIMIT:
        raise OracleTooLarge(f"brute force is limited to N <= {BRUTE_FORCE_LIMIT}, got {N}")
    K, w = profile.K, profile.weights
    totals = [0] * K

    def walk(level, steps_left, weight):
        if steps_left == 0:
            totals[level] += weight
            return
        if level + 1 < K:
            walk(level + 1, steps_left - 1, weight * w[level])
        if level > 0:
            walk(level - 1, steps_left - 1, weight)

    walk(0, N, 1)
    return PathCountVector(N=N, counts=tuple(totals))


def mean_displacement(profile: BranchingProfile, N: int) -> float:
    if N < 1:
        raise ValueError("N must be at least 1")
    Z = count_paths(profile, N).counts
    total = sum(Z)
    if total == 0:
        raise EmptyEnsemble(f"no {N}-step paths on this profile")
    moment = sum(k * z for k, z in enumerate(Z))
    if any(isinstance(z, float) for z in Z):
        return moment / total
    return float(Fraction(moment) / Fraction(total))


def log_count(x) -> float:
    # math.log handles big ints exactly-rounded; Fractions need a split
    if isinstance(x, Fraction):
        return math.log(x.numerator) - math.log(x.denominator)
    return math.log(x)


def entropy(N: int) -> float:
    """``ln sum_k Z_N(k)`` on the growing ``p_0 = 1, a = 1`` tree with ``K = N``."""
    if N < 1:
        raise ValueError("N must be at least 1")
    total = count_paths(build_profile("growing", K=N, p0=1, a=1), N).total
    if total == 0:
        raise EmptyEnsemble(f"no {N}-step paths on a {N}-level tree")
    return log_count(total)


def watermelon(N: int) -> WatermelonEstimate:
    """Two ``N``-step paths that meet at one vertex of level ``K = N``."""
    if N < 2:
        raise ValueError("N must be at least 2")
    logZW = 2 * entropy(N) - math.lgamma(N + 1)
    return WatermelonEstimate(
        N=N,
        logZW=logZW,
        linear_coeff=logZW / N,
        correction=logZW - WATERMELON_C * N,
    )
