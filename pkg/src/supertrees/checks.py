"""Desk-scale identity and oracle checks behind ``supertrees selftest``."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import genfunc, qdyck, rmt
from .pathcount import count_paths, enumerate_paths_bruteforce
from .spectral import charpoly
from .supertree import build_profile, transfer_matrix


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


def hermite_fixture(n: int) -> list:
    """Coefficients of ``He_n`` from the explicit sum
    ``n! sum_m (-1)**m x**(n-2m) / (m! (n-2m)! 2**m)``."""
    c = [0] * (n + 1)
    for m in range(n // 2 + 1):
        c[n - 2 * m] = (-1) ** m * math.factorial(n) // (math.factorial(m) * math.factorial(n - 2 * m) * 2**m)
    return c


def check_hermite(kmax: int = 64) -> CheckResult:
    for K in range(1, kmax + 1):
        got = list(charpoly(transfer_matrix(build_profile("growing", K=K, p0=1, a=1))).coeffs)
        if got != hermite_fixture(K):
            return CheckResult("hermite_identity", False, f"charpoly differs from He_{K}")
    return CheckResult("hermite_identity", True, f"K <= {kmax}")


def check_path_oracle(nmax: int = 10) -> CheckResult:
    profiles = [build_profile("growing", K=8, p0=p0, a=a) for p0 in (1, 2, 3) for a in (0, 1, 2)]
    profiles += [build_profile("descending", K=P) for P in range(2, 7)]
    for prof in profiles:
        for N in range(nmax + 1):
            if count_paths(prof, N).counts != enumerate_paths_bruteforce(prof, N).counts:
                return CheckResult("path_count_oracle", False, f"{prof.kind.value} {prof.weights} N={N}")
    return CheckResult("path_count_oracle", True, f"{len(profiles)} profiles, N <= {nmax}")


def check_series(nmax: int = 40) -> CheckResult:
    for K in range(1, 13):
        prof = build_profile("growing", K=K, p0=1, a=1)
        if genfunc.growing_root_gf(K).series(nmax) != genfunc.series_from_counts(prof, 0, nmax):
            return CheckResult("series_identities", False, f"root returns, growing K={K}")
        if genfunc.to_end_gf(K).series(nmax) != genfunc.series_from_counts(prof, K - 1, nmax):
            return CheckResult("series_identities", False, f"root to end, growing K={K}")
    for P in range(1, 9):
        counts = genfunc.series_from_counts(build_profile("descending", K=P), 0, nmax)
        if genfunc.descending_root_gf(P).series(nmax) != counts or genfunc.descending_cf_series(P, nmax) != counts:
            return CheckResult("series_identities", False, f"root returns, descending P={P}")
    return CheckResult("series_identities", True, f"N <= {nmax}")


def check_q_catalan(nmax: int = 16) -> CheckResult:
    for N in range(0, nmax + 1, 2):
        W = qdyck.dyck_partition(N, N // 2 + 2)[0]
        if W != qdyck.q_catalan(N // 2) or W != qdyck.dyck_bruteforce(N):
            return CheckResult("q_catalan_bruteforce", False, f"N={N}")
    return CheckResult("q_catalan_bruteforce", True, f"N <= {nmax}")


def check_rmt_determinant(samples: int = 200, K: int = 50, seed: int = 0) -> CheckResult:
    spec = rmt.EnsembleSpec(K=K, seed=seed, sample_count=samples)
    worst = 0.0
    for i in range(samples):
        M = rmt.sample_matrix(spec, i)
        d1 = float(np.linalg.det(M.dense()))
        d2 = rmt.tridiagonal_det(rmt.shifted_matrix(M))
        worst = max(worst, abs(d1 - d2) / abs(d2))
    small = rmt.rationalized(rmt.sample_matrix(rmt.EnsembleSpec(K=10, seed=seed), 0))
    exact = rmt.exact_det(rmt.dense_rows(small)) == Fraction(rmt.tridiagonal_det(rmt.shifted_matrix(small)))
    ok = worst < 1e-8 and exact
    return CheckResult("rmt_determinant", ok, f"max relative gap {worst:.2e}, exact match {exact}")


def run_all(seed: int = 0) -> list:
    return [
        check_path_oracle(),
        check_hermite(),
        check_series(),
        check_q_catalan(),
        check_rmt_determinant(seed=seed),
    ]
