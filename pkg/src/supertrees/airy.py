"""Airy function Ai, its derivative, logarithmic derivative and zeros.

Self-contained: the Maclaurin series is summed in ``decimal`` arithmetic with
enough guard digits to absorb the cancellation between its two branches, and
the classical asymptotic expansions take over for ``|z| > SERIES_LIMIT``.
Both routes are accurate to roughly double precision.
"""

from __future__ import annotations

import math
from decimal import Decimal, localcontext
from functools import lru_cache

from .errors import NotConverged

SERIES_LIMIT = 12.0

# Ai(0) and -Ai'(0) to 60 digits
_AI0 = Decimal("0.355028053887817239260063186004183176397979174199177240583327")
_DAI0 = Decimal("0.258819403792806798405183560189203963479091138354934582210002")


def _series(z: float) -> tuple[float, float]:
    zeta = 2.0 / 3.0 * abs(z) ** 1.5
    digits = 30 + int(2 * zeta / math.log(10))
    with localcontext() as ctx:
        ctx.prec = digits
        x = Decimal(z)
        x3 = x * x * x
        eps = Decimal(10) ** (-digits)
        # f = sum t_k, g = sum u_k; derivatives carry the power as a factor
        t, u = Decimal(1), x
        f, g = t, u
        df, dg = Decimal(0), Decimal(1)
        k = 0
        while True:
            t = t * x3 / ((3 * k + 2) * (3 * k + 3))
            u = u * x3 / ((3 * k + 3) * (3 * k + 4))
            k += 1
            f += t
            g += u
            if x != 0:
                df += t * (3 * k) / x
            dg += u * (3 * k + 1) / x if x != 0 else 0
            if abs(t) + abs(u) < eps and k > 2:
                break
            if k > 2000:
                raise NotConverged(f"Airy series did not settle at z={z}")
        ai = _AI0 * f - _DAI0 * g
        dai = _AI0 * df - _DAI0 * dg
        return float(ai), float(dai)


@lru_cache(maxsize=None)
def _u(k: int) -> float:
    if k == 0:
        return 1.0
    return _u(k - 1) * (6 * k - 5) * (6 * k - 3) * (6 * k - 1) / ((2 * k - 1) * 216 * k)


def _v(k: int) -> float:
    return -(6 * k + 1) / (6 * k - 1) * _u(k) if k else 1.0


def _asymptotic_sum(coef, zeta: float, sign: float, start: int = 0, step: int = 1) -> float:
    """Sum ``sign**j * coef(k) / zeta**k`` over k = start, start+step, ... up to the smallest term."""
    total, prev = 0.0, math.inf
    j = 0
    k = start
    while k < 60:
        term = coef(k) / zeta**k
        if abs(term) > prev:
            break
        total += sign**j * term
        prev = abs(term)
        if abs(term) < 1e-18 * max(abs(total), 1e-300):
            break
        j += 1
        k += step
    return total


def _asymptotic(z: float) -> tuple[float, float]:
    x = abs(z)
    zeta = 2.0 / 3.0 * x**1.5
    if z > 0:
        pre = math.exp(-zeta) / (2 * math.sqrt(math.pi))
        ai = pre / x**0.25 * _asymptotic_sum(_u, zeta, -1.0)
        dai = -pre * x**0.25 * _asymptotic_sum(_v, zeta, -1.0)
        return ai, dai
    phase = zeta + math.pi / 4
    s, c = math.sin(phase), math.cos(phase)
    ue = _asymptotic_sum(_u, zeta, -1.0, 0, 2)
    uo = _asymptotic_sum(_u, zeta, -1.0, 1, 2)
    ve = _asymptotic_sum(_v, zeta, -1.0, 0, 2)
    vo = _asymptotic_sum(_v, zeta, -1.0, 1, 2)
    ai = (s * ue - c * uo) / (math.sqrt(math.pi) * x**0.25)
    dai = -(x**0.25) / math.sqrt(math.pi) * (c * ve + s * vo)
    return ai, dai


def airy_pair(z: float) -> tuple[float, float]:
    """``(Ai(z), Ai'(z))``."""
    z = float(z)
    if abs(z) <= SERIES_LIMIT:
        return _series(z)
    return _asymptotic(z)


def airy(z: float) -> float:
    return airy_pair(z)[0]


def airy_prime(z: float) -> float:
    return airy_pair(z)[1]


def airy_log_derivative(z: float) -> float:
    """``Ai'(z) / Ai(z)``."""
    ai, dai = airy_pair(z)
    return dai / ai


def _zero_estimate(i: int) -> float:
    t = 3 * math.pi * (4 * i - 1) / 8
    return -(t ** (2 / 3)) * (1 + 5 / 48 * t**-2 - 5 / 36 * t**-4 + 77125 / 82944 * t**-6)


@lru_cache(maxsize=None)
def airy_zero(i: int, tol: float = 1e-13) -> float:
    """The ``i``-th zero ``a_i`` of Ai (``a_1 ~ -2.3381``), by bisection."""
    if i < 1:
        raise ValueError("zeros are numbered from 1")
    guess = _zero_estimate(i)
    half = 0.25
    for _ in range(8):
        lo, hi = guess - half, guess + half
        flo, fhi = airy(lo), airy(hi)
        if flo * fhi < 0:
            break
        half *= 1.5
    else:
        raise NotConverged(f"could not bracket Airy zero {i}")
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        fm = airy(mid)
        if fm == 0 or hi - lo < tol:
            return mid
        if flo * fm < 0:
            hi = mid
        else:
            lo, flo = mid, fm
    raise NotConverged(f"bisection for Airy zero {i} stalled at width {hi - lo}")
