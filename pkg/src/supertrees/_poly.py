"""Dense polynomial helpers on ascending coefficient lists.

Coefficients may be ``int``, ``Fraction`` or ``float``; nothing here forces a
type, so integer input stays exact.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


def trim(c: Sequence) -> list:
    out = list(c)
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out or [0]


def add(a: Sequence, b: Sequence) -> list:
    n = max(len(a), len(b))
    return trim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])


def sub(a: Sequence, b: Sequence) -> list:
    return add(a, [-x for x in b])


def scale(a: Sequence, k) -> list:
    return trim([k * x for x in a])


def mul(a: Sequence, b: Sequence, limit: int | None = None) -> list:
    """Product, optionally truncated to powers ``< limit``."""
    n = len(a) + len(b) - 1
    if limit is not None:
        n = min(n, limit)
    out = [0] * max(n, 1)
    for i, x in enumerate(a):
        if x == 0 or i >= n:
            continue
        for j, y in enumerate(b):
            if i + j >= n:
                break
            out[i + j] += x * y
    return trim(out)


def shift(a: Sequence, k: int) -> list:
    """Multiply by ``x**k`` (k >= 0)."""
    return trim([0] * k + list(a))


def horner(c: Sequence, x):
    acc = 0
    for coef in reversed(c):
        acc = acc * x + coef
    return acc


def derivative(c: Sequence) -> list:
    return trim([i * c[i] for i in range(1, len(c))]) if len(c) > 1 else [0]


def reciprocal(c: Sequence, degree: int) -> list:
    """Coefficients of ``x**degree * p(1/x)``."""
    padded = list(c) + [0] * (degree + 1 - len(c))
    return trim(list(reversed(padded[: degree + 1])))


def substitute_square(c: Sequence) -> list:
    """Coefficients of ``p(x**2)``."""
    out = [0] * (2 * len(c) - 1)
    for i, x in enumerate(c):
        out[2 * i] = x
    return trim(out)


def series_divide(num: Sequence, den: Sequence, n: int) -> list:
    """First ``n`` Maclaurin coefficients of ``num/den``; needs ``den[0] != 0``.

    Quotients stay integral when ``den[0]`` is a unit, otherwise they become
    ``Fraction``.
    """
    if den[0] == 0:
        raise ZeroDivisionError("constant term of the denominator vanishes")
    d0 = den[0]
    exact = isinstance(d0, int) and abs(d0) == 1
    out = []
    for k in range(n):
        acc = num[k] if k < len(num) else 0
        for j in range(1, min(k, len(den) - 1) + 1):
            acc -= den[j] * out[k - j]
        if exact:
            out.append(acc * d0)
        elif isinstance(acc, float) or isinstance(d0, float):
            out.append(acc / d0)
        else:
            q = Fraction(acc) / Fraction(d0)
            out.append(q.numerator if q.denominator == 1 else q)
    return out


def series_inverse_one_minus(c: Sequence, n: int) -> list:
    """Maclaurin coefficients of ``1 / (1 - c(x))`` where ``c(0) == 0``."""
    return series_divide([1], sub([1], c), n)
