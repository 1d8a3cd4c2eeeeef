"""Branching profiles of super trees and their tridiagonal transfer matrices.

A super tree of ``K`` levels is described by the passage weights
``w_1 .. w_{K-1}``: the number of ways to step from level ``k-1`` to level
``k``.  Stepping back towards the root always has weight one, so the transfer
matrix has unit superdiagonal and subdiagonal ``w``.

Weights stay exact (``int`` or ``Fraction``) whenever the inputs are exact;
floats switch everything downstream to approximate arithmetic.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational
from typing import Sequence

from .errors import InvalidDimension, NegativeProduct, NonPositiveWeight


class Kind(str, enum.Enum):
    GROWING = "growing"
    DESCENDING = "descending"
    DYCK_Q = "dyck_q"
    CUSTOM = "custom"


def as_number(x):
    """Normalize user input: ints and ``"p/q"`` strings become exact."""
    if isinstance(x, bool):
        raise TypeError("boolean is not a weight")
    if isinstance(x, str):
        text = x.strip()
        if any(ch in text.lower() for ch in ".e") and "/" not in text:
            return float(text)
        x = Fraction(text)
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, Rational):
        return int(x)
    if isinstance(x, float) and x.is_integer() and abs(x) < 2**53:
        return int(x)
    return x


def as_exact(x) -> Fraction:
    """Exact rational for a user value; floats go through their repr."""
    if isinstance(x, float):
        return Fraction(repr(x))
    return Fraction(x)


def _encode(x) -> str:
    return repr(x) if isinstance(x, float) else str(x)


@dataclass(frozen=True)
class BranchingProfile:
    kind: Kind
    K: int
    weights: tuple
    p0: object = None
    a: object = None
    q: object = None

    @property
    def branchings(self) -> tuple:
        """Vertex degrees ``p_0 .. p_{K-1}`` (growing and descending only)."""
        if self.kind is Kind.GROWING:
            return tuple([self.p0] + [2 + self.a * k for k in range(1, self.K)])
        if self.kind is Kind.DESCENDING:
            return tuple([self.p0] + [self.p0 + self.a * k for k in range(1, self.K)])
        raise AttributeError(f"{self.kind.value} profiles carry no branching sequence")

    @property
    def exact(self) -> bool:
        return all(not isinstance(w, float) for w in self.weights)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "p0": None if self.p0 is None else _encode(self.p0),
            "a": None if self.a is None else _encode(self.a),
            "K": self.K,
            "q": None if self.q is None else _encode(self.q),
            "weights": [_encode(w) for w in self.weights],
        }

    @classmethod
    def from_dict(cls, record: dict) -> "BranchingProfile":
        kind = Kind(record["kind"])
        opt = lambda key: None if record.get(key) is None else as_number(record[key])
        if kind is Kind.CUSTOM:
            return build_profile(kind, K=record["K"], custom=[as_number(w) for w in record["weights"]])
        prof = build_profile(kind, K=record["K"], p0=opt("p0"), a=opt("a"), q=opt("q"))
        if "weights" in record and [as_number(w) for w in record["weights"]] != list(prof.weights):
            raise ValueError("stored weights disagree with the profile parameters")
        return prof


@dataclass(frozen=True)
class TransferMatrix:
    diag: tuple
    sub: tuple
    sup: tuple

    @property
    def K(self) -> int:
        return len(self.diag)

    @property
    def products(self) -> tuple:
        """``sub_k * sup_k``; the only off-diagonal data the spectrum sees."""
        return tuple(s * t for s, t in zip(self.sub, self.sup))

    def dense(self):
        import numpy as np

        K = self.K
        m = np.zeros((K, K), dtype=float)
        m[range(K), range(K)] = [float(x) for x in self.diag]
        for k in range(K - 1):
            m[k + 1, k] = float(self.sub[k])
            m[k, k + 1] = float(self.sup[k])
        return m


@dataclass(frozen=True)
class SymmetricTridiagonal:
    diag: tuple
    offdiag: tuple
    # squared couplings kept separately so exact inputs keep exact spectra data
    offdiag_sq: tuple = field(default=None)

    def __post_init__(self):
        if self.offdiag_sq is None:
            object.__setattr__(self, "offdiag_sq", tuple(b * b for b in self.offdiag))

    @property
    def K(self) -> int:
        return len(self.diag)

    def dense(self):
        import numpy as np

        K = self.K
        m = np.zeros((K, K), dtype=float)
        m[range(K), range(K)] = [float(x) for x in self.diag]
        for k in range(K - 1):
            m[k + 1, k] = m[k, k + 1] = float(self.offdiag[k])
        return m


def build_profile(
    kind,
    K: int,
    p0=None,
    a=None,
    q=None,
    custom: Sequence | None = None,
) -> BranchingProfile:
    """Materialize the passage weights of a super tree.

    * growing: ``p_k = 2 + a*k`` for ``k >= 1`` and ``p_0`` at the root, so
      ``w_1 = p_0`` and ``w_k = p_{k-1} - 1``.
    * descending: ``p_k = p_0 + a*k`` with ``w_k = p_k``; defaults
      ``p_0 = K, a = -1`` give ``(K-1, ..., 1)``.
    * dyck_q: ``w_k = q**(k-1)``.
    * custom: the supplied sequence.
    """
    kind = Kind(kind)
    if not isinstance(K, int) or K < 1:
        raise InvalidDimension(f"K must be a positive integer, got {K!r}")

    if kind is Kind.GROWING:
        p0 = as_number(1 if p0 is None else p0)
        a = as_number(1 if a is None else a)
        weights = ([p0] + [1 + a * (k - 1) for k in range(2, K)])[: K - 1]
    elif kind is Kind.DESCENDING:
        p0 = as_number(K if p0 is None else p0)
        a = as_number(-1 if a is None else a)
        weights = [p0 + a * k for k in range(1, K)]
    elif kind is Kind.DYCK_Q:
        if q is None:
            raise ValueError("dyck_q profile needs q")
        q = as_number(q)
        if not 0 < q <= 1:
            raise ValueError(f"q must lie in (0, 1], got {q}")
        weights = [q ** (k - 1) for k in range(1, K)]
    else:
        if custom is None:
            raise ValueError("custom profile needs weights")
        weights = [as_number(w) for w in custom]
        if len(weights) != K - 1:
            raise InvalidDimension(f"custom profile with K={K} needs {K - 1} weights, got {len(weights)}")

    weights = [as_number(w) if not isinstance(w, float) else w for w in weights]
    for k, w in enumerate(weights, start=1):
        if not w > 0:
            raise NonPositiveWeight(f"passage weight w_{k} = {w} is not positive")
    return BranchingProfile(kind=kind, K=K, weights=tuple(weights), p0=p0, a=a, q=q)


def transfer_matrix(profile: BranchingProfile) -> TransferMatrix:
    K = profile.K
    return TransferMatrix(diag=(0,) * K, sub=tuple(profile.weights), sup=(1,) * (K - 1))


def symmetrize(T: TransferMatrix) -> SymmetricTridiagonal:
    """Symmetric tridiagonal form related to ``T`` by a positive diagonal similarity."""
    offdiag = []
    products = T.products
    for k, (s, t, prod) in enumerate(zip(T.sub, T.sup, products), start=1):
        if not prod > 0:
            raise NegativeProduct(f"sub*sup = {prod} at position {k}; no real symmetrization")
        offdiag.append(s if s == t else math.sqrt(prod))
    return SymmetricTridiagonal(diag=tuple(T.diag), offdiag=tuple(offdiag), offdiag_sq=products)
