"""The 2 x (m+2) matrix of a monomial curve, its kernel lattice and duality.

Every length-(m+2) vector in this package is indexed by the support
``(0, k_1, ..., k_m, d)`` in that order; the labels themselves are the second
row of the matrix.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property, reduce
from itertools import product
from math import gcd
from typing import Iterable, NamedTuple, Sequence

from .errors import GcdNotOne, MZero, NotStrictlyIncreasing

LatticeVector = tuple[int, ...]


class Exponent(NamedTuple):
    """An integral parameter alpha = (a1, a2) of the system."""

    a1: int
    a2: int

    def s(self, d: int) -> int:
        """s(alpha) = d*a1 - a2."""
        return d * self.a1 - self.a2

    def __add__(self, other):  # type: ignore[override]
        return Exponent(self.a1 + other[0], self.a2 + other[1])

    def __sub__(self, other):
        return Exponent(self.a1 - other[0], self.a2 - other[1])

    def to_json(self) -> list[int]:
        return [self.a1, self.a2]

    @classmethod
    def parse(cls, value) -> "Exponent":
        if isinstance(value, str):
            value = json.loads(value)
        a1, a2 = value
        return cls(int(a1), int(a2))


def as_exponent(alpha) -> Exponent:
    return alpha if isinstance(alpha, Exponent) else Exponent(*alpha)


@dataclass(frozen=True)
class CurveMatrix:
    ks: tuple[int, ...]
    d: int

    def __post_init__(self) -> None:
        ks = tuple(int(k) for k in self.ks)
        object.__setattr__(self, "ks", ks)
        object.__setattr__(self, "d", int(self.d))
        if not ks:
            raise MZero("at least one middle exponent k_1 is required")
        chain = (0,) + ks + (self.d,)
        if any(a >= b for a, b in zip(chain, chain[1:])):
            raise NotStrictlyIncreasing(f"need 0 < k_1 < ... < k_m < d, got {chain}")
        g = reduce(gcd, ks, self.d)
        if g != 1:
            raise GcdNotOne(f"gcd{ks + (self.d,)} = {g}")

    @property
    def m(self) -> int:
        return len(self.ks)

    @cached_property
    def support(self) -> tuple[int, ...]:
        return (0,) + self.ks + (self.d,)

    @property
    def b_support(self) -> tuple[int, ...]:
        """Columns of the submatrix B (all but x_d)."""
        return self.support[:-1]

    @property
    def c_support(self) -> tuple[int, ...]:
        """Columns of the submatrix C (all but x_0)."""
        return self.support[1:]

    @property
    def is_normal(self) -> bool:
        return self.d == self.m + 1

    @property
    def rows(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        return (tuple(1 for _ in self.support), self.support)

    def position(self, label: int) -> int:
        return self.support.index(label)

    def times(self, u: Sequence[int]) -> Exponent:
        """A . u for a vector in support order."""
        if len(u) != len(self.support):
            raise ValueError(f"vector of length {len(u)} for support {self.support}")
        return Exponent(sum(u), sum(j * c for j, c in zip(self.support, u)))

    def unit(self, label: int) -> tuple[int, ...]:
        u = [0] * len(self.support)
        u[self.position(label)] = 1
        return tuple(u)

    def omega(self, k: int) -> LatticeVector:
        """(d-k) e_0 - d e_k + k e_d, one of the standard kernel generators."""
        v = [0] * len(self.support)
        v[0] = self.d - k
        v[self.position(k)] = -self.d
        v[-1] = k
        return tuple(v)

    def to_json(self) -> dict:
        return {"k": list(self.ks), "d": self.d}

    @classmethod
    def from_json(cls, data) -> "CurveMatrix":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(tuple(data["k"]), data["d"])

    def __str__(self) -> str:
        return f"A(k={list(self.ks)}, d={self.d})"


def new_curve(ks: Iterable[int], d: int) -> CurveMatrix:
    return CurveMatrix(tuple(ks), d)


def reduce_by_gcd(ks: Iterable[int], d: int) -> CurveMatrix:
    """Divide all exponents by their common gcd before validating."""
    ks = tuple(ks)
    g = reduce(gcd, ks, d)
    return CurveMatrix(tuple(k // g for k in ks), d // g)


def _normalize_sign(v: LatticeVector) -> LatticeVector:
    for c in v:
        if c:
            return v if c > 0 else tuple(-x for x in v)
    return v


def kernel_vectors(curve: CurveMatrix, bound: int) -> list[LatticeVector]:
    """All nonzero v with A.v = 0 and max|v_i| <= bound, one per sign class.

    The middle coordinates are enumerated; v_d and v_0 are then forced by the
    two rows of A.
    """
    if bound < 1:
        raise ValueError("bound must be >= 1")
    d = curve.d
    found = set()
    for mid in product(range(-bound, bound + 1), repeat=curve.m):
        weight = sum(k * c for k, c in zip(curve.ks, mid))
        if weight % d:
            continue
        vd = -weight // d
        v0 = -sum(mid) - vd
        if abs(vd) > bound or abs(v0) > bound:
            continue
        v = (v0,) + mid + (vd,)
        if any(v):
            found.add(_normalize_sign(v))
    return sorted(found)


def dual_curve(curve: CurveMatrix) -> CurveMatrix:
    """The matrix with generators l_j = d - k_{m-j+1}."""
    return CurveMatrix(tuple(curve.d - k for k in reversed(curve.ks)), curve.d)


def dual_exponent(curve: CurveMatrix, alpha) -> Exponent:
    a = as_exponent(alpha)
    return Exponent(a.a1, curve.d * a.a1 - a.a2)


def dualize(curve: CurveMatrix):
    """Return the dual curve and the involutive exponent map on it."""
    return dual_curve(curve), lambda alpha: dual_exponent(curve, alpha)


def dual_vector(v: Sequence[int]) -> tuple[int, ...]:
    """Reindex a support-ordered vector under the substitution x_i -> y_{d-i}."""
    return tuple(reversed(tuple(v)))
