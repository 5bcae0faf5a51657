"""Semigroup membership, scenario classification, E(A), Cohen-Macaulayness, rank.

Membership in ``gens . N^n`` with all first-row entries equal to one reduces
to: can ``a1`` generators (with repetition) sum to ``a2``.  The achievable
sums for a fixed count are cached per generator tuple.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional

from .curve import CurveMatrix, Exponent, as_exponent, dual_curve, dual_exponent
from .errors import BoundExceeded


@lru_cache(maxsize=None)
def level(gens: tuple[int, ...], n: int) -> frozenset[int]:
    """All sums of exactly ``n`` elements of ``gens`` (with repetition)."""
    if n < 0:
        return frozenset()
    if n == 0:
        return frozenset({0})
    return frozenset(s + g for s in level(gens, n - 1) for g in gens)


def in_semigroup(gens: tuple[int, ...], n: int, a: int) -> bool:
    if n < 0 or not gens:
        return n == 0 and a == 0
    if not (min(gens) * n <= a <= max(gens) * n):
        return False
    return a in level(gens, n)


def witness(gens: tuple[int, ...], n: int, a: int) -> Optional[tuple[int, ...]]:
    """Some u in N^len(gens) with sum(u) = n and sum(g*u) = a, or None."""
    if not in_semigroup(gens, n, a):
        return None
    u = [0] * len(gens)
    while n > 0:
        for i, g in enumerate(gens):
            if in_semigroup(gens, n - 1, a - g):
                u[i] += 1
                n, a = n - 1, a - g
                break
    return tuple(u)


@lru_cache(maxsize=4096)
def compositions(gens: tuple[int, ...], n: int, a: int) -> tuple[tuple[int, ...], ...]:
    """Every u in N^len(gens) with sum(u) = n and sum(g*u) = a, lexicographic."""
    if not in_semigroup(gens, n, a):
        return ()
    out: list[tuple[int, ...]] = []

    def rec(i: int, n: int, a: int, prefix: list[int]) -> None:
        rest = gens[i + 1:]
        if not rest:
            if gens[i] * n == a:
                out.append(tuple(prefix + [n]))
            return
        for c in range(n + 1):
            if in_semigroup(rest, n - c, a - c * gens[i]):
                prefix.append(c)
                rec(i + 1, n - c, a - c * gens[i], prefix)
                prefix.pop()

    rec(0, n, a, [])
    return tuple(out)


class Tag(str, enum.Enum):
    InI = "InI"
    E0Only = "E0Only"
    EdOnly = "EdOnly"
    EBoth = "EBoth"
    J = "J"

    def dual(self) -> "Tag":
        return {Tag.E0Only: Tag.EdOnly, Tag.EdOnly: Tag.E0Only}.get(self, self)


@dataclass(frozen=True)
class Classification:
    alpha: Exponent
    tag: Tag
    u: Optional[tuple[int, ...]] = None
    f0: Optional[tuple[tuple[int, ...], int]] = field(default=None)
    fd: Optional[tuple[tuple[int, ...], int]] = field(default=None)


def in_I(curve: CurveMatrix, alpha) -> Optional[tuple[int, ...]]:
    a = as_exponent(alpha)
    return witness(curve.support, a.a1, a.a2)


def _ceil_div(p: int, q: int) -> int:
    return -((-p) // q)


def fd_shift_range(curve: CurveMatrix, alpha) -> range:
    """Values of r >= 0 for which alpha + r(1, d) can lie in B . N^(m+1)."""
    a = as_exponent(alpha)
    d, km = curve.d, curve.ks[-1]
    lo = max(0, -a.a1, _ceil_div(-a.a2, d))
    hi = (km * a.a1 - a.a2) // (d - km)
    return range(lo, hi + 1)


def f0_shift_range(curve: CurveMatrix, alpha) -> range:
    """Values of r >= 0 for which alpha + r(1, 0) can lie in C . N^(m+1)."""
    a = as_exponent(alpha)
    d, k1 = curve.d, curve.ks[0]
    if a.a2 < 0:
        return range(0)
    lo = max(0, -a.a1, _ceil_div(a.a2, d) - a.a1)
    hi = a.a2 // k1 - a.a1
    return range(lo, hi + 1)


def in_Fd(curve: CurveMatrix, alpha):
    """Some (v, r) with B.v = alpha + r(1, d), or None."""
    a = as_exponent(alpha)
    for r in fd_shift_range(curve, a):
        v = witness(curve.b_support, a.a1 + r, a.a2 + curve.d * r)
        if v is not None:
            return v, r
    return None


def in_F0(curve: CurveMatrix, alpha):
    """Some (v, r) with C.v = alpha + r(1, 0), or None."""
    a = as_exponent(alpha)
    for r in f0_shift_range(curve, a):
        v = witness(curve.c_support, a.a1 + r, a.a2)
        if v is not None:
            return v, r
    return None


@lru_cache(maxsize=65536)
def classify(curve: CurveMatrix, alpha) -> Classification:
    a = as_exponent(alpha)
    u = in_I(curve, a)
    if u is not None:
        return Classification(a, Tag.InI, u=u)
    f0 = in_F0(curve, a)
    fd = in_Fd(curve, a)
    if f0 and fd:
        tag = Tag.EBoth
    elif f0:
        tag = Tag.E0Only
    elif fd:
        tag = Tag.EdOnly
    else:
        tag = Tag.J
    return Classification(a, tag, f0=f0, fd=fd)


@lru_cache(maxsize=None)
def e_set(curve: CurveMatrix) -> tuple[Exponent, ...]:
    """The finite set E(A) = E_0(A) & E_d(A), sorted.

    Candidates live in the open window k_1 n < a2 < k_m n at level a1 = n.  Once
    a whole window lies in I(A), every later window does too (it is covered by
    adding k_1 or k_m to the previous one), so the scan stops there.
    """
    k1, km = curve.ks[0], curve.ks[-1]
    found: list[Exponent] = []
    for n in range(1, curve.d ** 2 + 1):
        window = range(k1 * n + 1, km * n)
        full = True
        for a2 in window:
            if in_semigroup(curve.support, n, a2):
                continue
            full = False
            if classify(curve, Exponent(n, a2)).tag is Tag.EBoth:
                found.append(Exponent(n, a2))
        if full:
            return tuple(sorted(found))
    raise BoundExceeded(f"E(A) scan for {curve} not certified complete by a1 = {curve.d ** 2}")


def is_cohen_macaulay(curve: CurveMatrix) -> bool:
    return not e_set(curve)


def holonomic_rank(curve: CurveMatrix, alpha) -> int:
    return curve.d + 1 if classify(curve, as_exponent(alpha)).tag is Tag.EBoth else curve.d


_RATIONAL_DIM = {Tag.InI: 1, Tag.E0Only: 1, Tag.EdOnly: 1, Tag.EBoth: 2, Tag.J: 0}


def rational_dim(curve: CurveMatrix, alpha) -> int:
    return _RATIONAL_DIM[classify(curve, as_exponent(alpha)).tag]


def in_euler_jacobi_cone(curve: CurveMatrix, alpha) -> bool:
    a = as_exponent(alpha)
    return curve.d * a.a1 < a.a2 < 0


def classify_dual(curve: CurveMatrix, alpha) -> Classification:
    """Classification of the dual exponent on the dual curve."""
    return classify(dual_curve(curve), dual_exponent(curve, alpha))


def classification_json(curve: CurveMatrix, alpha) -> dict:
    c = classify(curve, as_exponent(alpha))
    return {
        "alpha": list(c.alpha),
        "tag": c.tag.value,
        "rank": holonomic_rank(curve, c.alpha),
        "rational_dim": rational_dim(curve, c.alpha),
        "witness": list(c.u) if c.u is not None else None,
    }

