"""Sparse Laurent polynomials with exact rational coefficients.

Variables are labelled by the curve support ``(0, k_1, ..., k_m, d)``; an
exponent vector is a tuple of ints in that order.  A monomial ``x^e`` has
bidegree ``(sum(e), sum(j * e_j))``.
"""

from __future__ import annotations

import json
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Iterable, Mapping, Optional, Sequence

from .curve import Exponent, as_exponent
from .errors import NotInKernel, SupportMismatch

Exps = tuple[int, ...]


@lru_cache(maxsize=1 << 16)
def falling(e: int, k: int) -> int:
    """e (e-1) ... (e-k+1), the coefficient of d^k/dx^k x^e."""
    out = 1
    for i in range(k):
        out *= e - i
    return out


def format_rational(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


class LaurentPoly:
    __slots__ = ("support", "_terms", "_hash")

    def __init__(self, support: Sequence[int], terms: Optional[Mapping[Exps, object]] = None):
        self.support = tuple(support)
        n = len(self.support)
        clean: dict[Exps, Fraction] = {}
        for e, c in (terms or {}).items():
            e = tuple(int(x) for x in e)
            if len(e) != n:
                raise SupportMismatch(f"exponent {e} does not fit support {self.support}")
            c = Fraction(c)
            if c:
                clean[e] = clean.get(e, Fraction(0)) + c
        self._terms = {e: clean[e] for e in sorted(clean) if clean[e]}
        self._hash = None

    @classmethod
    def _raw(cls, support: tuple[int, ...], terms: dict[Exps, Fraction]) -> "LaurentPoly":
        # trusted constructor: terms already nonzero Fractions
        p = object.__new__(cls)
        p.support = support
        p._terms = {e: terms[e] for e in sorted(terms)}
        p._hash = None
        return p

    @classmethod
    def zero(cls, support: Sequence[int]) -> "LaurentPoly":
        return cls(support)

    @classmethod
    def constant(cls, support: Sequence[int], c) -> "LaurentPoly":
        return cls(support, {(0,) * len(support): c})

    @classmethod
    def monomial(cls, support: Sequence[int], e: Sequence[int], c=1) -> "LaurentPoly":
        return cls(support, {tuple(e): c})

    @classmethod
    def variable(cls, support: Sequence[int], label: int, power: int = 1) -> "LaurentPoly":
        support = tuple(support)
        e = [0] * len(support)
        e[support.index(label)] = power
        return cls(support, {tuple(e): 1})

    @property
    def terms(self) -> tuple[tuple[Exps, Fraction], ...]:
        return tuple(self._terms.items())

    def coefficient(self, e: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(e), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self):
        return iter(self._terms.items())

    def _check(self, other: "LaurentPoly") -> None:
        if self.support != other.support:
            raise SupportMismatch(f"{self.support} vs {other.support}")

    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            self._check(other)
            return other
        if isinstance(other, (int, Rational)):
            return LaurentPoly.constant(self.support, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return LaurentPoly._raw(self.support, out)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._raw(self.support, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "LaurentPoly":
        c = Fraction(c)
        if not c:
            return LaurentPoly.zero(self.support)
        return LaurentPoly._raw(self.support, {e: v * c for e, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Rational)):
            return self.scale(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        self._check(other)
        out: dict[Exps, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentPoly._raw(self.support, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if isinstance(other, LaurentPoly):
            return self.support == other.support and self._terms == other._terms
        if isinstance(other, (int, Rational)):
            return self == LaurentPoly.constant(self.support, other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.support, tuple(self._terms.items())))
        return self._hash

    def D(self, u: Sequence[int]) -> "LaurentPoly":
        """The mixed partial derivative d^|u| / dx^u, u in support order."""
        u = tuple(u)
        if len(u) != len(self.support):
            raise SupportMismatch(f"derivative order {u} does not fit support {self.support}")
        if any(k < 0 for k in u):
            raise ValueError("derivative orders must be nonnegative")
        out: dict[Exps, Fraction] = {}
        for e, c in self._terms.items():
            f = 1
            for ei, ki in zip(e, u):
                if ki:
                    f *= falling(ei, ki)
                    if not f:
                        break
            if f:
                out[tuple(a - b for a, b in zip(e, u))] = c * f
        return LaurentPoly._raw(self.support, out)

    def derivative(self, label: int, order: int = 1) -> "LaurentPoly":
        u = [0] * len(self.support)
        u[self.support.index(label)] = order
        return self.D(u)

    def monomial_bidegree(self, e: Sequence[int]) -> Exponent:
        return Exponent(sum(e), sum(j * x for j, x in zip(self.support, e)))

    def bidegree(self) -> Optional[Exponent]:
        """Common bidegree of all monomials, or None (always None for zero)."""
        degs = {self.monomial_bidegree(e) for e in self._terms}
        return degs.pop() if len(degs) == 1 else None

    def relabel(self, support: Sequence[int], order: Sequence[int]) -> "LaurentPoly":
        """Move the variable at position order[i] to position i of ``support``."""
        return LaurentPoly(support, {tuple(e[j] for j in order): c for e, c in self._terms.items()})

    def max_abs_exponent(self) -> int:
        return max((abs(x) for e in self._terms for x in e), default=0)

    # -- serialization -------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "support": list(self.support),
            "terms": [{"e": list(e), "c": format_rational(c)} for e, c in self._terms.items()],
        }

    @classmethod
    def from_json(cls, data) -> "LaurentPoly":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(data["support"], {tuple(t["e"]): Fraction(t["c"]) for t in data["terms"]})

    def render(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for e, c in self._terms.items():
            factors = []
            for label, x in zip(self.support, e):
                if x == 1:
                    factors.append(f"x{label}")
                elif x:
                    factors.append(f"x{label}^{x}")
            if not factors:
                parts.append(format_rational(c))
            elif c == 1:
                parts.append(" * ".join(factors))
            elif c == -1:
                parts.append("-" + " * ".join(factors))
            else:
                parts.append(" * ".join([format_rational(c)] + factors))
        return " + ".join(parts).replace("+ -", "- ")

    __str__ = render

    def __repr__(self) -> str:
        return f"LaurentPoly({self.render()!r}, support={self.support})"


def add(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    return p + q


def mul(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    return p * q


def scale(p: LaurentPoly, c) -> LaurentPoly:
    return p.scale(c)


def derivative(p: LaurentPoly, label: int) -> LaurentPoly:
    return p.derivative(label)


def D_u(p: LaurentPoly, u: Sequence[int]) -> LaurentPoly:
    return p.D(u)


def bidegree(p: LaurentPoly) -> Optional[Exponent]:
    return p.bidegree()


def _check_kernel(support: tuple[int, ...], v: Sequence[int]) -> None:
    if len(v) != len(support):
        raise SupportMismatch(f"vector {tuple(v)} does not fit support {support}")
    if sum(v) or sum(j * c for j, c in zip(support, v)):
        raise NotInKernel(f"{tuple(v)} is not in the kernel of A for support {support}")


def apply_box(p: LaurentPoly, v: Sequence[int]) -> LaurentPoly:
    """prod_{v_j>0} d_j^{v_j} p - prod_{v_k<0} d_k^{-v_k} p."""
    _check_kernel(p.support, v)
    plus = tuple(max(c, 0) for c in v)
    minus = tuple(max(-c, 0) for c in v)
    return p.D(plus) - p.D(minus)


def box_annihilates(p: LaurentPoly, vectors: Iterable[Sequence[int]]) -> bool:
    """True when every box operator in ``vectors`` kills p (no kernel check)."""
    for v in vectors:
        plus = tuple(max(c, 0) for c in v)
        minus = tuple(max(-c, 0) for c in v)
        if p.D(plus) != p.D(minus):
            return False
    return True


def apply_euler(p: LaurentPoly, alpha) -> tuple[LaurentPoly, LaurentPoly]:
    """Residuals of the two homogeneity equations for exponent alpha."""
    a = as_exponent(alpha)
    r1: dict[Exps, Fraction] = {}
    r2: dict[Exps, Fraction] = {}
    for e, c in p:
        deg = p.monomial_bidegree(e)
        if deg.a1 != a.a1:
            r1[e] = c * (deg.a1 - a.a1)
        if deg.a2 != a.a2:
            r2[e] = c * (deg.a2 - a.a2)
    return LaurentPoly._raw(p.support, r1), LaurentPoly._raw(p.support, r2)
