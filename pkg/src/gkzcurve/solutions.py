"""Rational solutions: the hypergeometric polynomial, the Laurent solutions
Psi_0 and Psi_d, power sums of roots, total residues and per-scenario bases."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Union

from .curve import CurveMatrix, Exponent, as_exponent, dual_curve, dual_vector
from .errors import ExponentInI, SZero
from .laurent import LaurentPoly
from .semigroup import (
    Tag,
    classify,
    compositions,
    f0_shift_range,
    fd_shift_range,
    in_I,
)


def _inv_factorial(u) -> Fraction:
    den = 1
    for x in u:
        den *= factorial(x)
    return Fraction(1, den)


@lru_cache(maxsize=8192)
def phi(curve: CurveMatrix, alpha) -> LaurentPoly:
    """Sum of x^u / u! over u in N^(m+2) with A.u = alpha (zero if none)."""
    a = as_exponent(alpha)
    terms = {u: _inv_factorial(u) for u in compositions(curve.support, a.a1, a.a2)}
    return LaurentPoly(curve.support, terms)


@lru_cache(maxsize=8192)
def psi_d(curve: CurveMatrix, alpha) -> LaurentPoly:
    """sum_{r>=1} (-1)^r (r-1)! Phi^B(alpha + r(1,d); x') / x_d^r."""
    a = as_exponent(alpha)
    terms: dict[tuple[int, ...], Fraction] = {}
    for r in fd_shift_range(curve, a):
        if r < 1:
            continue
        weight = (-1) ** r * factorial(r - 1)
        for v in compositions(curve.b_support, a.a1 + r, a.a2 + curve.d * r):
            terms[v + (-r,)] = weight * _inv_factorial(v)
    return LaurentPoly(curve.support, terms)


@lru_cache(maxsize=8192)
def psi_0(curve: CurveMatrix, alpha) -> LaurentPoly:
    """sum_{r>=1} (-1)^r (r-1)! Phi^C(alpha + r(1,0); x~) / x_0^r."""
    a = as_exponent(alpha)
    terms: dict[tuple[int, ...], Fraction] = {}
    for r in f0_shift_range(curve, a):
        if r < 1:
            continue
        weight = (-1) ** r * factorial(r - 1)
        for v in compositions(curve.c_support, a.a1 + r, a.a2):
            terms[(-r,) + v] = weight * _inv_factorial(v)
    return LaurentPoly(curve.support, terms)


def _require_not_in_I(curve: CurveMatrix, a: Exponent) -> None:
    if in_I(curve, a) is not None:
        raise ExponentInI(f"{tuple(a)} lies in I(A); Psi is only defined off I(A)")


def psi_total(curve: CurveMatrix, alpha) -> LaurentPoly:
    """Psi_0 + Psi_d for alpha outside I(A)."""
    a = as_exponent(alpha)
    _require_not_in_I(curve, a)
    return psi_0(curve, a) + psi_d(curve, a)


def psi_root_sum(curve: CurveMatrix, alpha) -> LaurentPoly:
    """The Laurent polynomial equal to psi_1(alpha) + ... + psi_d(alpha).

    This is Psi_d - Psi_0: the x_0-denominator part enters with a minus sign
    (already visible at alpha = (0, 1), where the sum is -sum 1/rho_j = x_{k_1}/x_0
    on a curve with k_1 = 1, while Psi_0 = -x_{k_1}/x_0).
    """
    a = as_exponent(alpha)
    _require_not_in_I(curve, a)
    return psi_d(curve, a) - psi_0(curve, a)


def power_sum(curve: CurveMatrix, s: int) -> LaurentPoly:
    """rho_1^s + ... + rho_d^s as a Laurent polynomial in the coefficients."""
    if s == 0:
        raise SZero("the power sum of order 0 is the constant d; s must be nonzero")
    if s > 0:
        return psi_d(curve, (0, -s)).scale(s)
    return psi_0(curve, (0, -s)).scale(-s)


def newton_power_sum(curve: CurveMatrix, s: int) -> LaurentPoly:
    """Power sum for s >= 1 from Newton's identities, e_j = (-1)^j x_{d-j} / x_d."""
    if s < 1:
        raise ValueError("Newton's identities are used here for s >= 1 only")
    sup, d = curve.support, curve.d
    zero = LaurentPoly.zero(sup)

    def elem(j: int) -> LaurentPoly:
        if j > d or (d - j) not in sup:
            return zero
        e = [0] * len(sup)
        e[sup.index(d - j)] += 1
        e[-1] -= 1
        return LaurentPoly(sup, {tuple(e): (-1) ** j})

    p: list[LaurentPoly] = [LaurentPoly.constant(sup, d)]
    for k in range(1, s + 1):
        acc = elem(k).scale((-1) ** (k - 1) * k)
        for i in range(1, k):
            acc = acc + elem(i).scale((-1) ** (i - 1)) * p[k - i]
        p.append(acc)
    return p[s]


def total_residue_symbolic(curve: CurveMatrix, b: int) -> LaurentPoly:
    """Sum of the local residues of t^b / f dt/t over the roots (a = 1, b >= 1)."""
    if b < 1:
        raise ValueError("b must be >= 1")
    if b < curve.d:
        return LaurentPoly.zero(curve.support)
    return -psi_d(curve, (-1, -b))


def phi_slices(curve: CurveMatrix, a1: int) -> list[LaurentPoly]:
    """[Phi((a1, i)) for i = 0 .. d*a1]."""
    return [phi(curve, (a1, i)) for i in range(curve.d * a1 + 1)]


def dual_substitute(curve: CurveMatrix, p: LaurentPoly) -> LaurentPoly:
    """Rewrite p under x_i -> y_{d-i}, landing on the dual curve's support."""
    if p.support != curve.support:
        raise ValueError("polynomial does not live on this curve")
    dual = dual_curve(curve)
    return LaurentPoly(dual.support, {dual_vector(e): c for e, c in p})


# -- basis descriptors ------------------------------------------------------


@dataclass(frozen=True)
class PsiRho:
    alpha: Exponent
    j: int


@dataclass(frozen=True)
class TauRho:
    alpha: Exponent
    j: int
    jhat: int


@dataclass(frozen=True)
class Chi:
    alpha: Exponent


Analytic = Union[PsiRho, TauRho, Chi]


@dataclass(frozen=True)
class BasisDescriptor:
    """A local basis: exact rational members plus root-built members.

    Root indices are 0-based positions in the deterministic root ordering
    (argument, then modulus); the distinguished root for tau is position 0.
    """

    curve: CurveMatrix
    alpha: Exponent
    scenario: Tag
    symbolic: tuple[LaurentPoly, ...]
    analytic: tuple[Analytic, ...]

    @property
    def count(self) -> int:
        return len(self.symbolic) + len(self.analytic)

    def to_json(self) -> dict:
        def tag(t: Analytic) -> dict:
            if isinstance(t, PsiRho):
                return {"kind": "psi", "alpha": list(t.alpha), "j": t.j}
            if isinstance(t, TauRho):
                return {"kind": "tau", "alpha": list(t.alpha), "j": t.j, "jhat": t.jhat}
            return {"kind": "chi", "alpha": list(t.alpha)}

        return {
            "curve": self.curve.to_json(),
            "alpha": list(self.alpha),
            "scenario": self.scenario.value,
            "count": self.count,
            "symbolic": [p.to_json() for p in self.symbolic],
            "analytic": [tag(t) for t in self.analytic],
        }


DISTINGUISHED_ROOT = 0


def basis_descriptor(curve: CurveMatrix, alpha) -> BasisDescriptor:
    a = as_exponent(alpha)
    tag = classify(curve, a).tag
    d = curve.d
    if tag is Tag.InI:
        jhat = DISTINGUISHED_ROOT
        symbolic = (phi(curve, a),)
        analytic = tuple(TauRho(a, j, jhat) for j in range(d) if j != jhat)
    elif tag is Tag.EBoth:
        symbolic = (psi_0(curve, a),)
        analytic = tuple(PsiRho(a, j) for j in range(d))
    elif tag is Tag.J:
        symbolic = ()
        analytic = tuple(PsiRho(a, j) for j in range(d - 1)) + (Chi(a),)
    else:
        symbolic = ()
        analytic = tuple(PsiRho(a, j) for j in range(d))
    return BasisDescriptor(curve, a, tag, symbolic, analytic)
