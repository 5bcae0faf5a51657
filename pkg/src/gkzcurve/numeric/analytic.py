"""Numerical values of the root-built solutions psi, tau and chi, and of their
first partial derivatives.

Negative first exponent (a1 < 0) is handled through local residues:

    psi_j((-a, -b)) = (-1)^a (a-1)! Res_{rho_j} t^(b-1) / f^a dt

which follows from differentiating psi_j((0, -b)) = rho_j^b / b a times in x_0.
"""

from __future__ import annotations

import cmath
import warnings
from functools import lru_cache
from math import factorial
from typing import Sequence, Union

import numpy as np

from ..curve import CurveMatrix, Exponent, as_exponent
from ..errors import DivisionByZeroCoordinate, NotHypergeometricWarning, SameRoot
from ..laurent import LaurentPoly
from ..semigroup import Tag, classify
from ..solutions import phi
from .quadrature import local_log_residue, local_residue
from .roots import DEFAULT_TOL, Point, RootSet, Tolerances, f_prime


@lru_cache(maxsize=1 << 14)
def _eval_cached(p: LaurentPoly, coords: tuple[complex, ...]) -> complex:
    total = 0j
    for e, c in p:
        term = complex(c.numerator) / c.denominator
        for x, k in zip(coords, e):
            if k < 0 and x == 0:
                raise DivisionByZeroCoordinate(f"negative exponent on a zero coordinate in {p.render()}")
            if k:
                term *= x ** k
        total += term
    return total


def eval_laurent(p: LaurentPoly, x: Union[Point, Sequence[complex]]) -> complex:
    coords = x.coords if isinstance(x, Point) else tuple(complex(c) for c in x)
    if len(coords) != len(p.support):
        raise ValueError(f"{len(coords)} coordinates for support {p.support}")
    return _eval_cached(p, coords)


def power_sum_numeric(roots: RootSet, s: int) -> complex:
    return complex(sum(r ** s for r in roots.roots))


def residue_total_numeric(roots: RootSet, a: int, b: int, tol: Tolerances = DEFAULT_TOL) -> complex:
    """Sum over the roots of Res t^b / f^a dt/t."""
    if a < 1:
        raise ValueError("a must be >= 1")
    return sum((local_residue(roots, j, b - 1, a, tol) for j in range(roots.d)), 0j)


def _shift(curve: CurveMatrix, alpha: Exponent, label: int) -> Exponent:
    return Exponent(alpha.a1 - 1, alpha.a2 - label)


def _negative_psi(roots: RootSet, alpha: Exponent, j: int, tol: Tolerances) -> complex:
    a, b = -alpha.a1, -alpha.a2
    return (-1) ** a * factorial(a - 1) * local_residue(roots, j, b - 1, a, tol)


def _psi_sum_part(curve: CurveMatrix, alpha: Exponent, roots: RootSet, j: int) -> complex:
    """The algebraic part of psi for a1 >= 0 (everything except the log term)."""
    rho, x = roots.roots[j], roots.point
    total = 0j
    for i in range(curve.d * alpha.a1 + 1):
        if i == alpha.a2:
            continue
        p = phi(curve, (alpha.a1, i))
        if p:
            total += eval_laurent(p, x) * rho ** (i - alpha.a2) / (i - alpha.a2)
    return total


def eval_psi_rho(curve: CurveMatrix, alpha, roots: RootSet, j: int, tol: Tolerances = DEFAULT_TOL) -> complex:
    a = as_exponent(alpha)
    if a.a1 < 0:
        return _negative_psi(roots, a, j, tol)
    value = _psi_sum_part(curve, a, roots, j)
    p = phi(curve, a)
    if p:
        value += eval_laurent(p, roots.point) * roots.logs[j]
    return value


def psi_gradient(curve: CurveMatrix, alpha, roots: RootSet, j: int, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    a = as_exponent(alpha)
    return np.array([eval_psi_rho(curve, _shift(curve, a, l), roots, j, tol) for l in curve.support])


def _tau(curve: CurveMatrix, a: Exponent, roots: RootSet, j: int, jhat: int, tol: Tolerances) -> complex:
    if a.a1 < 0:
        return _negative_psi(roots, a, j, tol) - _negative_psi(roots, a, jhat, tol)
    value = _psi_sum_part(curve, a, roots, j) - _psi_sum_part(curve, a, roots, jhat)
    p = phi(curve, a)
    if p:
        value += eval_laurent(p, roots.point) * cmath.log(roots.roots[j] / roots.roots[jhat])
    return value


def eval_tau(
    curve: CurveMatrix, alpha, roots: RootSet, j: int, jhat: int, tol: Tolerances = DEFAULT_TOL
) -> complex:
    """tau_j(alpha) built against the distinguished root jhat, alpha in I(A)."""
    if j == jhat:
        raise SameRoot("tau needs two distinct roots")
    a = as_exponent(alpha)
    if classify(curve, a).tag is not Tag.InI:
        raise ValueError(f"{tuple(a)} is not in I(A)")
    return _tau(curve, a, roots, j, jhat, tol)


def tau_gradient(
    curve: CurveMatrix, alpha, roots: RootSet, j: int, jhat: int, tol: Tolerances = DEFAULT_TOL
) -> np.ndarray:
    a = as_exponent(alpha)
    return np.array([_tau(curve, _shift(curve, a, l), roots, j, jhat, tol) for l in curve.support])


def _chi_base(curve: CurveMatrix, alpha: Exponent) -> tuple[int, int, int]:
    """(s, beta1, beta2) writing chi(alpha) as a derivative of sum_j rho_j^s log(rho_j) / s."""
    if alpha.a2 != 0:
        return -alpha.a2, -alpha.a1, 0
    k1 = curve.ks[0]
    return -k1, -alpha.a1, k1


def _chi_contour(roots: RootSet, s: int, beta1: int, beta2: int, tol: Tolerances) -> complex:
    n = s - 1 + beta2
    total = 0j
    for j in range(roots.d):
        total += local_log_residue(roots, j, n, beta1, tol) + local_residue(roots, j, n, beta1, tol) / s
    return (-1) ** beta1 * factorial(beta1 - 1) * total


def _warn_outside_J(curve: CurveMatrix, a: Exponent) -> None:
    if classify(curve, a).tag is not Tag.J:
        warnings.warn(
            f"chi at {tuple(a)} is evaluated but is only hypergeometric for exponents in J(A)",
            NotHypergeometricWarning,
            stacklevel=3,
        )


def eval_chi(curve: CurveMatrix, alpha, roots: RootSet, tol: Tolerances = DEFAULT_TOL, warn: bool = True) -> complex:
    a = as_exponent(alpha)
    if warn:
        _warn_outside_J(curve, a)
    if a.a1 < 0:
        return _chi_contour(roots, *_chi_base(curve, a), tol)
    return sum((eval_psi_rho(curve, a, roots, j, tol) * roots.logs[j] for j in range(roots.d)), 0j)


def chi_gradient(curve: CurveMatrix, alpha, roots: RootSet, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    a = as_exponent(alpha)
    if a.a1 < 0:
        s, b1, b2 = _chi_base(curve, a)
        return np.array([_chi_contour(roots, s, b1 + 1, b2 + l, tol) for l in curve.support])
    out = []
    for l in curve.support:
        shifted = _shift(curve, a, l)
        total = 0j
        for j in range(roots.d):
            total += eval_psi_rho(curve, shifted, roots, j, tol) * roots.logs[j]
            total += eval_psi_rho(curve, a, roots, j, tol) * _dlog_root(roots, j, l)
        out.append(total)
    return np.array(out)


def _droot(roots: RootSet, j: int, label: int) -> complex:
    """d rho_j / d x_label = -rho^label / f'(rho)."""
    rho = roots.roots[j]
    return complex(-(rho ** label) / f_prime(roots.point, rho))


def _dlog_root(roots: RootSet, j: int, label: int) -> complex:
    return _droot(roots, j, label) / roots.roots[j]


def laurent_gradient(p: LaurentPoly, x: Point) -> np.ndarray:
    return np.array([eval_laurent(p.derivative(l), x) for l in p.support])


def derivative_identity_check(
    curve: CurveMatrix, alpha, roots: RootSet, j: int, label: int, tol: Tolerances = DEFAULT_TOL
) -> float:
    """|d psi_j(alpha) / d x_label - psi_j(alpha - A e_label)| via the chain rule.

    The left side differentiates every ingredient of psi_j(alpha) directly: the
    coefficient polynomials symbolically and the root through the closed form
    of its derivative.
    """
    a = as_exponent(alpha)
    if a.a1 <= 0:
        raise ValueError("derivative_identity_check needs a1 > 0")
    x, rho = roots.point, roots.roots[j]
    drho = _droot(roots, j, label)
    lhs = 0j
    for i in range(curve.d * a.a1 + 1):
        p = phi(curve, (a.a1, i))
        if not p:
            continue
        val, dval = eval_laurent(p, x), eval_laurent(p.derivative(label), x)
        if i == a.a2:
            lhs += dval * roots.logs[j] + val * drho / rho
        else:
            e = i - a.a2
            lhs += dval * rho ** e / e + val * rho ** (e - 1) * drho
    rhs = eval_psi_rho(curve, _shift(curve, a, label), roots, j, tol)
    return abs(lhs - rhs)


def calibrate_residue_constant(
    curve: CurveMatrix, a: int, b: int, points: Sequence[RootSet], tol: Tolerances = DEFAULT_TOL
) -> tuple[complex, float]:
    """Ratio of the total residue to Psi_d((-a, -b)) at each point: (mean, spread).

    The ratio is expected to be the constant (-1)^a / (a-1)!, since the residues
    are psi_j((-a, -b)) up to that factor and the roots sum to Psi_d there.
    """
    from ..solutions import psi_d

    p = psi_d(curve, (-a, -b))
    if not p:
        raise ValueError(f"Psi_d((-{a}, -{b})) vanishes; nothing to calibrate against")
    ratios = [residue_total_numeric(rs, a, b, tol) / eval_laurent(p, rs.point) for rs in points]
    mean = sum(ratios) / len(ratios)
    return mean, max(abs(r - mean) for r in ratios)
