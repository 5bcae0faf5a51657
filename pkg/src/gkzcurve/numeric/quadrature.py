"""Trapezoidal contour integrals around individual roots."""

from __future__ import annotations

import math
from typing import Callable

import numpy as np

from .roots import DEFAULT_TOL, RootSet, Tolerances, f_prime, f_value


def circle_integral(
    g: Callable[[np.ndarray], np.ndarray],
    center: complex,
    radius: float,
    tol: Tolerances = DEFAULT_TOL,
) -> complex:
    """(1 / 2 pi i) times the integral of g over |t - center| = radius.

    Node count starts at ``tol.quad_nodes`` and doubles until two successive
    estimates agree to ``tol.eps_check`` (relative to max(1, |I|)).
    """
    n = tol.quad_nodes
    prev = None
    while True:
        w = np.exp(2j * math.pi * np.arange(n) / n)
        t = center + radius * w
        est = complex(np.sum(g(t) * (radius * w)) / n)
        if prev is not None and abs(est - prev) <= tol.eps_check * max(1.0, abs(est)):
            return est
        if n >= tol.quad_max_nodes:
            return est
        prev = est
        n *= 2


def contour_radius(roots: RootSet, j: int) -> float:
    """Half the distance to the nearest other root, capped at |rho_j| / 2."""
    rho = roots.roots[j]
    near = min((abs(rho - r) for i, r in enumerate(roots.roots) if i != j), default=abs(rho))
    return min(near / 2, abs(rho) / 2)


def local_residue(roots: RootSet, j: int, n: int, a: int, tol: Tolerances = DEFAULT_TOL) -> complex:
    """Res at rho_j of t^n / f(x; t)^a dt."""
    point, rho = roots.point, roots.roots[j]
    if a < 1:
        return 0j
    if a == 1:
        return complex(rho ** n / f_prime(point, rho))
    return circle_integral(lambda t: t ** n / f_value(point, t) ** a, rho, contour_radius(roots, j), tol)


def local_log_residue(roots: RootSet, j: int, n: int, a: int, tol: Tolerances = DEFAULT_TOL) -> complex:
    """Res at rho_j of log(t) t^n / f^a dt, with log continued from the branch of rho_j."""
    point, rho, L = roots.point, roots.roots[j], roots.logs[j]
    if a < 1:
        return 0j
    if a == 1:
        return complex(L * rho ** n / f_prime(point, rho))
    return circle_integral(
        lambda t: (L + np.log(t / rho)) * t ** n / f_value(point, t) ** a,
        rho,
        contour_radius(roots, j),
        tol,
    )
