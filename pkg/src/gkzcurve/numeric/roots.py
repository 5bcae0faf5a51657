"""Points off the singular locus, roots of f(x; t), tolerances and sampling."""

from __future__ import annotations

import cmath
import math
import os
from dataclasses import dataclass, field, replace
from typing import Optional, Sequence

import numpy as np

from ..curve import CurveMatrix
from ..errors import MNotOne, NearSingular


@dataclass(frozen=True)
class Tolerances:
    eps_root: float = 1e-12
    delta_sep: float = 1e-6
    eps_check: float = 1e-8
    rank_threshold: float = 1e-8
    quad_nodes: int = 64
    quad_max_nodes: int = 1 << 15

    @classmethod
    def from_env(cls) -> "Tolerances":
        """Defaults with every epsilon multiplied by $GKZ_TOLERANCE_SCALE."""
        scale = float(os.environ.get("GKZ_TOLERANCE_SCALE", "1"))
        base = cls()
        return replace(base, eps_root=base.eps_root * scale, eps_check=base.eps_check * scale)


DEFAULT_TOL = Tolerances()


@dataclass(frozen=True)
class Point:
    curve: CurveMatrix
    coords: tuple[complex, ...]
    quality: Optional[float] = field(default=None, compare=False)

    def __post_init__(self) -> None:
        coords = tuple(complex(c) for c in self.coords)
        object.__setattr__(self, "coords", coords)
        if len(coords) != len(self.curve.support):
            raise ValueError(f"{len(coords)} coordinates for support {self.curve.support}")
        if coords[0] == 0 or coords[-1] == 0:
            raise NearSingular("x_0 and x_d must be nonzero")

    def x(self, label: int) -> complex:
        return self.coords[self.curve.position(label)]

    @property
    def by_label(self) -> dict[int, complex]:
        return dict(zip(self.curve.support, self.coords))

    def torus(self, t: complex) -> "Point":
        """t * x = (x_0, t^{k_1} x_{k_1}, ..., t^d x_d)."""
        return Point(self.curve, tuple(c * t ** j for j, c in zip(self.curve.support, self.coords)))

    def to_json(self) -> list[list[float]]:
        return [[c.real, c.imag] for c in self.coords]

    @classmethod
    def parse(cls, curve: CurveMatrix, data) -> "Point":
        """Accepts [re, im] pairs or plain numbers, in support order."""
        coords = [complex(*c) if isinstance(c, (list, tuple)) else complex(c) for c in data]
        return cls(curve, tuple(coords))


def coefficient_vector(point: Point) -> np.ndarray:
    """Dense coefficients of f(x; t), lowest degree first."""
    c = np.zeros(point.curve.d + 1, dtype=complex)
    for j, x in zip(point.curve.support, point.coords):
        c[j] = x
    return c


def f_value(point: Point, t):
    t = np.asarray(t, dtype=complex)
    return sum(x * t ** j for j, x in zip(point.curve.support, point.coords))


def f_prime(point: Point, t):
    t = np.asarray(t, dtype=complex)
    return sum(j * x * t ** (j - 1) for j, x in zip(point.curve.support, point.coords) if j)


@dataclass(frozen=True)
class RootSet:
    point: Point
    roots: tuple[complex, ...]
    logs: tuple[complex, ...]
    residual: float
    separation: float

    @property
    def d(self) -> int:
        return len(self.roots)

    def with_logs(self, logs: Sequence[complex]) -> "RootSet":
        return replace(self, logs=tuple(complex(v) for v in logs))


def _root_key(r: complex) -> tuple[float, float]:
    return (cmath.phase(r), abs(r))


def find_roots(point: Point, tol: Tolerances = DEFAULT_TOL) -> RootSet:
    """All d roots via companion eigenvalues, polished by Newton steps.

    Roots are ordered by (argument, modulus) and carry principal logarithms.
    """
    coeffs = coefficient_vector(point)
    approx = np.roots(coeffs[::-1])
    polished = []
    for r in approx:
        for _ in range(4):
            fp = f_prime(point, r)
            if fp == 0:
                break
            step = f_value(point, r) / fp
            r = r - step
            if abs(step) <= 1e-17 * max(1.0, abs(r)):
                break
        polished.append(complex(r))
    roots = sorted(polished, key=_root_key)
    sep = min(abs(a - b) for i, a in enumerate(roots) for b in roots[i + 1:]) if len(roots) > 1 else math.inf
    if sep < tol.delta_sep:
        raise NearSingular(f"roots closer than {tol.delta_sep:g} (separation {sep:.3g})")
    residual = max(abs(complex(f_value(point, r))) for r in roots)
    scale = max(sum(abs(x) * abs(r) ** j for j, x in zip(point.curve.support, point.coords)) for r in roots)
    if residual > tol.eps_root * max(1.0, scale):
        raise NearSingular(f"root residual {residual:.3g} above tolerance")
    return RootSet(
        point=replace(point, quality=sep),
        roots=tuple(roots),
        logs=tuple(cmath.log(r) for r in roots),
        residual=residual,
        separation=sep,
    )


def continue_logs(roots: RootSet, reference: Sequence[complex], guide: Sequence[complex]) -> RootSet:
    """Pick log branches near ``guide`` for the roots matching ``reference``.

    ``reference`` lists expected root positions (e.g. after a torus action) and
    ``guide`` the expected log values; each actual root is paired with the
    nearest reference and its log is shifted by 2 pi i to sit closest to the
    matching guide value.
    """
    logs = list(roots.logs)
    for j, r in enumerate(roots.roots):
        i = min(range(len(reference)), key=lambda k: abs(reference[k] - r))
        turns = round((guide[i] - logs[j]).imag / (2 * math.pi))
        logs[j] = logs[j] + 2j * math.pi * turns
    return roots.with_logs(logs)


def discriminant_m1(curve: CurveMatrix, point: Point) -> complex:
    """d^d x_0^{d-k} x_d^k + (-1)^{d-1} k^k (d-k)^{d-k} x_k^d, for m = 1."""
    if curve.m != 1:
        raise MNotOne("closed-form discriminant is only available for m = 1")
    d, k = curve.d, curve.ks[0]
    x0, xk, xd = point.coords
    return d ** d * x0 ** (d - k) * xd ** k + (-1) ** (d - 1) * k ** k * (d - k) ** (d - k) * xk ** d


def sample_point(
    curve: CurveMatrix,
    rng: np.random.Generator,
    tol: Tolerances = DEFAULT_TOL,
    arg_margin: float = 0.05,
    max_tries: int = 1000,
) -> RootSet:
    """A random nonsingular point with |x_i| in [0.5, 2] and roots off the negative axis."""
    n = len(curve.support)
    for _ in range(max_tries):
        radii = rng.uniform(0.5, 2.0, size=n)
        phases = rng.uniform(-math.pi, math.pi, size=n)
        point = Point(curve, tuple(radii * np.exp(1j * phases)))
        try:
            rs = find_roots(point, tol)
        except NearSingular:
            continue
        if all(abs(cmath.phase(r)) < math.pi - arg_margin for r in rs.roots):
            return rs
    raise NearSingular("could not sample a nonsingular point")
