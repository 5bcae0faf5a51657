"""Truncated Gamma-series for the roots of the generic polynomial.

Brackets are summed over the kernel lattice of the normal curve (support
0..d).  Points on a curve with gaps are embedded into that support with the
missing coefficients set to zero.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Sequence

import numpy as np
from scipy.optimize import linear_sum_assignment

from .errors import OutsideRegion
from .numeric.roots import Point

DEFAULT_TRUNCATION = 12
REGION_M = 10.0


def gamma_coeff(u, v: int) -> Fraction:
    u = Fraction(u)
    if v == 0:
        return Fraction(1)
    if v < 0:
        out = Fraction(1)
        for i in range(-v):
            out *= u - i
        return out
    if u.denominator == 1 and u < 0 and u >= -v:
        return Fraction(0)
    den = Fraction(1)
    for i in range(1, v + 1):
        den *= u + i
    return 1 / den


@dataclass(frozen=True)
class Bracket:
    """[x^u] truncated to kernel vectors v with max|v_i| <= N."""

    u: tuple[Fraction, ...]
    N: int
    terms: tuple[tuple[tuple[int, ...], Fraction], ...]

    @property
    def d(self) -> int:
        return len(self.u) - 1

    def evaluate(self, coords: Sequence[complex]) -> complex:
        d = self.d
        x0, xd = complex(coords[0]), complex(coords[d])
        l0, ld = cmath.log(x0), cmath.log(xd)
        total = 0j
        for v, c in self.terms:
            term = complex(c.numerator) / c.denominator
            for i in range(1, d):
                e = self.u[i] + v[i]
                if e:
                    term *= complex(coords[i]) ** int(e)
                    if term == 0:
                        break
            if term == 0:
                continue
            total += term * cmath.exp((self.u[0] + v[0]) * l0 + (self.u[d] + v[d]) * ld)
        return total


@lru_cache(maxsize=256)
def bracket(u: tuple[Fraction, ...], N: int = DEFAULT_TRUNCATION, active: tuple[int, ...] | None = None) -> Bracket:
    """Build the bracket; middle entries of u must be nonnegative integers.

    ``active`` lists the middle indices whose coordinate may be nonzero.  Every
    other middle coordinate is pinned to v_j = -u_j: at x_j = 0 any other value
    leaves a positive power of x_j, so those terms vanish on evaluation.
    """
    d = len(u) - 1
    free = range(1, d) if active is None else active
    mids = []
    for i in range(1, d):
        if u[i].denominator != 1 or u[i] < 0:
            raise ValueError("middle exponents of a bracket must be nonnegative integers")
        if i in free:
            # gamma(u_i, v_i) vanishes for v_i < -u_i when u_i is a nonnegative integer
            mids.append(range(max(-N, -int(u[i])), N + 1))
        else:
            mids.append((-int(u[i]),))
    terms = []
    for mid in product(*mids):
        weight = sum(i * c for i, c in zip(range(1, d), mid))
        if weight % d:
            continue
        vd = -weight // d
        v0 = -sum(mid) - vd
        if abs(vd) > N or abs(v0) > N:
            continue
        v = (v0,) + mid + (vd,)
        c = Fraction(1)
        for ui, vi in zip(u, v):
            c *= gamma_coeff(ui, vi)
            if not c:
                break
        if c:
            terms.append((v, c))
    return Bracket(u, N, tuple(sorted(terms)))


def sigma_exponent(a: int, d: int) -> tuple[tuple[Fraction, ...], Fraction]:
    """The bracket exponent and prefactor defining sigma_a."""
    u = [Fraction(0)] * (d + 1)
    if a == 1:
        u[0], u[d] = Fraction(1, d), Fraction(-1, d)
        return tuple(u), Fraction(1)
    u[0] += Fraction(a - d, d)
    u[a - 1] += 1
    u[d] += Fraction(-a, d)
    return tuple(u), Fraction(1, d)


def normal_coords(point: Point) -> tuple[complex, ...]:
    """Coefficients of f on the full support 0..d (zeros at the gaps)."""
    d = point.curve.d
    c = [0j] * (d + 1)
    for j, x in zip(point.curve.support, point.coords):
        c[j] = x
    return tuple(c)


def region_ok(point: Point, M: float = REGION_M) -> bool:
    """|x_0|^(d-j) |x_d|^j > M |x_j|^d for every middle j."""
    d = point.curve.d
    x = normal_coords(point)
    return all(abs(x[0]) ** (d - j) * abs(x[d]) ** j > M * abs(x[j]) ** d for j in range(1, d))


def _check_region(point: Point, M: float) -> None:
    if not region_ok(point, M):
        warnings.warn(f"point lies outside the series convergence test with M = {M:g}", OutsideRegion, stacklevel=3)


def _sigma(a: int, x: tuple[complex, ...], N: int) -> complex:
    d = len(x) - 1
    u, pre = sigma_exponent(a, d)
    active = tuple(i for i in range(1, d) if x[i] != 0)
    return complex(pre) * bracket(u, N, active).evaluate(x)


def sigma(a: int, point: Point, N: int = DEFAULT_TRUNCATION, M: float = REGION_M) -> complex:
    d = point.curve.d
    if not 1 <= a <= d:
        raise ValueError(f"a must lie in 1..{d}")
    _check_region(point, M)
    return _sigma(a, normal_coords(point), N)


def sigmas(point: Point, N: int = DEFAULT_TRUNCATION, M: float = REGION_M) -> list[complex]:
    _check_region(point, M)
    x = normal_coords(point)
    return [_sigma(a, x, N) for a in range(1, point.curve.d + 1)]


def xi(i: int, d: int) -> complex:
    """The i-th d-th root of -1, i = 1..d."""
    return cmath.exp(1j * math.pi * (2 * i - 1) / d)


def root_series(i: int, point: Point, N: int = DEFAULT_TRUNCATION, M: float = REGION_M) -> complex:
    d = point.curve.d
    if not 1 <= i <= d:
        raise ValueError(f"i must lie in 1..{d}")
    s = sigmas(point, N, M)
    return sum(xi(i, d) ** a * s[a - 1] for a in range(1, d + 1))


def all_root_series(point: Point, N: int = DEFAULT_TRUNCATION, M: float = REGION_M) -> list[complex]:
    d = point.curve.d
    s = sigmas(point, N, M)
    return [sum(xi(i, d) ** a * s[a - 1] for a in range(1, d + 1)) for i in range(1, d + 1)]


def theta(b: int, point: Point, s: int, N: int = DEFAULT_TRUNCATION, M: float = REGION_M) -> complex:
    """Sum over (a_1..a_s) in {1..d}^s with a_1+..+a_s = b + l d of (-1)^l prod sigma_{a_j}."""
    d = point.curve.d
    if not 1 <= b <= d or s < 1:
        raise ValueError("need 1 <= b <= d and s >= 1")
    sg = sigmas(point, N, M)
    total = 0j
    for combo in product(range(1, d + 1), repeat=s):
        excess = sum(combo) - b
        if excess < 0 or excess % d:
            continue
        term = (-1) ** (excess // d)
        for a in combo:
            term *= sg[a - 1]
        total += term
    return total


def match_roots(series: Sequence[complex], numeric: Sequence[complex]) -> list[tuple[int, int, float]]:
    """Optimal pairing (series index, numeric index, distance)."""
    cost = np.abs(np.subtract.outer(np.asarray(series), np.asarray(numeric)))
    rows, cols = linear_sum_assignment(cost)
    return [(int(r), int(c), float(cost[r, c])) for r, c in zip(rows, cols)]
