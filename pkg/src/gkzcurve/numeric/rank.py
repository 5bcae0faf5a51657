"""Numerical rank of a family of solutions from values and first partials."""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np

from ..solutions import BasisDescriptor, Chi, PsiRho, TauRho
from .analytic import (
    chi_gradient,
    eval_chi,
    eval_laurent,
    eval_psi_rho,
    eval_tau,
    laurent_gradient,
    psi_gradient,
    tau_gradient,
)
from .roots import DEFAULT_TOL, RootSet, Tolerances, sample_point


def numeric_rank(values, threshold: float = DEFAULT_TOL.rank_threshold) -> int:
    """Count singular values above ``threshold * sigma_max`` after unit-normalizing columns."""
    m = np.asarray(values, dtype=complex)
    if m.size == 0:
        return 0
    norms = np.linalg.norm(m, axis=0)
    keep = norms > 0
    if not keep.any():
        return 0
    m = m[:, keep] / norms[keep]
    sv = np.linalg.svd(m, compute_uv=False)
    return int(np.sum(sv > threshold * sv[0]))


def member_column(desc: BasisDescriptor, index: int, roots: RootSet, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Value followed by the partials in support order for one member of the family."""
    curve, x = desc.curve, roots.point
    if index < len(desc.symbolic):
        p = desc.symbolic[index]
        return np.concatenate([[eval_laurent(p, x)], laurent_gradient(p, x)])
    t = desc.analytic[index - len(desc.symbolic)]
    if isinstance(t, PsiRho):
        return np.concatenate([[eval_psi_rho(curve, t.alpha, roots, t.j, tol)], psi_gradient(curve, t.alpha, roots, t.j, tol)])
    if isinstance(t, TauRho):
        return np.concatenate(
            [[eval_tau(curve, t.alpha, roots, t.j, t.jhat, tol)], tau_gradient(curve, t.alpha, roots, t.j, t.jhat, tol)]
        )
    if isinstance(t, Chi):
        return np.concatenate([[eval_chi(curve, t.alpha, roots, tol, warn=False)], chi_gradient(curve, t.alpha, roots, tol)])
    raise TypeError(f"unknown family member {t!r}")


def family_matrix(desc: BasisDescriptor, points: Sequence[RootSet], tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Rows: (value, partials) per point; columns: family members."""
    blocks = [np.column_stack([member_column(desc, i, rs, tol) for i in range(desc.count)]) for rs in points]
    return np.vstack(blocks)


def points_needed(desc: BasisDescriptor) -> int:
    """Enough points for about twice as many rows as family members.

    A single point only sees the 1-jet of each function, so rows from few points
    can be dependent even when the functions are not.
    """
    rows_per_point = len(desc.curve.support) + 1
    return max(3, math.ceil(2 * desc.count / rows_per_point))


def family_rank(
    desc: BasisDescriptor, rng: np.random.Generator, tol: Tolerances = DEFAULT_TOL, n_points: int | None = None
) -> int:
    n = n_points or points_needed(desc)
    pts = [sample_point(desc.curve, rng, tol) for _ in range(n)]
    return numeric_rank(family_matrix(desc, pts, tol), tol.rank_threshold)
