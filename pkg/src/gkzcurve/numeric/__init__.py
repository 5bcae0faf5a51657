"""Numerical engine: roots, residues, root-built solutions and ranks."""

from .analytic import (
    calibrate_residue_constant,
    chi_gradient,
    derivative_identity_check,
    eval_chi,
    eval_laurent,
    eval_psi_rho,
    eval_tau,
    laurent_gradient,
    power_sum_numeric,
    psi_gradient,
    residue_total_numeric,
    tau_gradient,
)
from .quadrature import circle_integral, contour_radius, local_log_residue, local_residue
from .rank import family_matrix, family_rank, member_column, numeric_rank
from .roots import (
    DEFAULT_TOL,
    Point,
    RootSet,
    Tolerances,
    continue_logs,
    discriminant_m1,
    find_roots,
    sample_point,
)

__all__ = [name for name in dir() if not name.startswith("_")]
