"""Rational and algebraic solutions of A-hypergeometric systems attached to monomial curves."""

from .curve import CurveMatrix, Exponent, dual_curve, dual_exponent, kernel_vectors, new_curve
from .laurent import LaurentPoly, apply_box, apply_euler, box_annihilates
from .semigroup import (
    Tag,
    classify,
    e_set,
    holonomic_rank,
    in_I,
    is_cohen_macaulay,
    rational_dim,
)
from .solutions import (
    basis_descriptor,
    newton_power_sum,
    phi,
    power_sum,
    psi_0,
    psi_d,
    psi_root_sum,
    psi_total,
)

__version__ = "0.1.0"
