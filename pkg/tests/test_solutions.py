import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gkzcurve.curve import dual_curve, dual_exponent, kernel_vectors, new_curve
from gkzcurve.errors import ExponentInI, SZero
from gkzcurve.laurent import LaurentPoly, apply_euler, box_annihilates
from gkzcurve.numeric import eval_laurent
from gkzcurve.semigroup import Tag, classify, in_I
from gkzcurve.solutions import (
    Chi,
    PsiRho,
    TauRho,
    basis_descriptor,
    dual_substitute,
    newton_power_sum,
    phi,
    phi_slices,
    power_sum,
    psi_0,
    psi_d,
    psi_root_sum,
    psi_total,
    total_residue_symbolic,
)
from oracles import brute_phi
from strategies import curves

H = Fraction(1, 2)


def mono(sup, e, c=1):
    return LaurentPoly(sup, {tuple(e): c})


def is_hypergeometric(p, alpha, curve, bound=None):
    r1, r2 = apply_euler(p, alpha)
    return r1.is_zero() and r2.is_zero() and box_annihilates(p, kernel_vectors(curve, bound or 2 * curve.d))


def test_first_example(ex1):
    s = ex1.support
    assert psi_0(ex1, (1, 2)) == mono(s, (-1, 2, 0, 0), -H)
    assert psi_d(ex1, (1, 2)) == mono(s, (0, 0, 2, -1), -H)
    assert phi(ex1, (2, 3)) == mono(s, (1, 0, 1, 0))
    assert phi(ex1, (1, 2)).is_zero()
    assert phi(ex1, (2, 4)) == mono(s, (1, 0, 0, 1)) + mono(s, (0, 1, 1, 0))
    assert psi_total(ex1, (1, 2)) == mono(s, (-1, 2, 0, 0), -H) + mono(s, (0, 0, 2, -1), -H)
    assert psi_total(ex1, (-1, -2)).is_zero()


def test_first_example_in_I_value(ex1):
    """psi_d((2, 3)) carries an r = 3 term from (5, 15) = 5 * (1, 3)."""
    s = ex1.support
    assert psi_d(ex1, (2, 3)) == mono(s, (0, 1, 2, -1), -H) + mono(s, (0, 0, 5, -3), Fraction(-1, 60))


def test_second_example(ex2):
    s = ex2.support
    assert psi_0(ex2, (2, 18)) == mono(s, (-1, 3, 0, 0, 0), Fraction(-1, 6))
    expected = (
        mono(s, (0, 1, 0, 2, -1), -H)
        + mono(s, (0, 0, 1, 3, -2), Fraction(1, 6))
        + mono(s, (0, 0, 0, 10, -8), Fraction(1, 720))
    )
    assert psi_d(ex2, (2, 18)) == expected


def test_second_example_two_term_value_is_not_a_solution(ex2):
    """Dropping the r = 8 term of psi_d((2, 18)) breaks the box equations."""
    s = ex2.support
    two_term = mono(s, (0, 1, 0, 2, -1), -H) + mono(s, (0, 0, 1, 3, -2), Fraction(1, 6))
    assert is_hypergeometric(psi_d(ex2, (2, 18)), (2, 18), ex2, bound=14)
    assert apply_euler(two_term, (2, 18)) == (LaurentPoly.zero(s),) * 2
    assert not box_annihilates(two_term, [(0, 0, 1, -7, 6), (0, 1, 0, -8, 7)])


def test_vanishing_rules(curve):
    assert psi_d(curve, (0, 1)).is_zero()
    assert psi_0(curve, (0, -1)).is_zero()
    for a1 in range(-2, 3):
        for a2 in range(curve.d * a1 + 1, curve.d * a1 + 6):
            assert psi_d(curve, (a1, a2)).is_zero()
        for a2 in range(-5, 0):
            assert psi_0(curve, (a1, a2)).is_zero()


def test_nonzero_iff_shift_membership(curve):
    for a1 in range(-2, 3):
        for a2 in range(-2 * curve.d, 3 * curve.d):
            c = classify(curve, (a1, a2))
            if c.tag is Tag.InI:
                continue
            assert bool(psi_d(curve, (a1, a2))) == (c.fd is not None)
            assert bool(psi_0(curve, (a1, a2))) == (c.f0 is not None)


def test_phi_matches_enumeration(curve):
    for a1 in range(0, 4):
        for a2 in range(0, curve.d * a1 + 1):
            assert phi(curve, (a1, a2)) == LaurentPoly(curve.support, brute_phi(curve.support, (a1, a2)))


def test_rational_solutions_are_hypergeometric(curve):
    for a1 in range(-2, 3):
        for a2 in range(-2 * curve.d, 3 * curve.d):
            a = (a1, a2)
            if in_I(curve, a) is not None:
                assert is_hypergeometric(phi(curve, a), a, curve)
            else:
                assert is_hypergeometric(psi_0(curve, a), a, curve)
                assert is_hypergeometric(psi_d(curve, a), a, curve)


def test_psi_in_I_is_not_hypergeometric(ex1):
    beta = (2, 3)
    assert psi_d(ex1, beta) and psi_0(ex1, beta)
    assert not is_hypergeometric(psi_d(ex1, beta), beta, ex1)
    assert not is_hypergeometric(psi_0(ex1, beta), beta, ex1)


def test_derivative_laws(curve):
    rnd = random.Random(7)
    n = len(curve.support)
    for _ in range(50):
        a = (rnd.randint(-1, 4), rnd.randint(-curve.d, 4 * curve.d))
        u = tuple(rnd.randint(0, 2) for _ in range(n))
        shifted = tuple(x - y for x, y in zip(a, curve.times(u)))
        assert phi(curve, a).D(u) == phi(curve, shifted)
        if in_I(curve, a) is None:
            assert psi_d(curve, a).D(u) == psi_d(curve, shifted)
            assert psi_0(curve, a).D(u) == psi_0(curve, shifted)


def test_convolution(curve):
    for a1 in (1, 2, 3):
        for a2 in range(-curve.d, curve.d * a1 + curve.d):
            a = (a1, a2)
            if in_I(curve, a) is not None:
                continue
            slices = phi_slices(curve, a1)
            lhs0 = sum((slices[i] * psi_0(curve, (0, a2 - i)) for i in range(len(slices)) if i < a2), LaurentPoly.zero(curve.support))
            lhsd = sum((slices[i] * psi_d(curve, (0, a2 - i)) for i in range(len(slices)) if i > a2), LaurentPoly.zero(curve.support))
            assert psi_0(curve, a) == lhs0
            assert psi_d(curve, a) == lhsd


def test_vanishing_via_power_sums():
    for ks, d in [([2, 3], 5), ([3, 4], 7), ([1, 3], 4), ([2], 5), ([3, 5], 8)]:
        a = new_curve(ks, d)
        for a1 in range(-2, 3):
            for a2 in range(-2 * d, 3 * d):
                alpha = (a1, a2)
                if in_I(a, alpha) is not None:
                    continue
                s = d * a1 - a2
                if s > 0:
                    assert psi_d(a, alpha).is_zero() == power_sum(a, s).is_zero()
                if a2 > 0:
                    assert psi_0(a, alpha).is_zero() == power_sum(a, -a2).is_zero()


def test_duality(curve):
    dual = dual_curve(curve)
    for a1 in range(-2, 3):
        for a2 in range(-2 * curve.d, 3 * curve.d):
            ah = dual_exponent(curve, (a1, a2))
            assert dual_substitute(curve, psi_d(curve, (a1, a2))) == psi_0(dual, ah)
            assert dual_substitute(curve, psi_0(curve, (a1, a2))) == psi_d(dual, ah)


def test_power_sum_examples():
    a = new_curve([1], 2)
    s = a.support
    assert power_sum(a, 1) == mono(s, (0, 1, -1), -1)
    assert power_sum(a, 2) == mono(s, (0, 2, -2)) + mono(s, (1, 0, -1), -2)
    with pytest.raises(SZero):
        power_sum(a, 0)


@pytest.mark.parametrize("d", range(2, 7))
def test_power_sum_newton(d):
    a = new_curve(list(range(1, d)), d)
    for s in range(1, 11):
        assert power_sum(a, s) == newton_power_sum(a, s)
    # f = t^d + t^(d-1): roots 0 (d-1 times) and -1
    coords = [0] * (d - 1) + [1, 1]
    for s in range(1, 11):
        assert eval_laurent(power_sum(a, s), coords) == (-1) ** s


def test_negative_power_sums_by_inversion(curve):
    """p_{-s} of f is p_s of the reversed polynomial, i.e. of the dual curve."""
    dual = dual_curve(curve)
    for s in range(1, 8):
        assert dual_substitute(curve, power_sum(curve, -s)) == power_sum(dual, s)


def test_root_sum_sign(curve):
    for a1 in range(-1, 3):
        for a2 in range(-curve.d, 3 * curve.d):
            if in_I(curve, (a1, a2)) is None:
                assert psi_root_sum(curve, (a1, a2)) == psi_d(curve, (a1, a2)) - psi_0(curve, (a1, a2))


def test_psi_total_rejects_I(ex1):
    with pytest.raises(ExponentInI):
        psi_total(ex1, (2, 3))


def test_total_residue_symbolic(ex1):
    a = new_curve([1], 2)
    assert total_residue_symbolic(a, 1).is_zero()
    assert total_residue_symbolic(a, 2) == mono(a.support, (0, 0, -1))
    assert total_residue_symbolic(ex1, 3).is_zero()


def test_basis_descriptors(ex1):
    d = basis_descriptor(ex1, (2, 3))
    assert d.scenario is Tag.InI and d.symbolic == (phi(ex1, (2, 3)),)
    assert d.analytic == tuple(TauRho((2, 3), j, 0) for j in (1, 2, 3))
    d = basis_descriptor(ex1, (1, 2))
    assert d.scenario is Tag.EBoth and d.count == 5
    assert d.analytic == tuple(PsiRho((1, 2), j) for j in range(4))
    d = basis_descriptor(ex1, (-1, -2))
    assert d.scenario is Tag.J and d.analytic[-1] == Chi((-1, -2)) and d.count == 4
    assert d.to_json()["analytic"][0] == {"kind": "psi", "alpha": [-1, -2], "j": 0}


@settings(max_examples=60, deadline=None)
@given(curves(max_d=8), st.integers(-3, 3), st.integers(-20, 30))
def test_descriptor_count_is_rank(a, a1, a2):
    from gkzcurve.semigroup import holonomic_rank

    assert basis_descriptor(a, (a1, a2)).count == holonomic_rank(a, (a1, a2))
