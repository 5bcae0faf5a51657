import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gkzcurve.curve import Exponent, dual_curve, dual_exponent, new_curve
from gkzcurve.errors import BoundExceeded
from gkzcurve.semigroup import (
    Tag,
    classification_json,
    classify,
    compositions,
    e_set,
    f0_shift_range,
    fd_shift_range,
    holonomic_rank,
    in_euler_jacobi_cone,
    in_F0,
    in_Fd,
    in_I,
    is_cohen_macaulay,
    rational_dim,
)
from oracles import brute_in, brute_tag
from strategies import curves, exponents


def test_in_I_examples(ex1):
    assert in_I(ex1, (1, 2)) is None
    assert in_I(ex1, (2, 3)) == (1, 0, 1, 0)
    assert in_I(ex1, (0, 0)) == (0, 0, 0, 0)


def test_shift_memberships(ex1):
    v, r = in_F0(ex1, (1, 2))
    assert ex1.times((0,) + v) == (1 + r, 2)
    assert in_F0(ex1, (2, 3)) and in_Fd(ex1, (2, 3))
    assert in_F0(ex1, (-1, -1)) is None and in_Fd(ex1, (-1, -1)) is None


def test_witnesses_are_valid(curve):
    for a1 in range(-2, 4):
        for a2 in range(-2 * curve.d, 4 * curve.d):
            c = classify(curve, (a1, a2))
            if c.tag is Tag.InI:
                assert curve.times(c.u) == (a1, a2) and min(c.u) >= 0
            if c.f0:
                v, r = c.f0
                assert min(v) >= 0 and r >= 0
                assert curve.times((0,) + v) == (a1 + r, a2)
            if c.fd:
                v, r = c.fd
                assert curve.times(v + (0,)) == (a1 + r, a2 + curve.d * r)


def test_classify_examples(ex1):
    assert classify(ex1, (1, 2)).tag is Tag.EBoth
    assert classify(ex1, (2, 3)).tag is Tag.InI
    assert classify(ex1, (-2, -5)).tag is Tag.J


def test_classify_matches_brute_force(curve):
    for a1 in range(-2, 3):
        for a2 in range(-2 * curve.d - 1, 3 * curve.d + 2):
            assert classify(curve, (a1, a2)).tag.value == brute_tag(curve.support, (a1, a2)), (a1, a2)


def test_shift_ranges_are_exhaustive(curve):
    """No shift outside the computed range can land in the semigroup."""
    d = curve.d
    for a1 in range(-2, 3):
        for a2 in range(-2 * d, 3 * d):
            fd, f0 = fd_shift_range(curve, (a1, a2)), f0_shift_range(curve, (a1, a2))
            for r in range(0, 30):
                if brute_in(curve.b_support, a1 + r, a2 + d * r):
                    assert r in fd
                if brute_in(curve.c_support, a1 + r, a2):
                    assert r in f0


def test_compositions_brute(ex2):
    from oracles import brute_phi

    for a in [(2, 18), (3, 27), (4, 40)]:
        assert set(compositions(ex2.support, *a)) == set(brute_phi(ex2.support, a))


def test_e_set_examples(ex1, ex2):
    assert e_set(ex1) == (Exponent(1, 2),)
    assert Exponent(2, 18) in e_set(ex2)
    for ks, d in [([1], 2), ([3], 7), ([2], 5)]:
        assert e_set(new_curve(ks, d)) == ()


def test_e_set_matches_brute_force(curve):
    brute = sorted(
        (a1, a2)
        for a1 in range(1, 3 * curve.d)
        for a2 in range(curve.ks[0] * a1 + 1, curve.ks[-1] * a1)
        if brute_tag(curve.support, (a1, a2), rmax=3 * curve.d + 3 * a1) == "EBoth"
    )
    assert [tuple(a) for a in e_set(curve)] == brute


def test_e_set_cap_raises(monkeypatch):
    from gkzcurve import semigroup

    monkeypatch.setattr(semigroup, "in_semigroup", lambda gens, n, a: False)
    with pytest.raises(BoundExceeded):
        semigroup.e_set.__wrapped__(new_curve([1, 3], 4))


def test_cohen_macaulay():
    assert not is_cohen_macaulay(new_curve([1, 3], 4))
    assert is_cohen_macaulay(new_curve([1], 2))
    for d in range(2, 8):
        assert is_cohen_macaulay(new_curve(list(range(1, d)), d))


def test_rank_and_dim(ex1, ex2):
    assert holonomic_rank(ex1, (1, 2)) == 5
    assert holonomic_rank(ex1, (2, 3)) == 4
    assert holonomic_rank(ex2, (2, 18)) == 15
    a = new_curve([1], 2)
    assert {holonomic_rank(a, (i, j)) for i in range(-3, 4) for j in range(-8, 9)} == {2}
    assert rational_dim(ex1, (1, 2)) == 2
    assert rational_dim(ex1, (2, 3)) == 1
    assert rational_dim(ex1, (-1, -2)) == 0


def test_classification_json(ex1):
    assert classification_json(ex1, (1, 2)) == {
        "alpha": [1, 2],
        "tag": "EBoth",
        "rank": 5,
        "rational_dim": 2,
        "witness": None,
    }
    assert classification_json(ex1, (2, 3))["witness"] == [1, 0, 1, 0]


@settings(max_examples=80, deadline=None)
@given(curves(max_d=8), st.integers(-4, -1), st.data())
def test_euler_jacobi_cone_is_J(a, a1, data):
    a2 = data.draw(st.integers(a.d * a1 + 1, -1))
    assert in_euler_jacobi_cone(a, (a1, a2))
    assert classify(a, (a1, a2)).tag is Tag.J


@settings(max_examples=80, deadline=None)
@given(curves(max_d=8), exponents)
def test_duality_swaps_tags(a, alpha):
    t = classify(a, alpha).tag
    assert classify(dual_curve(a), dual_exponent(a, alpha)).tag is t.dual()


@settings(max_examples=60, deadline=None)
@given(curves(max_d=8), st.integers(0, 4), st.integers(0, 4), st.data())
def test_I_closed_under_addition(a, n1, n2, data):
    a2 = data.draw(st.integers(0, a.d * n1))
    b2 = data.draw(st.integers(0, a.d * n2))
    if in_I(a, (n1, a2)) is not None and in_I(a, (n2, b2)) is not None:
        assert in_I(a, (n1 + n2, a2 + b2)) is not None


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 8), st.integers(-2, 5), st.integers(-5, 45))
def test_normal_curve_image(d, a1, a2):
    a = new_curve(list(range(1, d)), d)
    assert (in_I(a, (a1, a2)) is not None) == (a1 >= 0 and 0 <= a2 <= d * a1)


@settings(max_examples=30, deadline=None)
@given(curves(max_d=9))
def test_e_set_in_window(a):
    for e in e_set(a):
        assert a.ks[0] * e.a1 < e.a2 < a.ks[-1] * e.a1
