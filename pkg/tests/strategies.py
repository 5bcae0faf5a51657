from functools import reduce
from math import gcd

from hypothesis import strategies as st

from gkzcurve.curve import new_curve


@st.composite
def curves(draw, max_d=9, max_m=3):
    d = draw(st.integers(2, max_d))
    ks = sorted(draw(st.lists(st.integers(1, d - 1), min_size=1, max_size=min(max_m, d - 1), unique=True)))
    if reduce(gcd, ks, d) != 1:
        ks = sorted(set(ks) | {1})
    return new_curve(ks, d)


exponents = st.tuples(st.integers(-4, 4), st.integers(-20, 30))
