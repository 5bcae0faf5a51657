import os
import sys

import numpy as np
import pytest

sys.path.insert(0, os.path.dirname(__file__))

from gkzcurve.curve import new_curve  # noqa: E402

SMALL_CURVES = [([1], 2), ([1], 3), ([2], 3), ([1, 3], 4), ([1, 2, 3], 4), ([2, 3], 5), ([1, 4], 5), ([3, 4], 7)]


@pytest.fixture(params=SMALL_CURVES, ids=lambda c: f"k{c[0]}d{c[1]}")
def curve(request):
    return new_curve(*request.param)


@pytest.fixture
def ex1():
    return new_curve([1, 3], 4)


@pytest.fixture
def ex2():
    return new_curve([6, 7, 13], 14)


@pytest.fixture
def rng():
    return np.random.default_rng(20261015)
