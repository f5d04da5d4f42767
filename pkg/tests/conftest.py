# conftest.py
import numpy as np
import pytest

from algebra.polynomial import MultiPoly


def make_poly(nvars, terms):
    """terms: {指数元组: 系数}"""
    return MultiPoly(nvars, terms)


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@pytest.fixture
def cusp_pair():
    """(x3^2 − x1)(x3^3 − x2) 的展开式"""
    return make_poly(3, {(0, 0, 5): 1, (1, 0, 3): -1, (0, 1, 2): -1, (1, 1, 0): 1})


@pytest.fixture
def cone():
    """x3^2 − x1^2 − x2^2"""
    return make_poly(3, {(0, 0, 2): 1, (2, 0, 0): -1, (0, 2, 0): -1})
