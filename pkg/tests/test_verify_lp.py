# test_verify_lp.py
from fractions import Fraction as Fr

import numpy as np
import pytest

from tests.conftest import make_poly
from verify import lp_lower_bound, minimal_exponents


def test_minimal_exponents(cone, cusp_pair):
    assert set(minimal_exponents(cone)) == {(0, 0, 2), (2, 0, 0), (0, 2, 0)}
    assert minimal_exponents(make_poly(2, {(1, 1): 1})) == [(1, 1)]
    assert len(minimal_exponents(cusp_pair)) == 4
    # x1^2 x2 被 x1 x2 覆盖
    assert set(minimal_exponents(make_poly(2, {(1, 1): 1, (2, 1): 3, (0, 3): 1}))) == {(1, 1), (0, 3)}


def test_product_of_two_variables():
    bound = lp_lower_bound(make_poly(2, {(1, 1): 1}))
    assert bound.m_one == -1
    assert bound.delta0 == 1
    assert bound.equality_sup == 1
    assert bound.holds
    assert bound.cube.passed and bound.cube.corners == 4


def test_cone_vertex(cone):
    bound = lp_lower_bound(cone)
    assert bound.m_one == Fr(-3, 2)
    assert bound.optimizer == (Fr(-1, 2),) * 3
    assert bound.delta0 == Fr(3, 2)
    assert bound.dual_sum == Fr(3, 2)
    assert bound.implied_exponent == Fr(3, 2)
    assert bound.constraints()[-1].endswith("<= -1")


def test_last_variable_only():
    bound = lp_lower_bound(make_poly(3, {(0, 0, 1): 1}))
    assert bound.m_one == -1
    # 𝟏 = β·(0, 0, 1) 无解
    assert bound.equality_sup is None
    assert bound.holds


def test_nonzero_constant_is_rejected():
    with pytest.raises(ValueError):
        lp_lower_bound(make_poly(2, {(0, 0): 1, (1, 0): 1}))


def test_random_polynomials_satisfy_duality_bound(rng):
    for _ in range(100):
        terms = {}
        for _ in range(int(rng.integers(1, 5))):
            exp = tuple(int(e) for e in rng.integers(0, 4, size=3))
            if any(exp):
                terms[exp] = int(rng.integers(1, 6)) * (1 if rng.random() < 0.5 else -1)
        if not terms:
            continue
        bound = lp_lower_bound(make_poly(3, terms))
        assert bound.m_one >= -bound.delta0
        assert bound.m_one == -bound.delta0
        if bound.equality_sup is not None:
            assert bound.equality_sup <= bound.delta0
        assert bound.cube.passed


def test_monomial_sublevel_set_lies_in_sublevel_set(cone, rng):
    bound = lp_lower_bound(cone)
    eps = 0.1
    points = rng.random((100_000, 3))
    inside = bound.in_sublevel(points, eps)
    assert inside.any()
    assert np.all(np.abs(cone.evaluate_numpy(points[inside])) <= eps)


def test_lower_bound_scales_with_implied_exponent(cone):
    bound = lp_lower_bound(cone)
    ratio = bound.lower_bound(0.01) / bound.lower_bound(0.02)
    assert ratio == pytest.approx(2 ** -1.5)
