# test_newton_polyhedron.py
from fractions import Fraction as Fr
import math

import pytest

from algebra.polynomial import MultiPoly
from newton import (
    NewtonPolyhedron, generalized_exponent, hull_contains, linprog_exact, LPStatus,
    newton_distance_exponent, np_from_terms, projected_exponent
)


def gens(np_):
    return set(np_.generators)


def test_generators_of_expanded_product(cusp_pair):
    np_ = np_from_terms(cusp_pair)
    expected = {(0, 0, 5), (1, 0, 3), (0, 1, 2), (1, 1, 0)}
    assert gens(np_) == {tuple(Fr(x) for x in g) for g in expected}


def test_single_variable_and_cone(cone):
    assert gens(np_from_terms(MultiPoly.variable(3, 2))) == {(Fr(0), Fr(0), Fr(1))}
    assert len(np_from_terms(cone).generators) == 3


def test_zero_and_nonvanishing_rejected():
    with pytest.raises(ValueError):
        np_from_terms(MultiPoly.zero(2))
    with pytest.raises(ValueError):
        np_from_terms(MultiPoly(2, {(0, 0): 1, (1, 0): 1}))


def test_non_minimal_generators_dropped():
    np_ = NewtonPolyhedron(2, ((1, 1), (2, 1), (0, 3)))
    assert gens(np_) == {(Fr(1), Fr(1)), (Fr(0), Fr(3))}


def test_cone_distance(cone):
    d0, delta0 = newton_distance_exponent(np_from_terms(cone))
    assert d0 == Fr(2, 3)
    assert delta0 == Fr(3, 2)


def test_trivial_distance():
    assert newton_distance_exponent(NewtonPolyhedron(3, ((0, 0, 1),))) == (Fr(1), Fr(1))


def test_edge_path_distance():
    np_ = NewtonPolyhedron(3, ((0, 0, 5), (Fr(2, 5), 0, 3), (1, 1, 0)))
    assert newton_distance_exponent(np_)[1] == Fr(6, 5)


def test_projected_exponents():
    np_ = NewtonPolyhedron(3, ((0, 0, 5), (Fr(2, 5), 0, 3), (1, 1, 0)))
    assert projected_exponent(np_, 2) == Fr(4, 3)
    assert projected_exponent(np_, 1) == Fr(6, 5)
    assert generalized_exponent(np_) == Fr(6, 5)
    trivial = NewtonPolyhedron(3, ((0, 0, 1),))
    assert projected_exponent(trivial, 1) == 1
    assert generalized_exponent(trivial) == 1


def test_projection_through_origin_is_unbounded(cone):
    # (0,2,0) 投影到 π_1 的原点，投影多面体为整个象限
    np_ = np_from_terms(cone)
    assert projected_exponent(np_, 1) == math.inf
    assert generalized_exponent(np_) == math.inf


def test_projected_index_range(cone):
    with pytest.raises(ValueError):
        projected_exponent(np_from_terms(cone), 3)


def test_membership_and_extreme_generators():
    np_ = NewtonPolyhedron(2, ((0, 2), (1, 1), (2, 0)))
    assert np_.contains((1, 1))
    assert not np_.contains((Fr(1, 2), Fr(1, 2)))
    assert set(np_.extreme_generators()) == {(Fr(0), Fr(2)), (Fr(2), Fr(0))}
    assert hull_contains([(Fr(0), Fr(2)), (Fr(2), Fr(0))], (Fr(1), Fr(1)))


def test_lp_statuses():
    # max x s.t. x <= 3
    assert linprog_exact([1], a_ub=[[1]], b_ub=[3], maximize=True).value == 3
    # x >= 0 且 x <= -1
    assert linprog_exact([1], a_ub=[[1]], b_ub=[-1]).status == LPStatus.INFEASIBLE
    assert linprog_exact([-1], a_ub=[[-1]], b_ub=[0]).status == LPStatus.UNBOUNDED


def test_lp_degenerate_redundant_rows():
    result = linprog_exact([1, 1], a_eq=[[1, 1], [2, 2]], b_eq=[1, 2])
    assert result.is_optimal and result.value == 1


def test_product_generators_dominate_vertex_sums(rng):
    for _ in range(10):
        terms_p = {(int(rng.integers(0, 4)), int(rng.integers(1, 4))): 1 for _ in range(3)}
        terms_q = {(int(rng.integers(0, 4)), int(rng.integers(1, 4))): 1 for _ in range(3)}
        p, q = MultiPoly(2, terms_p), MultiPoly(2, terms_q)
        product = np_from_terms(p * q)
        sums = [tuple(a + b for a, b in zip(g, h))
                for g in np_from_terms(p).generators for h in np_from_terms(q).generators]
        np_sum = NewtonPolyhedron(2, tuple(sums))
        for g in product.generators:
            assert np_sum.contains(g)
