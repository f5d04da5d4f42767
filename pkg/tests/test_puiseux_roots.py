# test_puiseux_roots.py
from fractions import Fraction as Fr

import pytest

from algebra import ONE, PuiseuxSeries, poly_compose
from algebra.scalars import GaussRational
from puiseux import (
    Reality, characteristic_roots, newton_puiseux, puiseux_roots, root_multiset
)
from tests.conftest import make_poly


def x_series():
    return PuiseuxSeries.variable(1, 0)


def residual_vanishes(f, root):
    return poly_compose(f, [x_series(), root.series]).is_zero()


def test_characteristic_roots_exact_and_inexact():
    exact = characteristic_roots([GaussRational(-4), GaussRational(0), ONE])
    assert [r.value for r in exact] == [GaussRational(-2), GaussRational(2)]
    assert all(r.exact for r in exact)
    inexact = characteristic_roots([GaussRational(-2), GaussRational(0), ONE])
    assert not any(r.exact for r in inexact)
    assert sorted(abs(complex(r.value)) for r in inexact) == pytest.approx([2 ** 0.5] * 2)


def test_cusp_roots():
    f = make_poly(2, {(0, 2): 1, (3, 0): -1})
    roots = newton_puiseux(f)
    assert len(roots) == 2
    for root in roots:
        assert root.leading_exponent == (Fr(3, 2),)
        assert root.multiplicity == 1
        assert root.is_exact()
        assert root.reality == Reality.REAL
    assert sorted(r.series.coefficient((Fr(3, 2),)).re for r in roots) == [-1, 1]


def test_roots_of_shifted_square_root():
    # y^2 − 2xy − x^3 的根 x ± x(1 + x)^{1/2}
    f = make_poly(2, {(0, 2): 1, (1, 1): -2, (3, 0): -1})
    roots = {r.leading_exponent: r for r in newton_puiseux(f, order=8)}
    big, small = roots[(Fr(1),)], roots[(Fr(2),)]
    assert big.series.coefficient((1,)) == 2
    assert big.series.coefficient((2,)) == Fr(1, 2)
    assert big.series.coefficient((3,)) == Fr(-1, 8)
    assert small.series.coefficient((2,)) == Fr(-1, 2)
    assert small.series.coefficient((3,)) == Fr(1, 8)
    assert small.series.coefficient((4,)) == Fr(-1, 16)
    assert residual_vanishes(f, big) and residual_vanishes(f, small)


def test_conjugate_pair():
    f = make_poly(2, {(0, 2): 1, (2, 0): 1})
    roots = newton_puiseux(f)
    values = sorted((r.leading_coefficient.im for r in roots))
    assert values == [-1, 1]
    assert all(r.reality == Reality.COMPLEX_PAIR for r in roots)
    conjugates = {r.series.conjugate() for r in roots}
    assert conjugates == {r.series for r in roots}


def test_multiple_root_and_multiplicity_sum():
    # (y − x)^2 (y + x^2)
    f = make_poly(2, {(0, 3): 1, (2, 2): 1, (1, 2): -2, (3, 1): -2, (2, 1): 1, (4, 0): 1})
    roots = newton_puiseux(f)
    assert sum(r.multiplicity for r in roots) == 3
    double = next(r for r in roots if r.multiplicity == 2)
    assert double.series == PuiseuxSeries(1, {(1,): 1})
    assert len(root_multiset(roots)) == 3
    for root in roots:
        assert residual_vanishes(f, root)


def test_axis_content_and_zero_root_are_stripped():
    # x · y · (y^2 − x)
    f = make_poly(2, {(1, 3): 1, (2, 1): -1})
    roots = newton_puiseux(f)
    assert sum(r.multiplicity for r in roots) == 2
    assert {r.leading_exponent for r in roots} == {(Fr(1, 2),)}


def test_bivariate_coefficients():
    # X^2 − (y1 y2)^2，基变量为 (y1, y2)
    coeffs = {0: PuiseuxSeries(2, {(2, 2): -1}), 2: PuiseuxSeries.constant(2, 1)}
    roots = puiseux_roots(coeffs)
    assert {r.leading_exponent for r in roots} == {(Fr(1), Fr(1))}
    assert sorted(r.series.coefficient((1, 1)).re for r in roots) == [-1, 1]


def test_random_residuals(rng):
    x2_powers = [0, 1, 2, 3]
    for _ in range(12):
        terms = {(0, int(rng.integers(2, 5))): 1}
        for _ in range(4):
            exp = (int(rng.integers(1, 5)), int(rng.choice(x2_powers)))
            terms[exp] = int(rng.integers(-3, 4)) or 1
        f = make_poly(2, terms)
        roots = newton_puiseux(f, order=6)
        degree = f.degree(1) - min(e[1] for e in f.terms)
        assert sum(r.multiplicity for r in roots) == degree
        for root in roots:
            if root.is_exact() and root.is_near():
                assert residual_vanishes(f, root)


def test_rejects_non_bivariate():
    with pytest.raises(ValueError):
        newton_puiseux(make_poly(3, {(0, 0, 1): 1}))
