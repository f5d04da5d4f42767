# test_algebra_polynomial.py
from fractions import Fraction as Fr

import numpy as np
import pytest

from algebra import (
    GaussRational, Incomparable, IrrationalJetError, MultiPoly, VariableMismatch,
    order_exponents, poly_arith, variables
)
from algebra.scalars import gauss_rational_power, gauss_sqrt, rational_power_ceiling, root_bounds


def test_difference_of_squares():
    x, y = variables(2)
    assert poly_arith(y - x, y + x, kind="mul") == y ** 2 - x ** 2


def test_partial_derivative_quadratic_family():
    x1, x2, t = variables(3)
    p = t ** 2 + (x2 ** 2).scale(3) * t + (x1 ** 4).scale(5)
    assert poly_arith(p, kind="partial_derivative", var=2) == t.scale(2) + (x2 ** 2).scale(3)


def test_monomial_substitution():
    x1, x2 = variables(2)
    result = poly_arith(x1 * x2, [(1, (Fr(2, 5), 0)), (1, (Fr(3, 5), 1))], kind="substitute_monomial_map")
    assert dict(result.terms) == {(1, 1): 1}


def test_variable_mismatch():
    with pytest.raises(VariableMismatch):
        MultiPoly.variable(2, 0) + MultiPoly.variable(3, 0)


def test_evaluate_exact_and_numpy():
    x, y = variables(2)
    p = x ** 2 - y.scale(GaussRational(0, 1))
    assert p.evaluate([2, 1]) == GaussRational(4, -1)
    values = p.evaluate_numpy(np.array([[2.0, 1.0], [0.5, 0.0]]))
    assert np.allclose(values, [4 - 1j, 0.25])


def test_flip_signs_and_coefficients():
    x, t = variables(2)
    p = t ** 3 - x * t + x ** 2
    assert p.flip_signs([-1, 1]) == t ** 3 + x * t + x ** 2
    coeffs = p.coefficients_in(1)
    assert coeffs[3] == 1 and coeffs[1] == -x and coeffs[0] == x ** 2
    assert MultiPoly.from_coefficients(coeffs, 1, 2) == p


def test_ring_axioms(rng):
    def random_poly():
        return MultiPoly(2, {(int(rng.integers(0, 3)), int(rng.integers(0, 3))): int(rng.integers(-3, 4))
                             for _ in range(3)})
    for _ in range(10):
        a, b, c = random_poly(), random_poly(), random_poly()
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c


def test_order_exponents():
    with pytest.raises(Incomparable):
        order_exponents([(1, 0, 3), (0, 1, 2)])
    assert order_exponents([(Fr(2, 5), 1), (Fr(1, 5), 0)]) == [1, 0]
    assert order_exponents([(2, 1), (0, 0), (1, 1)]) == [1, 2, 0]


def test_gauss_powers():
    assert gauss_rational_power(GaussRational(4), Fr(1, 2)) == 2
    assert gauss_sqrt(GaussRational(-4)) == GaussRational(0, 2)
    assert gauss_rational_power(GaussRational(0, 2), 2) == -4
    with pytest.raises(IrrationalJetError):
        gauss_sqrt(GaussRational(2))


def test_root_bounds_and_ceiling():
    lo, hi = root_bounds(2, 2)
    assert lo * lo <= 2 <= hi * hi
    assert root_bounds(Fr(1, 8), 3) == (Fr(1, 2), Fr(1, 2))
    t = rational_power_ceiling(3, 2)
    assert t ** 2 >= 3 and t >= 1
    assert rational_power_ceiling(Fr(9, 4), 2) == Fr(3, 2)
