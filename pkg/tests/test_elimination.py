# test_elimination.py
from fractions import Fraction as Fr

import pytest

from algebra.polynomial import MultiPoly, variables
from elimination import (
    NeedsRotation, PolyInLast, discriminant, exact_divide, lambda_construct, poly_gcd,
    random_rotation, squarefree_part, sylvester_resultant
)


def test_resultant_of_linear_factors():
    p, q, t = variables(3)
    assert sylvester_resultant(PolyInLast(t - p), PolyInLast(t - q)) == p - q


def test_resultant_with_derivative():
    x, t = variables(2)
    assert sylvester_resultant(PolyInLast(t ** 2 - x), PolyInLast(t.scale(2))) == x.scale(-4)


def test_resultant_vanishes_on_common_factor():
    x, y, t = variables(3)
    q = t - x * y
    p = (t ** 2 + x) * q
    assert sylvester_resultant(PolyInLast(p), PolyInLast(q)).is_zero()


def test_resultant_rejects_zero():
    x, t = variables(2)
    with pytest.raises(ValueError):
        sylvester_resultant(PolyInLast(MultiPoly.zero(2)), PolyInLast(t))


def test_discriminants():
    x, t = variables(2)
    assert discriminant(PolyInLast(t ** 2 - x)) == x.scale(4)
    assert discriminant(PolyInLast(t ** 2 - t.scale(2) + 1)).is_zero()


@pytest.mark.parametrize("m,n", [(1, 1), (1, 2)])
def test_quadratic_family_discriminant(m, n):
    x1, x2, t = variables(3)
    a, b = 2, 1
    p = t ** 2 + (x2 ** (2 * n)).scale(a) * t + (x1 ** (4 * m)).scale(b)
    expected = (x2 ** (4 * n)).scale(a * a) - (x1 ** (4 * m)).scale(4 * b)
    assert discriminant(PolyInLast(p)) == expected


def test_discriminant_matches_root_product():
    x, t = variables(2)
    roots = [x, x.scale(2), x.scale(-1) + 1]
    p = MultiPoly.constant(2, 3)
    for r in roots:
        p = p * (t - r)
    expected = MultiPoly.constant(2, 3 ** 4)
    for i in range(3):
        for j in range(i + 1, 3):
            expected = expected * (roots[i] - roots[j]) ** 2
    assert discriminant(PolyInLast(p)) == expected


def test_discriminant_product_divisibility(rng):
    x, t = variables(2)
    for _ in range(5):
        p1 = t ** 2 + x.scale(int(rng.integers(1, 4))) * t - x ** 2
        p2 = t ** 2 - (x ** int(rng.integers(1, 3))).scale(int(rng.integers(1, 4)))
        d12 = discriminant(PolyInLast(p1 * p2))
        exact_divide(d12, discriminant(PolyInLast(p1)))
        exact_divide(d12, discriminant(PolyInLast(p2)))


def test_gcd():
    x, y = variables(2)
    a = (x - y) ** 2 * (x + 1)
    b = (x - y) * (y + 2)
    g = poly_gcd(a, b)
    assert exact_divide(g, x - y).is_constant()
    assert poly_gcd(x + 1, y + 2) == 1


def test_resultant_zero_iff_common_factor(rng):
    x, t = variables(2)
    for _ in range(6):
        r1, r2 = int(rng.integers(-3, 4)), int(rng.integers(-3, 4))
        p = (t - x.scale(r1)) * (t + 1)
        q = (t - x.scale(r2)) * (t - 2)
        res = sylvester_resultant(PolyInLast(p), PolyInLast(q))
        common = poly_gcd(p, q).degree(1) > 0
        assert res.is_zero() == common


def test_squarefree_parts():
    x1, x2, t = variables(3)
    dec = squarefree_part(PolyInLast((t - x1) ** 2 * (t - x2)))
    assert dec.part.poly == (t - x1) * (t - x2)
    assert sorted(m for _, m in dec.factors) == [1, 2]
    dec = squarefree_part(PolyInLast((t ** 2 - x1) ** 2))
    assert dec.part.poly == t ** 2 - x1
    assert [m for _, m in dec.factors] == [2]
    squarefree = t ** 3 - x1 * t + x2
    assert squarefree_part(PolyInLast(squarefree)).part.poly == squarefree


def test_lambda_for_cone(cone):
    data = lambda_construct(cone)
    x1, x2, _ = variables(3)
    assert data.beta_last == 0
    assert data.c == -(x1 ** 2 + x2 ** 2)
    assert data.delta == (x1 ** 2 + x2 ** 2).scale(4)
    assert data.lam == (x1 ** 2 + x2 ** 2) ** 2
    assert data.lam.scale(data.constant) == data.c * data.delta


def test_lambda_for_linear_factor():
    x1, t = variables(2)
    data = lambda_construct(t * (t - x1))
    assert data.beta_last == 1
    assert data.part.poly == t - x1
    assert data.c == -x1
    assert data.delta == 1
    assert data.lam.scale(data.constant) == -x1


def test_lambda_quadratic_family():
    x1, x2, t = variables(3)
    f = t ** 2 + (x2 ** 2).scale(2) * t + x1 ** 4
    data = lambda_construct(f)
    expected = x1 ** 4 * ((x2 ** 4).scale(4) - (x1 ** 4).scale(4))
    assert data.lam.scale(data.constant) == expected
    assert data.part.is_weierstrass()


def test_lambda_records_leading_coefficient():
    x1, t = variables(2)
    data = lambda_construct(x1 * t ** 2 - t + x1)
    assert data.leading == x1
    assert not data.lam.is_zero()


def test_needs_rotation_and_rotation():
    x1, x2, t = variables(3)
    f = x1 * t + x2 ** 2
    with pytest.raises(NeedsRotation):
        lambda_construct(f)
    rotated, shears = random_rotation(f, seed=7)
    assert any(q != 0 for q in shears)
    assert not lambda_construct(rotated).lam.is_zero()
