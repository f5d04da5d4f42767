# test_algebra_series.py
from fractions import Fraction as Fr

import numpy as np
import pytest

from algebra import (
    BranchCutError, NotAUnit, NotFNC, PuiseuxSeries, fnc_certify, order_exponents,
    series_arith, series_compose, series_inverse, series_sqrt, unit_certify
)


def s1(terms, order=None):
    """单变量级数：{指数: 系数}"""
    return PuiseuxSeries(1, {(Fr(e),): c for e, c in terms.items()}, order=order)


def terms_of(series):
    return {e[0] if len(e) == 1 else e: c for e, c in series.terms.items()}


def test_truncated_product():
    result = series_arith(s1({0: 1, 1: 1}, order=4), s1({0: 1, 1: -1}, order=4), kind="mul")
    assert terms_of(result) == {0: 1, 2: -1}
    assert result.order == 4


def test_lattice_of_sum():
    a = PuiseuxSeries(2, {(Fr(1, 2), 0): 1})
    b = PuiseuxSeries(2, {(0, Fr(1, 3)): 1})
    assert series_arith(a, b).lattice == 6


def test_truncation_contract():
    a = s1({Fr(1, 2): 1, Fr(5, 2): 1}, order=3)
    product = a * a
    assert product.order == 3
    assert all(sum(e) <= 3 for e in product.terms)
    assert terms_of(product) == {1: 1, 3: 2}


def test_inverse_examples():
    inv = series_inverse(s1({0: 1, 1: 1}), order=3)
    assert terms_of(inv.series) == {0: 1, 1: -1, 2: 1, 3: -1}
    assert terms_of(series_inverse(s1({0: 2})).series) == {0: Fr(1, 2)}
    inv = series_inverse(s1({0: 1, 4: Fr(-1, 16)}), order=8)
    assert terms_of(inv.series) == {0: 1, 4: Fr(1, 16), 8: Fr(1, 256)}


def test_sqrt_examples():
    root = series_sqrt(s1({0: 1, 1: 1}), order=2)
    assert terms_of(root.series) == {0: 1, 1: Fr(1, 2), 2: Fr(-1, 8)}
    assert terms_of(series_sqrt(s1({0: 4})).series) == {0: 2}
    root = series_sqrt(s1({0: 1, 4: Fr(-1, 16)}), order=8)
    assert terms_of(root.series) == {0: 1, 4: Fr(-1, 32), 8: Fr(-1, 2048)}


def test_sqrt_errors():
    with pytest.raises(NotAUnit):
        series_sqrt(s1({1: 1}))
    with pytest.raises(BranchCutError):
        series_sqrt(s1({0: -1, 1: 1}))


def test_unit_certify_examples():
    assert unit_certify(PuiseuxSeries(1, {(0,): 1, (1,): 1}), eps=Fr(1, 2)).lower_bound >= Fr(1, 2)
    two = PuiseuxSeries(2, {(0, 0): 2, (1, 0): -1, (0, 1): -1})
    assert unit_certify(two, eps=Fr(1, 2)).lower_bound >= 1
    with pytest.raises(NotAUnit):
        unit_certify(PuiseuxSeries(2, {(1, 0): 1, (0, 1): 1}))


def test_unit_certify_shrinks_domain():
    unit = unit_certify(s1({0: 1, 1: -4}), eps=Fr(1, 2))
    assert unit.shrinks > 0
    assert unit.eps < Fr(1, 4)


def random_unit(rng, nvars=2):
    terms = {(0,) * nvars: 1}
    for _ in range(4):
        exp = tuple(Fr(int(rng.integers(0, 4)), 2) for _ in range(nvars))
        if any(exp):
            terms[exp] = Fr(int(rng.integers(-3, 4)), 8)
    return PuiseuxSeries(nvars, terms)


def test_certified_bound_holds_on_samples(rng):
    for _ in range(10):
        unit = unit_certify(random_unit(rng))
        points = rng.uniform(0, float(unit.eps), size=(200, 2))
        values = np.abs(unit.evaluate_numpy(points))
        assert values.min() >= float(unit.lower_bound) - 1e-12


def test_sqrt_and_inverse_reproduce(rng):
    order = 6
    for _ in range(8):
        u = random_unit(rng)
        root = series_sqrt(u, order=order).series
        assert (root * root).truncate(order) == u.truncate(order)
        inverse = series_inverse(u, order=order).series
        assert dict((u * inverse).truncate(order).terms) == {(0, 0): 1}


def test_fnc_split_and_ordering():
    a = PuiseuxSeries(2, {(Fr(1, 5), 0): 1, (Fr(2, 5), 1): -3})
    fnc = fnc_certify(a)
    assert fnc.exponent == (Fr(1, 5), 0)
    assert order_exponents(list(a.terms))
    with pytest.raises(NotFNC):
        PuiseuxSeries(2, {(1, 0): 1, (0, 1): 1}).fnc_exponent()


def test_lattify_roundtrip():
    a = s1({Fr(1, 2): 1, Fr(1, 3): 2})
    z, s = a.lattify()
    assert s == 6
    assert terms_of(z) == {3: 1, 2: 2}
    assert z.delattify(6) == a


def test_compose_with_fractional_images():
    # x1 x2 在 (y1^{2/5}, y1^{3/5} y2) 处
    outer = PuiseuxSeries(2, {(1, 1): 1})
    images = [PuiseuxSeries(2, {(Fr(2, 5), 0): 1}), PuiseuxSeries(2, {(Fr(3, 5), 1): 1})]
    assert dict(series_compose(outer, images).terms) == {(1, 1): 1}
    # sqrt(x) 在 x = y^2 (1 + y) 处
    root = s1({Fr(1, 2): 1})
    image = s1({2: 1, 3: 1})
    composed = series_compose(root, [image], order=4)
    assert terms_of(composed) == {1: 1, 2: Fr(1, 2), 3: Fr(-1, 8), 4: Fr(1, 16)}
