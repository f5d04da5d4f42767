# test_resolve_lifting.py
from fractions import Fraction as Fr

import pytest

from algebra import I_UNIT, IrrationalJetError, PuiseuxSeries
from algebra.scalars import GaussRational
from puiseux.newton_puiseux import InexactTail
from newton import delta0_formula
from resolve import (
    SurdSeries, Unresolved, describe_failures, failing_values, lift_roots, refine_real_parts
)
from towers.transforms import CoordChain, MonomialMap
from tests.conftest import make_poly

IDENTITY = CoordChain.identity(2)
# (x3 − x1)(x3 − x1 + x1^2 x2 − x1 x2^2 + i x1 x2)
COMPLEX_PAIR = {
    (0, 0, 2): 1, (1, 0, 1): -2, (2, 1, 1): 1, (1, 2, 1): -1, (1, 1, 1): I_UNIT,
    (2, 0, 0): 1, (3, 1, 0): -1, (2, 2, 0): 1, (2, 1, 0): -I_UNIT,
}


def cone_lower_chain():
    """x1 = y1^{1/2}, x2 = y1^{1/2} y2"""
    chart = MonomialMap(((Fr(1, 2), 0), (Fr(1, 2), 1)), (1, 1))
    return CoordChain.from_transform(chart)


def test_square_root_of_monomial():
    lifted = lift_roots(make_poly(3, {(0, 0, 2): 1, (1, 0, 0): -1}), IDENTITY)
    assert lifted.method == "quadratic"
    assert lifted.beta_last == 0
    assert sorted(r.value.rational.coefficient((Fr(1, 2), 0)).re for r in lifted.roots) == [-1, 1]
    assert all(r.real and r.is_exact() for r in lifted.roots)
    assert len(lifted.fnc_roots()) == 2


def test_cone_roots_and_delta0_on_lower_chart(cone):
    lifted = lift_roots(cone, cone_lower_chain())
    assert {r.leading_exponent for r in lifted.roots} == {(Fr(1, 2), 0)}
    plus = next(r for r in lifted.roots if r.value.rational.coefficient((Fr(1, 2), 0)) == 1)
    assert plus.value.rational.coefficient((Fr(1, 2), 2)) == Fr(1, 2)
    assert delta0_formula(lifted.factored()).value == Fr(3, 2)
    assert delta0_formula(lifted.factored(plus.value)).value == 1
    assert failing_values(lifted) == []


def test_irrational_discriminant_keeps_surd():
    lifted = lift_roots(make_poly(3, {(0, 0, 2): 1, (2, 0, 0): -2}), IDENTITY)
    assert all(not r.is_exact() for r in lifted.roots)
    assert {r.value.radicand for r in lifted.roots} == {GaussRational(8)}
    assert all(r.real for r in lifted.roots)
    first, second = lifted.roots
    difference = first.value - second.value
    assert difference.is_fnc()
    assert abs(difference.leading()[1]) == pytest.approx(2 * 2 ** 0.5)
    assert delta0_formula(lifted.factored()).value == 1
    with pytest.raises(IrrationalJetError):
        lifted.puiseux_roots()


def test_imaginary_surd_has_rational_real_part():
    lifted = lift_roots(make_poly(3, {(0, 0, 2): 1, (0, 2, 0): 3}), IDENTITY)
    assert all(r.value.radicand == GaussRational(-12) for r in lifted.roots)
    assert all(r.value.real_part().is_zero() for r in lifted.roots)
    assert lifted.real_shifts() == []


def test_surd_subtraction_requires_same_radicand():
    x = PuiseuxSeries.variable(2, 0)
    a = SurdSeries(x, GaussRational(2), Fr(1), x)
    b = SurdSeries(x, GaussRational(3), Fr(1), x)
    with pytest.raises(IrrationalJetError):
        a - b
    assert (a - a).is_zero()


def test_newton_route_with_ordered_exponents():
    # (x3 − x1)(x3 − 2 x1)(x3 − x1 x2)
    f = make_poly(3, {(0, 0, 3): 1, (1, 0, 2): -3, (2, 0, 1): 2, (1, 1, 2): -1, (2, 1, 1): 3, (3, 1, 0): -2})
    lifted = lift_roots(f, IDENTITY)
    assert lifted.method == "newton-puiseux"
    assert sorted(r.leading_exponent for r in lifted.roots) == [(1, 0), (1, 0), (1, 1)]
    assert delta0_formula(lifted.factored()).value == Fr(2, 3)
    assert lifted.factored().total_roots == 3


def test_incomparable_roots_are_unresolved():
    # (x3 − x1)(x3 − x2)(x3 + x1)
    f = make_poly(3, {(0, 0, 3): 1, (0, 1, 2): -1, (2, 0, 1): -1, (2, 1, 0): 1})
    with pytest.raises(Unresolved):
        lift_roots(f, IDENTITY)


def test_far_root_is_absorbed():
    lifted = lift_roots(make_poly(3, {(0, 0, 2): 1, (0, 0, 1): -1, (1, 0, 0): 1}), IDENTITY)
    assert lifted.absorbed == ((0, 0),)
    assert len(lifted.roots) == 1
    root = lifted.roots[0]
    assert root.leading_exponent == (1, 0)
    assert root.value.rational.coefficient((2, 0)) == 1


def test_complex_pair_needs_real_part_refinement():
    f = make_poly(3, COMPLEX_PAIR)
    lifted = lift_roots(f, IDENTITY)
    assert lifted.method == "quadratic"
    assert any(dict(r.value.rational.terms) == {(1, 0): 1} for r in lifted.roots)
    # Re(r1) − Re(r2) = ±(x1 x2^2 − x1^2 x2) 在 x2 = x1 上变号
    flagged = [dict(v.exact_series().terms) for v in failing_values(lifted)]
    assert {(1, 2): 1, (2, 1): -1} in flagged or {(1, 2): -1, (2, 1): 1} in flagged
    notes = describe_failures(lifted)
    assert notes and all(n.startswith("not FNC: ") for n in notes)

    refined = refine_real_parts(f, lifted)
    assert len(refined) == 4
    half = PuiseuxSeries(2, {(Fr(1, 2), 0): 1})
    slope = PuiseuxSeries(2, {(Fr(1, 2), 1): Fr(1, 2)})
    assert {region.chain.images for region in refined} == {
        (half, slope),
        (half, half - slope),
        (half, half + slope),
        (PuiseuxSeries(2, {(1, Fr(1, 2)): Fr(2, 3)}), PuiseuxSeries(2, {(0, Fr(1, 2)): 1})),
    }
    for region in refined:
        assert "/" in region.label
        assert region.chain.is_coordinate_system()
        assert failing_values(region) == []
        assert len(region.notes) == len(notes)
        assert all(n.startswith("not FNC: ") for n in region.notes)
        assert any("x2" in text for text in region.inequalities)


def test_real_roots_need_no_refinement(cone):
    lifted = lift_roots(cone, cone_lower_chain())
    assert refine_real_parts(cone, lifted) == [lifted]


def test_cube_root_cofactor_gives_complex_surds():
    # x3^3 − x2：精确根 x2^{1/3} 之外是 x3^2 + x2^{1/3} x3 + x2^{2/3} 的一对复根
    lifted = lift_roots(make_poly(3, {(0, 0, 3): 1, (0, 1, 0): -1}), IDENTITY)
    assert len(lifted.roots) == 3
    exact = [r for r in lifted.roots if r.is_exact()]
    assert len(exact) == 1 and exact[0].real
    assert dict(exact[0].value.rational.terms) == {(0, Fr(1, 3)): 1}
    surds = [r for r in lifted.roots if not r.is_exact()]
    assert all(not r.value.is_real() for r in surds)
    assert all(dict(r.value.real_part().exact_series().terms) == {(0, Fr(1, 3)): Fr(-1, 2)} for r in surds)
    roots = lifted.puiseux_roots()
    assert sum(1 for r in roots if r.tail is not None) == 2
    assert lifted.real_surd_pair() is None


def test_real_surd_pair_centre_and_square():
    # x3^2 − 2 x1^2：c = 0，(x3 − c)^2 = 2 x1^2
    lifted = lift_roots(make_poly(3, {(0, 0, 2): 1, (2, 0, 0): -2}), IDENTITY)
    centre, square, multiplicity = lifted.real_surd_pair()
    assert centre.is_zero()
    assert square == PuiseuxSeries(2, {(2, 0): 2})
    assert multiplicity == 1


def test_irrational_cube_root_keeps_numeric_leading_term():
    # (x3^2 − x1)(x3^3 − x2)，x1 = y1^{2/5}，x2 = y1^{3/5} y2 / 2：x3^3 = y1^{3/5} y2 / 2 的根含 ∛(1/2)
    f = make_poly(3, {(0, 0, 5): 1, (1, 0, 3): -1, (0, 1, 2): -1, (1, 1, 0): 1})
    chain = CoordChain.from_transform(MonomialMap(((Fr(2, 5), 0), (Fr(3, 5), 1)), (1, Fr(1, 2))))
    lifted = lift_roots(f, chain)
    assert lifted.method == "newton-puiseux"
    assert len(lifted.roots) == 5
    exact = [r for r in lifted.roots if r.is_exact()]
    assert {r.leading_exponent for r in exact} == {(Fr(1, 5), 0)}
    numeric = [r for r in lifted.roots if r.value.tail is not None]
    assert len(numeric) == 3
    assert {r.leading_exponent for r in numeric} == {(Fr(1, 5), Fr(1, 3))}
    real = [r for r in numeric if r.real]
    assert len(real) == 1
    assert real[0].value.leading()[1] == pytest.approx(0.5 ** (1 / 3))
    assert delta0_formula(lifted.factored()).value == Fr(6, 5)
    assert lifted.real_surd_pair() is None
    assert sum(1 for r in lifted.puiseux_roots() if r.tail is not None) == 3


def test_numeric_tail_arithmetic():
    z = complex(-0.5, 0.75)
    root = SurdSeries.numeric(PuiseuxSeries(2, {}), InexactTail((1, 1), z))
    conjugate = SurdSeries.numeric(PuiseuxSeries(2, {}), InexactTail((1, 1), z.conjugate()))
    assert not root.is_exact() and not root.is_real()
    # 共轭根的实部相同
    assert (root.real_part() - conjugate.real_part()).is_zero()
    imaginary = root - root.real_part()
    assert imaginary.is_fnc()
    assert imaginary.leading()[1] == pytest.approx(0.75j)
    # 精确前缀在尾项之前时首项是精确的
    shifted = SurdSeries(PuiseuxSeries(2, {(1, 0): 1})) - root
    assert shifted.leading() == ((1, 0), GaussRational(1), True)
    real = SurdSeries.numeric(PuiseuxSeries(2, {}), InexactTail((1, 0), complex(2 ** 0.5)))
    assert real.is_real() and real.real_part() == real
    assert (real - real.real_part()).is_zero()
    # 纯虚尾项的实部在尾项处只知道为零
    pure = SurdSeries.numeric(PuiseuxSeries(2, {}), InexactTail((1, 0), 1.25j))
    assert not pure.real_part().is_fnc()
    with pytest.raises(IrrationalJetError):
        pure - SurdSeries(PuiseuxSeries(2, {}), GaussRational(2), Fr(1), PuiseuxSeries(2, {(1, 0): 1}))
