# test_towers.py
from collections import Counter
from fractions import Fraction as Fr

import numpy as np
import pytest

from algebra import NotFNC, PuiseuxSeries
from puiseux import newton_puiseux
from towers import (
    BandEngine, CoordChain, Horn, HornKind, Shift, adjacent_horn, block2_decompose, blow_down,
    classify_roots, compose, coverage, distant_ratio, fiber_points, fnc_transport, interior_points,
    jacobian_relative_error, normalize_jacobian, power_transform, preferred_coords, shifted_bands,
    split_distant_horn
)
from tests.conftest import make_poly


def mono(exponent, coeff=1):
    return PuiseuxSeries.monomial(exponent, coeff)


def test_blow_down_and_power_jacobians():
    sigma = blow_down(1, 3).jacobian()
    assert sigma.coefficient == 1
    assert sigma.exponent == (0, 0, 1)
    power = power_transform((2, 3)).jacobian()
    assert power.coefficient == 6
    assert power.exponent == (1, 2)
    with pytest.raises(ValueError):
        power_transform((0, 1))
    with pytest.raises(ValueError):
        blow_down(3, 3)


def test_composition_and_normalization():
    chain = compose(CoordChain.from_transform(blow_down(0, 2)), power_transform((2, 1)))
    assert chain.jacobian.coefficient == 2
    assert chain.jacobian.exponent == (1, 1)
    assert chain.images[0] == PuiseuxSeries(2, {(2, 1): 1})
    normalized = normalize_jacobian(chain)
    assert normalized.is_coordinate_system()
    assert normalized.jacobian.coefficient == Fr(1, 2)
    assert normalized.images == (
        PuiseuxSeries(2, {(1, Fr(1, 2)): 1}),
        PuiseuxSeries(2, {(0, Fr(1, 2)): 1}),
    )


def test_horn_validation():
    zero = PuiseuxSeries(1, {})
    with pytest.raises(ValueError):
        Horn(HornKind.ADJACENT, zero, 0, mono((1,)))
    with pytest.raises(NotFNC):
        adjacent_horn(zero, 1, PuiseuxSeries(1, {(1,): 1, (2,): 1}))
    with pytest.raises(ValueError):
        Horn(HornKind.DISTANT, zero, 1, mono((0,)), mono((1,), Fr(1, 2)),
             ratio=Fr(1, 2), index=0, power=Fr(1))


def test_split_distant_horn_along_support():
    zero = PuiseuxSeries(2, {})
    horns = split_distant_horn(zero, 1, mono((1, 1), 2), mono((0, 0)))
    assert len(horns) == 2
    first, second = horns
    assert (first.index, first.ratio, first.upper) == (0, 2, mono((0, 1)))
    assert (second.index, second.ratio, second.upper) == (1, 1, mono((0, 0)))

    same_order = split_distant_horn(zero, -1, mono((0, 0), Fr(1, 2)), mono((0, 0)))
    assert len(same_order) == 1
    assert same_order[0].kind == HornKind.ADJACENT
    assert same_order[0].centre == mono((0, 0), Fr(-1, 2))


def test_preferred_coords_of_negative_horn(rng):
    x1 = mono((1,))
    horn = adjacent_horn(x1, -1, x1.scale(Fr(1, 4)))
    chain = preferred_coords(horn)
    assert chain.is_coordinate_system()
    assert chain.jacobian.coefficient == Fr(-1, 8)
    inside = chain.contains(np.array([[0.5, 0.45], [0.5, 0.3], [0.5, 0.55]]))
    assert inside.tolist() == [True, False, False]
    points = interior_points(chain, rng, 50)
    assert np.all(jacobian_relative_error(chain, points) < 1e-5)


def test_distant_chart_jacobian_matches_finite_differences(rng):
    horn = split_distant_horn(PuiseuxSeries(1, {}), 1, mono((Fr(3, 2),), Fr(125, 64)), mono((0,)))[0]
    chain = preferred_coords(horn)
    assert chain.is_coordinate_system()
    assert chain.fixed == frozenset({0, 1})
    points = interior_points(chain, rng, 50)
    assert np.all(jacobian_relative_error(chain, points) < 1e-5)


def test_distant_ratio_keeps_roots_rational():
    assert distant_ratio(Fr(3, 2), (Fr(3, 2),)) == Fr(125, 64)
    assert distant_ratio(Fr(1, 3), (Fr(1),)) == 1
    assert distant_ratio(Fr(3, 2), (Fr(0), Fr(1))) == Fr(3, 2)


def test_engine_base_radius_for_cusp():
    target = make_poly(2, {(0, 2): 1, (3, 0): -1})
    engine = BandEngine(target, newton_puiseux(target), label="C")
    regions = engine.run()
    assert len(regions) == 4
    assert Counter(r.kind for r in regions) == {"lower": 3, "distant": 1}
    assert engine.base_radius == pytest.approx(0.64)


def test_block2_without_roots():
    towers = block2_decompose(None, [], make_poly(2, {(0, 3): 1}))
    assert len(towers) == 2
    assert {t.horn.sign for t in towers} == {1, -1}
    assert all(t.fnc.exponent == (0, 3) for t in towers)
    assert towers[0].inequalities()[0].startswith("0 < +x2 < ")


def test_block2_covers_fiber(rng):
    target = make_poly(2, {(0, 2): 1, (2, 0): -1})
    towers = block2_decompose(None, newton_puiseux(target), target)
    assert len(towers) == 8
    assert Counter(t.kind for t in towers) == {"distant": 2, "lower": 6}
    assert all(t.chain.is_coordinate_system() for t in towers)
    points = fiber_points(None, 1, rng, 4000, eps=0.05)
    result = coverage(towers, points)
    assert result.fraction >= 0.99
    assert result.overlap_fraction <= 0.01


def test_fnc_transport_through_blow_down():
    chain = CoordChain.from_transform(blow_down(0, 2))
    form = fnc_transport(PuiseuxSeries(2, {(1, 0): 3}), chain)
    assert form.exponent == (1, 1)
    assert form.unit.lower_bound > 0


def test_preferred_coords_with_square_fibre():
    # x2 = x1 + s^{1/2}，s 方向上的角 0 < s < 1
    fibre = [Shift(1, PuiseuxSeries(2, {(1, 0): 1})), power_transform((1, Fr(1, 2)))]
    chain = preferred_coords(adjacent_horn(PuiseuxSeries(1, {}), 1, mono((0,))), fibre=fibre)
    assert chain.is_coordinate_system()
    assert chain.jacobian.coefficient == 1
    assert chain.images == (
        PuiseuxSeries(2, {(1, 0): 1}),
        PuiseuxSeries(2, {(1, 0): 1, (0, 1): 1}),
    )
    assert chain.contains(np.array([[0.5, 0.7], [0.5, 0.3]])).tolist() == [True, False]


def test_real_roots_give_shifted_bands(rng):
    # (x2 − x1)(x2 − 2x1)(x2 − 3x1)：三个互不相同的正实根
    target = make_poly(2, {(0, 3): 1, (1, 2): -6, (2, 1): 11, (3, 0): -6})
    roots = newton_puiseux(target)
    classes = classify_roots(roots)
    assert classes.positive == (mono((1,)), mono((1,), 2), mono((1,), 3))
    assert classes.negative == ()
    assert classes.imaginary == ()
    bands = shifted_bands(classes, 1)
    assert len(bands) == classes.band_count() == 2 * 3 + 2

    u = rng.uniform(0, 0.05, size=(4000, 1))
    fibre = rng.uniform(-1, 1, size=4000)
    hits = sum(b.contains_numpy(u, fibre).astype(int) for b in bands)
    assert np.mean(hits == 1) >= 0.99

    # 分带引擎的每块塔都落在唯一一条平移带里
    for tower in block2_decompose(None, roots, target):
        points = tower.chain.forward(interior_points(tower.chain, rng, 50, eps=0.01))
        inside = [bool(np.all(b.contains_numpy(points[:, :1], points[:, 1]))) for b in bands]
        assert sum(inside) == 1, tower.label


def test_root_classes_split_by_sign_and_imaginary_part():
    # (x2 + x1)(x2^2 + x1^2) x2
    target = make_poly(2, {(0, 4): 1, (1, 3): 1, (2, 2): 1, (3, 1): 1})
    classes = classify_roots(newton_puiseux(target), beta_last=1)
    assert classes.positive == ()
    assert classes.negative == (mono((1,), -1),)
    assert len(classes.imaginary) == 2
    assert classes.zero == 1
    assert len(shifted_bands(classes, 1)) == 4
