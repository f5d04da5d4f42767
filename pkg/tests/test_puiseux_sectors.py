# test_puiseux_sectors.py
from collections import Counter
from fractions import Fraction as Fr
import math

import numpy as np
import pytest

from algebra import IrrationalJetError, PuiseuxSeries
from puiseux import jet_curves, monomialize_bivariate, mu0_bivariate
from towers import coverage, fnc_ratio_within
from tests.conftest import make_poly

CUSP = {(0, 2): 1, (3, 0): -1}
# x3^2 + 2 x2^{2M} x3 + x1^{4N}（M = N = 1）的 Λ，除去常数
QUADRATIC_FAMILY_LAMBDA = {(4, 4): 1, (8, 0): -1}


def quadrant(lam, signs=(1, 1)):
    return monomialize_bivariate(make_poly(2, lam), quadrants=[signs])


def test_normal_crossings_needs_no_chart():
    regions = monomialize_bivariate(make_poly(2, {(1, 1): 1}))
    assert len(regions) == 4
    for region in regions:
        assert region.chain.transforms == ()
        assert region.fnc.exponent == (1, 1)


def test_cusp_band_layout():
    regions = quadrant(CUSP)
    assert Counter(r.region.kind for r in regions) == {"lower": 3, "distant": 1}
    exponents = sorted(r.fnc.exponent for r in regions)
    assert exponents == sorted([(Fr(6, 5), 0), (Fr(6, 5), 1), (Fr(6, 5), 1), (0, Fr(6, 5))])
    assert all(r.chain.is_coordinate_system() for r in regions)
    distant = next(r for r in regions if r.region.kind == "distant")
    assert distant.region.horn.ratio == Fr(125, 64)


def test_quadratic_family_charts():
    regions = quadrant(QUADRATIC_FAMILY_LAMBDA)
    assert len(regions) == 4
    lower = next(r for r in regions if r.region.kind == "lower" and r.region.horn.centre.is_zero())
    assert lower.chain.images == (
        PuiseuxSeries(2, {(Fr(1, 2), 0): 1}),
        PuiseuxSeries(2, {(Fr(1, 2), 1): Fr(1, 2)}),
    )
    assert lower.fnc.exponent == (4, 0)
    distant = next(r for r in regions if r.region.kind == "distant")
    assert distant.chain.images == (
        PuiseuxSeries(2, {(1, Fr(1, 2)): Fr(2, 3)}),
        PuiseuxSeries(2, {(0, Fr(1, 2)): 1}),
    )
    assert distant.fnc.exponent == (4, 4)
    # 相邻根 x2 = x1 两侧的子区域一直延伸到 x1/2 与 3x1/2
    children = {r.region.horn.sign: r for r in regions
                if r.region.kind == "lower" and not r.region.horn.centre.is_zero()}
    assert set(children) == {1, -1}
    assert all(r.fnc.exponent == (4, 1) for r in children.values())
    half = PuiseuxSeries(2, {(Fr(1, 2), 0): 1})
    assert children[1].chain.images == (half, half + PuiseuxSeries(2, {(Fr(1, 2), 1): Fr(1, 2)}))
    assert children[-1].chain.images == (half, half - PuiseuxSeries(2, {(Fr(1, 2), 1): Fr(1, 2)}))


def test_sectors_cover_quadrants(rng):
    lam = make_poly(2, CUSP)
    regions = monomialize_bivariate(lam)
    for signs in [(1, 1), (-1, 1), (1, -1), (-1, -1)]:
        points = rng.uniform(0, 0.05, size=(2000, 2)) * np.array(signs)
        result = coverage([r for r in regions if r.quadrant == signs], points)
        assert result.fraction >= 0.99
        assert result.overlap_fraction <= 0.01


def test_sector_fnc_matches_samples(rng):
    lam = make_poly(2, QUADRATIC_FAMILY_LAMBDA)
    for region in quadrant(QUADRATIC_FAMILY_LAMBDA):
        assert fnc_ratio_within(lam, region.region, rng)
        assert region.fnc.unit.lower_bound > 0


def test_irrational_band_constant_uses_power_coordinates(rng):
    # x2^4 = 4 x1^4 的根 √2·x1 不在 Q 中；在 w = x2^2 上根为 w = 2 x1^2
    lam = {(4, 4): 1, (8, 0): -4}
    regions = quadrant(lam)
    assert len(regions) == 4
    assert all(r.power == 2 for r in regions)
    assert all(r.chain.powers == (1, 2) for r in regions)
    assert all(r.chain.is_coordinate_system() for r in regions)
    assert all("x2^2" in " ".join(r.inequalities()) for r in regions)
    points = rng.uniform(0, 0.05, size=(2000, 2))
    result = coverage(regions, points)
    assert result.fraction >= 0.99
    assert result.overlap_fraction <= 0.01
    target = make_poly(2, lam)
    for region in regions:
        assert fnc_ratio_within(target, region.region, rng)


def test_irrational_band_constant_without_power_period():
    # x2 的指数没有公因子时无法换到 x2^k 上
    with pytest.raises(IrrationalJetError):
        monomialize_bivariate(make_poly(2, {(0, 3): 1, (2, 1): -2}), quadrants=[(1, 1)])


def test_jet_curves_table():
    table = jet_curves(make_poly(2, CUSP), samples=50)
    assert list(table.columns) == ["branch", "multiplicity", "reality", "x1", "x2_re", "x2_im"]
    assert len(table) == 100
    branch = table[table["branch"] == 0]
    assert np.allclose(np.abs(branch["x2_re"]), branch["x1"] ** 1.5)


def test_mu0_examples():
    result = mu0_bivariate(make_poly(2, {(0, 2): 1, (2, 0): -1}))
    assert result.mu0 == 1
    assert result.certificate.shift is None

    # (y − x)(y − x − x^2)
    shifted = mu0_bivariate(make_poly(2, {(0, 2): 1, (1, 1): -2, (2, 1): -1, (2, 0): 1, (3, 0): 1}))
    assert shifted.mu0 == Fr(3, 4)
    assert shifted.certificate.shift in {
        PuiseuxSeries(1, {(1,): 1}), PuiseuxSeries(1, {(1,): 1, (2,): 1})
    }

    assert mu0_bivariate(make_poly(2, CUSP)).mu0 == Fr(5, 6)


def test_mu0_of_unit_is_infinite():
    result = mu0_bivariate(make_poly(2, {(0, 0): 1, (1, 0): 1}))
    assert result.mu0 == math.inf
