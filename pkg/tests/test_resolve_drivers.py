# test_resolve_drivers.py
from fractions import Fraction as Fr
import json
import math

import pytest

from elimination import NeedsRotation
from newton import delta0_formula
from resolve import (
    INCONCLUSIVE, SUFFICIENT, CoordClassEntry, adapted_report, resolve_bivariate,
    resolve_trivariate, rho0_note
)
from tests.conftest import make_poly
from towers import coverage, fiber_points, fnc_ratio_within
from tests.test_newton_mep import cusp_pair_data


def test_cone_mu0_from_real_part_shift(cone):
    report = resolve_trivariate(cone)
    assert report.mu0 == 1
    assert len(report.orthants) == 4
    assert report.certificate.shift is not None
    assert report.certificate.provenance.startswith("Re(")
    assert report.certificate.recomputed == 1
    # r ≡ 0 坐标给出的是 3/2
    assert min(e.delta0 for e in report.entries if e.shift is None) == Fr(3, 2)


def test_linear_last_variable():
    report = resolve_trivariate(make_poly(3, {(0, 0, 1): 1}))
    assert report.mu0 == 1
    verdict = adapted_report(make_poly(3, {(0, 0, 1): 1}), report.certificate)
    assert verdict.verdict == SUFFICIENT


def test_quadratic_family_mu0():
    # x3^2 + 2 x2^2 x3 + x1^4
    f = make_poly(3, {(0, 0, 2): 1, (0, 2, 1): 2, (4, 0, 0): 1})
    report = resolve_trivariate(f, orthants=[(1, 1)])
    assert report.mu0 == 1
    assert report.diagnostics["per_orthant"] == {"++": "1"}


def test_nonvanishing_constant_gives_inf():
    report = resolve_trivariate(make_poly(3, {(0, 0, 0): 1, (1, 0, 0): 1}))
    assert report.mu0 == math.inf
    assert report.to_dict()["mu0"] == "inf"


def test_vanishing_axis_needs_rotation():
    # x1 x3 + x2^2 在 x3 轴上恒为零
    with pytest.raises(NeedsRotation) as info:
        resolve_trivariate(make_poly(3, {(1, 0, 1): 1, (0, 2, 0): 1}))
    assert info.value.exit_code == 1


def test_wrong_arity_is_rejected():
    with pytest.raises(ValueError):
        resolve_trivariate(make_poly(2, {(0, 2): 1, (1, 0): -1}))


def test_report_serializes_to_json(cone):
    data = resolve_trivariate(cone, orthants=[(1, 1)]).to_dict()
    text = json.dumps(data)
    assert '"mu0": "1"' in text
    assert data["oscillation"]["rho0"] is None
    assert data["certificate"]["mep"]


@pytest.mark.parametrize("terms, expected", [
    ({(0, 2): 1, (1, 1): -2, (2, 1): -1, (2, 0): 1, (3, 0): 1}, Fr(3, 4)),
    ({(0, 2): 1, (3, 0): -1}, Fr(5, 6)),
    ({(0, 1): 1}, Fr(1)),
])
def test_bivariate_mu0(terms, expected):
    report = resolve_bivariate(make_poly(2, terms))
    assert report.mu0 == expected
    assert report.certificate.delta0 == expected


def test_bivariate_shift_has_factored_data():
    # (y − x)(y − x − x^2)
    report = resolve_bivariate(make_poly(2, {(0, 2): 1, (1, 1): -2, (2, 1): -1, (2, 0): 1, (3, 0): 1}))
    shifted = [e for e in report.entries if e.factored is not None and e.shift is not None]
    assert shifted
    assert any(delta0_formula(e.factored).value == Fr(3, 4) for e in shifted)


def test_adapted_report_inconclusive_on_cusp_pair():
    entry = CoordClassEntry("cusp", (1, 1), None, None, "manual", Fr(5, 7), factored=cusp_pair_data())
    verdict = adapted_report(make_poly(3, {(0, 0, 1): 1}), entry)
    assert verdict.verdict == INCONCLUSIVE
    assert verdict.to_dict()["verdict"] == INCONCLUSIVE


def test_adapted_report_needs_factored_data():
    entry = CoordClassEntry("bare", (1,), None, None, "identity", Fr(1))
    with pytest.raises(ValueError):
        adapted_report(make_poly(2, {(0, 1): 1}), entry)


@pytest.mark.parametrize("delta0, rho0, caveat", [
    (math.inf, "inf", False),
    (Fr(5, 6), "5/6", False),
    (Fr(3), None, True),
    (Fr(2), "2", False),
])
def test_rho0_note(delta0, rho0, caveat):
    note = rho0_note(delta0)
    assert note["rho0"] == rho0
    assert (note["caveat"] is not None) == caveat


@pytest.mark.parametrize("m", [1, 2, 3])
@pytest.mark.parametrize("n", [1, 2, 3])
def test_quadratic_family_general_exponents(m, n):
    # x3^2 + 2 x2^(2n) x3 + x1^(4m)：δ0 = 1/2 + 1/(4n) + 1/(4m)
    f = make_poly(3, {(0, 0, 2): 1, (0, 2 * n, 1): 2, (4 * m, 0, 0): 1})
    report = resolve_trivariate(f, orthants=[(1, 1)])
    assert len(report.orthants[0].regions) == 4
    assert report.mu0 == Fr(1, 2) + Fr(1, 4 * n) + Fr(1, 4 * m)


@pytest.mark.parametrize("m, n", [(1, 1), (2, 1), (1, 3)])
def test_quadratic_family_unit_coefficient(m, n):
    # x3^2 + x2^(2n) x3 + x1^(4m)：带常数 √2 经 w = x2^(2n) 处理
    f = make_poly(3, {(0, 0, 2): 1, (0, 2 * n, 1): 1, (4 * m, 0, 0): 1})
    report = resolve_trivariate(f, orthants=[(1, 1)])
    assert len(report.orthants[0].regions) == 4
    assert report.mu0 == Fr(1, 2) + Fr(1, 4 * n) + Fr(1, 4 * m)


def _assert_towers_cover(fs, region, rng):
    assert region.towers
    points = fiber_points(region.lifted.chain, 2, rng, 4000, eps=0.05)
    result = coverage(region.towers, points)
    assert result.fraction >= 0.99
    for tower in region.towers:
        assert fnc_ratio_within(fs, tower, rng)


def test_cusp_pair_resolves_with_towers(rng):
    # (x3^2 − x1)(x3^3 − x2)
    f = make_poly(3, {(0, 0, 5): 1, (1, 0, 3): -1, (0, 1, 2): -1, (1, 1, 0): 1})
    report = resolve_trivariate(f, orthants=[(1, 1)], towers=True)
    regions = report.orthants[0].regions
    assert len(regions) >= 4
    assert 1 <= report.mu0 <= Fr(6, 5)
    # 下方区域上 x3^3 = y 的根首项系数是 ∛(1/2)，只保留数值首项
    numeric = [r for r in regions if any(root.value.tail is not None for root in r.lifted.roots)]
    assert numeric
    assert any([e.delta0 for e in r.entries if e.shift is None] == [Fr(6, 5)] for r in numeric)
    covered = [r for r in regions if r.towers]
    assert covered
    for region in covered:
        _assert_towers_cover(f, region, rng)
    skipped = [r for r in regions if not r.towers]
    assert all(any(n.startswith("towers skipped") for n in r.notes) for r in skipped)


def test_real_surd_pair_towers_use_square_fibre(rng):
    # x3^2 − 2 x1^2 的根 ±√2 x1 不在 Q(i) 上
    f = make_poly(3, {(0, 0, 2): 1, (2, 0, 0): -2})
    report = resolve_trivariate(f, orthants=[(1, 1)], towers=True)
    assert report.mu0 == 1
    for region in report.orthants[0].regions:
        assert region.lifted.real_surd_pair() is not None
        assert not any(n.startswith("towers skipped") for n in region.notes)
        assert any("+s" in t.label for t in region.towers)
        assert any("-s" in t.label for t in region.towers)
        _assert_towers_cover(f, region, rng)
