# test_newton_mep.py
from fractions import Fraction as Fr

import pytest

from algebra.exceptions import Incomparable
from newton import (
    FactoredRootData, MonotoneEdgePath, NewtonPolyhedron, RootGroup, adaptedness_check,
    delta0_formula, generalized_exponent, is_mep_defined, mep_from_factored, mep_slice,
    newton_distance_exponent, np_from_mep
)


def cusp_pair_data(with_leading=True):
    """(y3^2 − y1^{2/5})(y3^3 − y1^{3/5} y2) 的根数据"""
    leading_1 = (1, -1) if with_leading else None
    omega = complex(-0.5, 3 ** 0.5 / 2)
    leading_2 = (1, omega, omega.conjugate()) if with_leading else None
    return FactoredRootData(
        beta=(0, 0), beta_last=0,
        groups=(RootGroup((Fr(1, 5), 0), 2, leading_1), RootGroup((Fr(1, 5), Fr(1, 3)), 3, leading_2))
    )


def quadratic_family_data(m, n):
    mid = Fr(2 * m * n, m + n)
    return FactoredRootData(beta=(0, 0), beta_last=0,
                            groups=((( 0, mid), 1), ((4 * m, mid), 1)))


def vertex_points(path):
    return [tuple(p) for p in path.points]


def test_cusp_pair_path():
    path = mep_from_factored(cusp_pair_data())
    assert vertex_points(path) == [(0, 0, 5), (Fr(2, 5), 0, 3), (1, 1, 0)]


@pytest.mark.parametrize("m,n", [(1, 1), (2, 1), (3, 5)])
def test_quadratic_family_path_and_formula(m, n):
    data = quadratic_family_data(m, n)
    mid = Fr(2 * m * n, m + n)
    path = mep_from_factored(data)
    assert vertex_points(path) == [(0, 0, 2), (0, mid, 1), (4 * m, 2 * mid, 0)]
    expected = Fr(1, 2) + Fr(1, 4 * n) + Fr(1, 4 * m)
    assert delta0_formula(data).value == expected
    assert newton_distance_exponent(np_from_mep(path))[1] == expected


def test_single_root_group():
    data = FactoredRootData(beta=(0,), beta_last=0, groups=(((Fr(3, 2),), 1),))
    assert vertex_points(mep_from_factored(data)) == [(0, 1), (Fr(3, 2), 0)]


def test_single_simple_root_value():
    data = FactoredRootData(beta=(0, 0), beta_last=0, groups=(((1, 1), 1),))
    table = delta0_formula(data)
    assert table.value == 2
    assert newton_distance_exponent(np_from_mep(mep_from_factored(data)))[1] == 2


def test_tail_term_for_shifted_cone():
    # y3 (y3 + 2 sqrt(y1 (1 + y2^2)))
    data = FactoredRootData(beta=(0, 0), beta_last=1, groups=(((Fr(1, 2), 0), 1),))
    table = delta0_formula(data)
    assert table.value == 1
    assert [t.kind for t in table.achieving] == ["tail"]
    assert newton_distance_exponent(np_from_mep(mep_from_factored(data)))[1] == 1


def test_no_roots_reduces_to_max():
    data = FactoredRootData(beta=(1, 2), beta_last=1)
    assert delta0_formula(data).value == Fr(1, 2)


def test_cusp_pair_formula_and_ties():
    table = delta0_formula(cusp_pair_data())
    assert table.value == Fr(6, 5)
    assert table.edge_value(1, 1) == Fr(6, 5)
    assert {(t.edge, t.j) for t in table.achieving} == {(1, 1), (2, 1)}


def test_incomparable_groups_rejected():
    with pytest.raises(Incomparable):
        FactoredRootData(beta=(0, 0), beta_last=0, groups=(((1, 0), 1), ((0, 1), 1)))


def test_slices():
    path = mep_from_factored(cusp_pair_data())
    assert mep_slice(path, 3) == (Fr(2, 5), Fr(0))
    assert mep_slice(path, 7) == (Fr(0), Fr(0))
    assert mep_slice(path, Fr(3, 2)) == (Fr(7, 10), Fr(1, 2))
    short = MonotoneEdgePath((((0,), 2), ((1,), 1)))
    assert mep_slice(short, Fr(1, 2)) is None


def test_slice_dominated_by_generators(rng):
    path = mep_from_factored(quadratic_family_data(2, 3))
    np_ = np_from_mep(path)
    for _ in range(20):
        c = Fr(int(rng.integers(0, 200)), 100)
        mu = mep_slice(path, c)
        assert np_.contains(mu + (c,))
        smaller = tuple(x - Fr(1, 1000) for x in mu)
        if all(x >= 0 for x in smaller) and any(x > 0 for x in mu):
            assert not np_.contains(smaller + (c,))


def test_is_mep_defined(cone):
    from newton import np_from_terms
    assert is_mep_defined(np_from_terms(cone)) is None
    path = mep_from_factored(cusp_pair_data())
    recovered = is_mep_defined(np_from_mep(path))
    assert recovered == path


def test_formula_agrees_with_lp_on_random_data(rng):
    for _ in range(15):
        groups = []
        alpha = [Fr(0), Fr(0)]
        for _ in range(int(rng.integers(1, 4))):
            alpha = [a + Fr(int(rng.integers(0, 4)), int(rng.integers(1, 4))) for a in alpha]
            if all(a == 0 for a in alpha) or groups and tuple(alpha) == groups[-1][0]:
                alpha[0] += 1
            groups.append((tuple(alpha), int(rng.integers(1, 3))))
        data = FactoredRootData(
            beta=(int(rng.integers(0, 2)), int(rng.integers(0, 2))),
            beta_last=int(rng.integers(0, 2)),
            groups=tuple(groups)
        )
        np_ = np_from_mep(mep_from_factored(data))
        assert delta0_formula(data).value == newton_distance_exponent(np_)[1]
        assert generalized_exponent(np_) == newton_distance_exponent(np_)[1]


def test_adaptedness_reproduces_left_edge_failure():
    report = adaptedness_check(cusp_pair_data())
    first, second = report.edges
    assert report.delta0 == Fr(6, 5)
    assert first.kappa == 1 and first.position == "left"
    assert not first.kappa_vs_delta0
    assert second.main
    assert not report.adapted


def test_adaptedness_single_root():
    data = FactoredRootData(beta=(0,), beta_last=0, groups=(RootGroup((Fr(1, 2),), 1, (1,)),))
    report = adaptedness_check(data)
    assert report.edges[0].kappa == 1
    assert report.edges[0].bound == Fr(1, 3)


def test_kappa_counts_shared_leading_terms():
    data = FactoredRootData(beta=(0,), beta_last=0, groups=(RootGroup((Fr(1),), 2, (1, 2)),))
    assert adaptedness_check(data).edges[0].kappa == 1
    shared = FactoredRootData(beta=(0,), beta_last=0, groups=(RootGroup((Fr(1),), 2, (1, 1)),))
    assert adaptedness_check(shared).edges[0].kappa == 2


def test_missing_coefficients():
    with pytest.raises(ValueError):
        adaptedness_check(cusp_pair_data(with_leading=False))
