# refine.py
import logging
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from algebra.exceptions import IrrationalJetError, TruncationExhausted
from algebra.exponents import lattice_denominator
from algebra.polynomial import MultiPoly
from algebra.series import PuiseuxSeries
from puiseux.sectors import monomialize_bivariate
from towers.exceptions import IllegalComposition
from towers.transforms import CoordChain, compose_chains, normalize_jacobian, power_transform
from .exceptions import Unresolved
from .lifting import RegionRoots, SurdSeries, lift_roots

logger = logging.getLogger(__name__)


def labelled_real_part_values(lifted: RegionRoots) -> List[Tuple[str, SurdSeries]]:
    """{Re r_i}、{r_i − Re r_j}、{Re r_i − Re r_j} 中的非零元素，连同其记号"""
    values: List[Tuple[str, SurdSeries]] = []
    roots = [r.value for r in lifted.roots]
    reals = [r.real_part() for r in roots]
    values.extend((f"Re(r{i + 1})", re) for i, re in enumerate(reals))
    for i, r in enumerate(roots):
        for j, re in enumerate(reals):
            values.append((f"r{i + 1} - Re(r{j + 1})", r - re))
            if i < j:
                values.append((f"Re(r{i + 1}) - Re(r{j + 1})", reals[i] - re))
    return [(name, v) for name, v in values if not v.is_zero()]


def real_part_values(lifted: RegionRoots) -> List[SurdSeries]:
    return [v for _, v in labelled_real_part_values(lifted)]


def _failing(lifted: RegionRoots) -> List[Tuple[str, SurdSeries]]:
    try:
        values = labelled_real_part_values(lifted)
    except IrrationalJetError as e:
        raise Unresolved(f"区域 {lifted.label} 上根的实部无法精确表示: {e}", {"region": lifted.label}) from e
    return [(name, v) for name, v in values if not v.is_fnc()]


def failing_values(lifted: RegionRoots) -> List[SurdSeries]:
    return [v for _, v in _failing(lifted)]


def describe_failures(lifted: RegionRoots, names: Optional[Sequence[str]] = None) -> List[str]:
    """非 FNC 的实部数据，写成 "not FNC: Re(r1) - Re(r2) = ..." """
    return [f"not FNC: {name} = {value.format(names)}" for name, value in _failing(lifted)]


def _obstruction(bad: Sequence[SurdSeries], label: str) -> PuiseuxSeries:
    """非 FNC 值的乘积；复值取 v·conj(v)，只差符号的值只计一次"""
    seen: List[PuiseuxSeries] = []
    for value in bad:
        if not value.is_exact():
            raise Unresolved(f"区域 {label} 上含二次根式的实部差不是 FNC", {"value": value.format()})
        series = value.exact_series()
        if not series.is_real():
            series = series * series.conjugate()
        if series in seen or -series in seen:
            continue
        seen.append(series)
    product = seen[0]
    for series in seen[1:]:
        product = product * series
    return product


def _as_polynomial(series: PuiseuxSeries) -> MultiPoly:
    return MultiPoly(series.nvars, {tuple(int(x) for x in e): c for e, c in series.terms.items()})


def chart_names(lifted: RegionRoots) -> List[str]:
    """区域坐标的记号：坐标链为恒等时沿用原坐标名"""
    prefix = "x" if not lifted.chain.transforms else "y"
    return [f"{prefix}{j + 1}" for j in range(lifted.nvars)]


def refine_real_parts(f: MultiPoly, lifted: RegionRoots, order: Optional[Fraction] = None,
                      names: Optional[Sequence[str]] = None) -> List[RegionRoots]:
    """
    细分底区域，使根的实部、根与实部之差、实部之差都恒为零或 FNC
    对非 FNC 值的乘积做格对齐后单项化，再在每块子区域上重新提升根
    子区域的不等式为父区域的不等式加上细分扇形在父区域坐标 names 中的不等式
    """
    order = Fraction(order) if order is not None else lifted.order
    names = list(names or chart_names(lifted))
    bad = _failing(lifted)
    if not bad:
        return [lifted]
    flagged = tuple(f"not FNC: {name} = {value.format(names)}" for name, value in bad)
    for text in flagged:
        logger.info(f"{lifted.label}: {text}")
    obstruction = _obstruction([v for _, v in bad], lifted.label)
    s = lattice_denominator(obstruction.terms.keys())
    lattified, s = obstruction.lattify(s)
    polynomial = _as_polynomial(lattified)
    logger.info(f"{lifted.label}: {len(bad)} 个实部数据不是 FNC，单项化 {polynomial.format(['z1', 'z2'])}")
    try:
        sectors = monomialize_bivariate(polynomial, order, quadrants=[(1, 1)], period=1)
    except TruncationExhausted as e:
        logger.error(f"{lifted.label}: 实部细分失败: {e}")
        raise Unresolved(f"区域 {lifted.label} 的实部细分在截断阶内失败", {"region": lifted.label}) from e

    # 细分扇形的坐标 z 满足 y = z^s
    sector_names = names if s == 1 else [f"{n}^(1/{s})" for n in names]
    refined: List[RegionRoots] = []
    for sector in sectors:
        label = f"{lifted.label}/{sector.label}"
        try:
            inner = sector.chain
            if s > 1:
                power = CoordChain.from_transform(power_transform((s,) * lifted.nvars))
                inner = normalize_jacobian(compose_chains(power, sector.chain, order), order)
            total = compose_chains(lifted.chain, inner, order)
        except IllegalComposition as e:
            logger.error(f"{label}: 细分坐标复合失败: {e}")
            raise Unresolved(f"区域 {label} 的细分坐标无法复合", {"region": label}) from e
        relifted = lift_roots(f, total, order)
        region = RegionRoots(label, total, relifted.beta_last, relifted.lead, relifted.beta,
                             relifted.roots, relifted.absorbed, relifted.method, order,
                             inequalities=lifted.inequalities + tuple(sector.inequalities(sector_names)),
                             notes=lifted.notes + flagged)
        remaining = failing_values(region)
        if remaining:
            raise Unresolved(f"区域 {label} 细分后实部数据仍不是 FNC",
                             {"region": label, "values": [v.format() for v in remaining]})
        refined.append(region)
    logger.info(f"{lifted.label}: 实部细分得到 {len(refined)} 块子区域")
    return refined
