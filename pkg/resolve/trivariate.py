# trivariate.py
"""
三元驱动：每个卦限上 Λ 单项化 → 区域上提升根 → 实部细分 → 枚举平移坐标并用闭式计算 δ0
μ0 取所有卦限、所有区域、所有平移坐标上 δ0 的最小值
"""
from dataclasses import replace
from fractions import Fraction
import logging
import math
from typing import Dict, List, Optional, Sequence, Tuple

from algebra.exceptions import Incomparable, IrrationalJetError, NotFNC, ToolkitError, TruncationExhausted
from algebra.exponents import total_degree, zero_exponent
from algebra.polynomial import MultiPoly
from algebra.scalars import as_gauss
from algebra.series import PuiseuxSeries
from algebra.units import poly_compose
from config import TRUNCATION_CONFIG
from elimination.exceptions import NeedsRotation
from elimination.lambda_data import lambda_construct, random_rotation
from elimination.resultant import PolyInLast
from newton.mep import delta0_formula
from newton.polyhedron import Extended, format_extended, newton_distance_exponent, np_from_terms
from puiseux.newton_puiseux import InexactTail, PuiseuxRoot, Reality
from puiseux.sectors import QUADRANTS, SectorRegion, monomialize_bivariate
from towers.block2 import block2_decompose
from towers.exceptions import NeedsRefinement
from towers.horns import TowerRegion
from towers.transforms import CoordChain, Shift, UnitScaling, _pad, power_transform
from .exceptions import ResolutionError, Unresolved
from .lifting import LiftedRoot, RegionRoots, SurdSeries, lift_roots
from .refine import refine_real_parts
from .report import (
    CoordClassEntry, OrthantReport, RegionReport, ResolutionReport, best_entry
)

logger = logging.getLogger(__name__)


def _extend(series: PuiseuxSeries, nvars: int) -> PuiseuxSeries:
    """补零指数，把 y 的级数看作 (y, y_{n+1}) 的级数"""
    pad = (Fraction(0),) * (nvars - series.nvars)
    return PuiseuxSeries(nvars, {e + pad: c for e, c in series.terms.items()},
                         order=series.order, eps=series.eps)


def recompute_delta0(f: MultiPoly, lifted: RegionRoots, shift: Optional[SurdSeries],
                     order: Fraction) -> Optional[Extended]:
    """
    从头展开 F∘Φ 并用 LP 计算 δ0
    平移含根式或路径顶点超出截断阶时返回 None
    """
    if shift is not None and not shift.is_exact():
        return None
    factored = lifted.factored(shift)
    vertices = [factored.vertex(ell) for ell in range(len(factored.groups) + 1)]
    top = max(total_degree(a) + b for a, b in vertices)
    if top > order:
        return None
    n = f.nvars
    last = PuiseuxSeries.variable(n, n - 1)
    if shift is not None:
        last = last + _extend(shift.exact_series(), n)
    images = [_extend(img, n) for img in lifted.chain.images] + [last]
    composed = poly_compose(f.deflate(lifted.chain.powers + (1,)), images, order)
    if composed.is_zero() or (composed.order is not None and top > composed.order):
        return None
    return newton_distance_exponent(np_from_terms(composed))[1]


def coordinate_class(f: MultiPoly, lifted: RegionRoots, signs: Tuple[int, ...],
                     order: Fraction, certify: bool = True) -> List[CoordClassEntry]:
    """r ≡ 0 以及按各根实部平移的坐标，逐个计算 δ0"""
    candidates: List[Tuple[Optional[SurdSeries], str]] = [(None, "r = 0")]
    for index, shift in enumerate(lifted.real_shifts(), start=1):
        candidates.append((shift, f"Re(r_{index})"))
    entries = []
    for shift, provenance in candidates:
        factored = lifted.factored(shift)
        table = delta0_formula(factored)
        recomputed = recompute_delta0(f, lifted, shift, order) if certify else None
        entries.append(CoordClassEntry(
            label=lifted.label,
            orthant=signs,
            chain=lifted.chain,
            shift=shift,
            provenance=provenance,
            delta0=table.value,
            factored=factored,
            table=table,
            recomputed=recomputed,
        ))
        logger.debug(f"{lifted.label} [{provenance}]: δ0 = {format_extended(table.value)}")
    return entries


def _square_fibre_root(root: LiftedRoot, centre: PuiseuxSeries, kappa: int) -> PuiseuxRoot:
    """
    根 r 在纤维 s = (x − c)² 上的像
    κ(r − c) 的实部为正时取 (r − c)²，否则取 −|r − c|²，后者只提供尺度
    """
    value = root.value
    m = centre.nvars
    if value.is_exact():
        d = value.exact_series() - centre
        if d.is_zero():
            return PuiseuxRoot(PuiseuxSeries(m, {}), root.multiplicity, zero_exponent(m), as_gauss(0), Reality.REAL)
        coeff, _, _ = d.split_fnc()
        series = d * d
        if coeff.is_real() and kappa * coeff.re < 0:
            series = -series
        tail = None
    else:
        if not value.rational.is_real():
            raise IrrationalJetError(f"根含复二次根式 √({value.radicand})，实部不在 Q 中")
        d = value.rational - centre
        # (d + k√a·g)² = d² + a·g² + 2k√a·d·g，a < 0
        imaginary = (value.spread * value.spread).scale(value.radicand)
        if d.is_zero():
            series, tail = imaginary, None
        elif kappa * d.split_fnc()[0].re > 0:
            series = d * d + imaginary
            gamma, coeff, _ = SurdSeries(PuiseuxSeries(m, {}), value.radicand, value.k,
                                         (d * value.spread).scale(2)).leading()
            tail = InexactTail(gamma, complex(coeff))
        else:
            series, tail = -(d * d) + imaginary, None
    if series.is_zero():
        gamma, coeff = tail.exponent, tail.coefficient
    else:
        coeff, gamma, _ = series.split_fnc()
    reality = Reality.REAL if tail is None and series.is_real() else Reality.COMPLEX_SINGLE
    return PuiseuxRoot(series, root.multiplicity, gamma, coeff, reality, tail=tail)


def _square_fibre_towers(fs: MultiPoly, lifted: RegionRoots, pair, order: Fraction) -> List[TowerRegion]:
    """
    一对实二次根式根 c ± √D：在 κ(x − c) > 0 的两侧分别用 x = c + κ s^{1/2}，
    s 方向上的根 s = D 是精确的，其余根只给出尺度
    """
    centre, square, multiplicity = pair
    n = fs.nvars
    last = n - 1
    coeff, gamma, _ = square.split_fnc()
    others = [r for r in lifted.roots if r.is_exact() or not r.value.is_real()]
    if lifted.beta_last:
        others.append(LiftedRoot(SurdSeries(PuiseuxSeries(n - 1, {})), lifted.beta_last, True))
    towers: List[TowerRegion] = []
    for kappa in (1, -1):
        roots = [PuiseuxRoot(square, multiplicity, gamma, coeff, Reality.REAL)]
        roots.extend(_square_fibre_root(r, centre, kappa) for r in others)
        fibre = [] if centre.is_zero() else [Shift(last, _pad(centre, n))]
        if kappa < 0:
            fibre.append(UnitScaling(last, PuiseuxSeries.constant(n, -1)))
        fibre.append(power_transform((Fraction(1),) * last + (Fraction(1, 2),)))
        side = "+" if kappa > 0 else "-"
        towers.extend(block2_decompose(lifted.chain, roots, fs, 0, order, label=f"{lifted.label}{side}s",
                                       fibre=fibre, signs=(1,)))
    return towers


def _towers(fs: MultiPoly, lifted: RegionRoots, order: Fraction) -> Tuple[tuple, Tuple[str, ...]]:
    pair = lifted.real_surd_pair()
    try:
        if pair is not None:
            logger.info(f"{lifted.label}: 实二次根式根对，纤维改用 s = (x - c)^2")
            towers = _square_fibre_towers(fs, lifted, pair, order)
        else:
            towers = block2_decompose(lifted.chain, lifted.puiseux_roots(), fs, lifted.beta_last, order,
                                      label=lifted.label)
    except (IrrationalJetError, NeedsRefinement, TruncationExhausted, NotFNC, Incomparable) as e:
        logger.warning(f"{lifted.label}: 塔式分解未完成: {e}")
        return (), (f"towers skipped: {e}",)
    return tuple(towers), ()


def _orthant_inequalities(signs: Tuple[int, int]) -> Tuple[str, ...]:
    return tuple(f"0 < {'x' if s > 0 else '(-x'}{j + 1}{'' if s > 0 else ')'}" for j, s in enumerate(signs))


def _chart_names(lifted: RegionRoots, signs: Tuple[int, int]) -> List[str]:
    """恒等坐标链直接用（带符号的）原变量名，否则用图坐标 y"""
    if lifted.chain.transforms:
        return [f"y{j + 1}" for j in range(lifted.nvars)]
    return [f"x{j + 1}" if s > 0 else f"(-x{j + 1})" for j, s in enumerate(signs)]


def _orthant(f: MultiPoly, signs: Tuple[int, int], order: Fraction, towers: bool) -> OrthantReport:
    fs = f.flip_signs(tuple(signs) + (1,))
    data = lambda_construct(fs)
    lam = data.base_lambda()
    tag = "".join("+" if s > 0 else "-" for s in signs)
    regions: List[RegionReport] = []
    if lam.constant_term().is_zero():
        sectors: Sequence = monomialize_bivariate(lam, order, quadrants=[(1, 1)], period=fs.variable_period(1))
    else:
        # Λ(0) ≠ 0：整个卦限就是一块区域
        sectors = [None]
    for index, sector in enumerate(sectors):
        if isinstance(sector, SectorRegion):
            lifted = replace(lift_roots(fs, sector, order), label=f"{tag}{sector.label}",
                             inequalities=tuple(sector.inequalities()))
        else:
            lifted = replace(lift_roots(fs, CoordChain.identity(2), order), label=f"{tag}V{index}",
                             inequalities=_orthant_inequalities(signs))
        for refined in refine_real_parts(fs, lifted, order, names=_chart_names(lifted, signs)):
            entries = coordinate_class(fs, refined, tuple(signs), order)
            tower_list, notes = _towers(fs, refined, order) if towers else ((), ())
            regions.append(RegionReport(refined, tuple(entries), refined.inequalities, tower_list,
                                        refined.notes + notes))
    logger.info(f"卦限 {tag}: {len(regions)} 块区域")
    return OrthantReport(tuple(signs), tuple(regions))


def _orthant_with_retry(f: MultiPoly, signs: Tuple[int, int], order: Fraction, towers: bool) -> OrthantReport:
    """截断阶内分不开根时把阶加倍重试，直到 max_order"""
    current = order
    while True:
        try:
            return _orthant(f, signs, current, towers)
        except (Unresolved, TruncationExhausted) as e:
            if current * 2 > TRUNCATION_CONFIG["max_order"]:
                raise
            logger.warning(f"卦限 {signs}: 截断阶 {current} 不足（{e}），加倍重试")
            current *= 2


def resolve_trivariate(
    f: MultiPoly,
    order: Optional[Fraction] = None,
    orthants: Optional[Sequence[Tuple[int, int]]] = None,
    towers: bool = False,
    rotate: Optional[int] = None
) -> ResolutionReport:
    """
    三元多项式的分解与 μ0
    F(0, 0, x3) ≡ 0 时需要 rotate 指定随机线性变换的种子，否则抛出 NeedsRotation
    """
    if f.nvars != 3:
        raise ValueError(f"resolve_trivariate 需要三元多项式，收到 {f.nvars} 元")
    if f.is_zero():
        raise ValueError("零多项式没有可积性指数")
    order = Fraction(order) if order is not None else TRUNCATION_CONFIG["default_order"]
    diagnostics: Dict = {"truncation_order": str(order), "lifting": "quadratic formula or Newton-Puiseux"}
    source = f.format()
    if not f.constant_term().is_zero():
        entry = CoordClassEntry("identity", (1, 1), None, None, "F(0) != 0", math.inf)
        return ResolutionReport(source, 3, (entry,), math.inf, entry, (), diagnostics)
    if PolyInLast(f).base_restriction().is_zero():
        if rotate is None:
            logger.error("F(0, 0, x3) 恒为零且未指定旋转种子")
            raise NeedsRotation()
        f, shears = random_rotation(f, rotate)
        diagnostics["rotation"] = {"seed": rotate, "shears": [str(q) for q in shears]}

    reports: List[OrthantReport] = []
    for signs in orthants or QUADRANTS:
        try:
            reports.append(_orthant_with_retry(f, tuple(signs), order, towers))
        except NeedsRefinement as e:
            logger.error(f"卦限 {signs}: {e}")
            raise Unresolved(f"卦限 {list(signs)} 在截断阶内无法完成分解: {e}", e.details) from e
        except ToolkitError:
            raise
        except (ArithmeticError, RuntimeError) as e:
            logger.error(f"卦限 {signs} 分解失败: {e}")
            raise ResolutionError(f"卦限 {list(signs)} 分解失败", e) from e

    entries = [e for o in reports for r in o.regions for e in r.entries]
    certificate = best_entry(entries)
    mu0 = certificate.delta0
    diagnostics["per_orthant"] = {"".join("+" if s > 0 else "-" for s in o.signs): format_extended(o.mu0)
                                  for o in reports}
    diagnostics["certificate_recomputed"] = certificate.recomputed is not None
    if certificate.recomputed is not None and certificate.recomputed != mu0:
        logger.warning(f"证书坐标重新计算的 δ0 = {format_extended(certificate.recomputed)} 与闭式结果不一致")
    logger.info(f"μ0 = {format_extended(mu0)}，证书: {certificate.describe()}")
    return ResolutionReport(source, 3, tuple(entries), mu0, certificate, tuple(reports), diagnostics)
