# units.py
from dataclasses import dataclass, field
from fractions import Fraction
import logging
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from config import TRUNCATION_CONFIG, UNIT_CONFIG
from .exceptions import BranchCutError, NotAUnit, UncertifiableUnit, VariableMismatch
from .exponents import Exponent, add, as_exponent, scale, total_degree, zero_exponent
from .scalars import (
    GaussRational, ONE, ZERO, as_gauss, gauss_rational_power, modulus_bounds, root_bounds
)
from .series import PuiseuxSeries, _min_order

logger = logging.getLogger(__name__)

SeriesLike = Union[PuiseuxSeries, "UnitSeries"]


@dataclass(frozen=True)
class UnitSeries:
    """
    经过认证的单位：在 (0, eps)^自由变量 × (0, 1)^fixed 上 |u| >= lower_bound
    """
    series: PuiseuxSeries
    lower_bound: Fraction
    eps: Fraction
    fixed: FrozenSet[int] = frozenset()
    shrinks: int = 0

    @property
    def constant(self) -> GaussRational:
        return self.series.constant_term()

    @property
    def nvars(self) -> int:
        return self.series.nvars

    def evaluate_numpy(self, points: np.ndarray) -> np.ndarray:
        return self.series.evaluate_numpy(points)

    def domain_upper(self) -> np.ndarray:
        """各变量认证区间的右端点"""
        return np.array([1.0 if j in self.fixed else float(self.eps) for j in range(self.nvars)])


@dataclass(frozen=True)
class FNCForm:
    """分数正规交叉形式 unit(y) * y^γ（首项常数放在 unit 中）"""
    unit: UnitSeries
    exponent: Exponent

    @property
    def nvars(self) -> int:
        return len(self.exponent)

    @property
    def coefficient(self) -> GaussRational:
        return self.unit.constant

    def is_monomial(self) -> bool:
        return len(self.unit.series.terms) == 1

    def series(self) -> PuiseuxSeries:
        return self.unit.series.multiply_monomial(self.exponent)

    def __mul__(self, other: "FNCForm") -> "FNCForm":
        if not isinstance(other, FNCForm):
            return NotImplemented
        if self.nvars != other.nvars:
            raise VariableMismatch(self.nvars, other.nvars)
        product = self.unit.series * other.unit.series
        unit = UnitSeries(
            series=product,
            lower_bound=self.unit.lower_bound * other.unit.lower_bound,
            eps=min(self.unit.eps, other.unit.eps),
            fixed=self.unit.fixed & other.unit.fixed,
            shrinks=max(self.unit.shrinks, other.unit.shrinks)
        )
        return FNCForm(unit=unit, exponent=add(self.exponent, other.exponent))

    def power(self, q, order=None) -> "FNCForm":
        """有理幂：首项常数的幂必须仍为高斯有理数"""
        q = Fraction(q)
        powered = power_series(self.unit.series, q, order)
        unit = unit_certify(powered, eps=self.unit.eps, fixed=self.unit.fixed)
        return FNCForm(unit=unit, exponent=scale(self.exponent, q))

    def evaluate_numpy(self, points: np.ndarray) -> np.ndarray:
        points = np.atleast_2d(np.asarray(points, dtype=float))
        monomial = np.ones(points.shape[0])
        for j, e in enumerate(self.exponent):
            if e:
                monomial = monomial * np.power(points[:, j], float(e))
        return self.unit.evaluate_numpy(points) * monomial

    def format(self, names: Optional[Sequence[str]] = None) -> str:
        names = names or [f"y{j + 1}" for j in range(self.nvars)]
        factors = [f"{n}^{e}" if e != 1 else n for n, e in zip(names, self.exponent) if e != 0]
        head = "*".join(factors) if factors else "1"
        return f"({self.unit.series.format(names)}) * {head}"


# ---------------------------------------------------------------------------
# 单位认证
# ---------------------------------------------------------------------------

def _free_degree(exp: Sequence[Fraction], fixed: FrozenSet[int]) -> Fraction:
    return sum((Fraction(x) for j, x in enumerate(exp) if j not in fixed), Fraction(0))


def _coarse_bound(series: PuiseuxSeries, eps: Fraction, fixed: FrozenSet[int]) -> Fraction:
    """|a0|_下界 − Σ|a_κ|_上界 · ζ^{s·deg}，ζ 为 eps^{1/s} 的有理上界"""
    lattice = series.lattice
    zeta = root_bounds(eps, lattice)[1]
    zero = zero_exponent(series.nvars)
    bound = modulus_bounds(series.constant_term())[0]
    for exp, coeff in series.terms.items():
        if exp == zero:
            continue
        steps = int(_free_degree(exp, fixed) * lattice)
        bound -= modulus_bounds(coeff)[1] * zeta ** steps
    return bound


def _part_interval(terms: List[Tuple[Tuple[int, ...], Fraction]], lo: List[Fraction], hi: List[Fraction]):
    low = Fraction(0)
    high = Fraction(0)
    for exp, coeff in terms:
        m_lo = Fraction(1)
        m_hi = Fraction(1)
        for j, k in enumerate(exp):
            if k:
                m_lo *= lo[j] ** k
                m_hi *= hi[j] ** k
        if coeff >= 0:
            low += coeff * m_lo
            high += coeff * m_hi
        else:
            low += coeff * m_hi
            high += coeff * m_lo
    return low, high


def _interval_bound(series: PuiseuxSeries, eps: Fraction, fixed: FrozenSet[int]) -> Optional[Fraction]:
    """
    在格坐标 z = y^{1/s} 的盒子上对实部或虚部做区间估计，自适应二分
    实部（或虚部）在每个子盒上都不变号时返回其绝对值下界
    """
    lattice = series.lattice
    zeta = root_bounds(eps, lattice)[1]
    max_depth = UNIT_CONFIG["subdivision_depth"]
    budget = 1 << max_depth
    for part in (series.real_part(), series.imag_part()):
        if part.constant_term().is_zero():
            continue
        terms = [(tuple(int(x * lattice) for x in exp), c.re) for exp, c in part.terms.items()]
        stack = [([Fraction(0)] * series.nvars,
                  [Fraction(1) if j in fixed else zeta for j in range(series.nvars)], 0)]
        best: Optional[Fraction] = None
        visited = 0
        failed = False
        while stack:
            lo, hi, depth = stack.pop()
            visited += 1
            low, high = _part_interval(terms, lo, hi)
            if low > 0 or high < 0:
                gap = low if low > 0 else -high
                best = gap if best is None else min(best, gap)
                continue
            if depth >= max_depth or visited > budget:
                failed = True
                break
            widths = [h - l for l, h in zip(lo, hi)]
            axis = widths.index(max(widths))
            mid = (lo[axis] + hi[axis]) / 2
            left_hi = list(hi)
            left_hi[axis] = mid
            right_lo = list(lo)
            right_lo[axis] = mid
            stack.append((lo, left_hi, depth + 1))
            stack.append((right_lo, hi, depth + 1))
        if not failed and best is not None:
            return best
    return None


def unit_certify(
    series: PuiseuxSeries,
    eps: Optional[Fraction] = None,
    fixed: Iterable[int] = (),
    max_shrinks: Optional[int] = None
) -> UnitSeries:
    """
    分级认证单位：
    1. 系数和粗估 |a0| − Σ|a_κ| ε^{deg κ}
    2. 实部/虚部区间估计 + 自适应细分
    3. ε 折半后重试
    """
    if series.constant_term().is_zero():
        raise NotAUnit(f"常数项为零，不是单位: {series.format()}")
    fixed = frozenset(fixed)
    eps = Fraction(eps) if eps is not None else UNIT_CONFIG["default_eps"]
    max_shrinks = UNIT_CONFIG["max_shrinks"] if max_shrinks is None else max_shrinks
    for shrink in range(max_shrinks + 1):
        bound = _coarse_bound(series, eps, fixed)
        if bound <= 0:
            refined = _interval_bound(series, eps, fixed)
            bound = refined if refined is not None else bound
        if bound > 0:
            if shrink:
                logger.debug(f"单位认证在 ε={eps} 处成功（折半 {shrink} 次）")
            return UnitSeries(series=series.with_eps(eps), lower_bound=bound, eps=eps,
                              fixed=fixed, shrinks=shrink)
        eps = eps / 2
    logger.warning(f"单位认证失败: {series.format()}")
    raise UncertifiableUnit(f"折半 {max_shrinks} 次后仍无法认证单位", eps)


def fnc_certify(
    series: PuiseuxSeries,
    eps: Optional[Fraction] = None,
    fixed: Iterable[int] = ()
) -> FNCForm:
    """把级数写成 unit * y^γ 并认证 unit"""
    coeff, gamma, normalized = series.split_fnc()
    unit = unit_certify(normalized.scale(coeff), eps=eps, fixed=fixed)
    return FNCForm(unit=unit, exponent=gamma)


# ---------------------------------------------------------------------------
# 二项式级数：逆、平方根、有理幂
# ---------------------------------------------------------------------------

def _resolve_order(series: PuiseuxSeries, order) -> Fraction:
    if order is not None:
        target = Fraction(order)
        return target if series.order is None else min(target, series.order)
    if series.order is not None:
        return series.order
    return TRUNCATION_CONFIG["default_order"]


def _binomial(q: Fraction, k: int) -> Fraction:
    value = Fraction(1)
    for i in range(k):
        value = value * (q - i) / (i + 1)
    return value


def power_series(series: PuiseuxSeries, q, order=None) -> PuiseuxSeries:
    """
    单位的有理幂 a0^q (1 + h)^q（主值分支，常数的幂须为高斯有理数）
    不做认证，供内部构造使用
    """
    q = Fraction(q)
    a0 = series.constant_term()
    if a0.is_zero():
        raise NotAUnit("常数项为零，无法取幂")
    if q.denominator == 1 and q >= 0 and series.order is None and order is None:
        return series ** int(q)
    target = _resolve_order(series, order)
    head = gauss_rational_power(a0, q)
    h = (series - a0).scale(ONE / a0).truncate(target)
    result = PuiseuxSeries.constant(series.nvars, 1, order=target)
    if not h.is_zero():
        steps = int(target / h.min_degree())
        h_power = PuiseuxSeries.constant(series.nvars, 1, order=target)
        for k in range(1, steps + 1):
            h_power = h_power * h
            if h_power.is_zero():
                break
            result = result + h_power.scale(_binomial(q, k))
    return result.scale(head).with_eps(series.eps)


def invert_series(series: PuiseuxSeries, order=None) -> PuiseuxSeries:
    return power_series(series, Fraction(-1), order)


def _as_series(value: SeriesLike) -> Tuple[PuiseuxSeries, Optional[UnitSeries]]:
    if isinstance(value, UnitSeries):
        return value.series, value
    return value, None


def series_inverse(u: SeriesLike, order=None) -> UnitSeries:
    """u · inverse = 1 + O(degree > K)，结果重新认证"""
    series, unit = _as_series(u)
    inverse = invert_series(series, order)
    return unit_certify(inverse, eps=unit.eps if unit else None, fixed=unit.fixed if unit else ())


def series_sqrt(u: SeriesLike, order=None) -> UnitSeries:
    """主值平方根；常数项为零或落在负实轴上时报错"""
    series, unit = _as_series(u)
    a0 = series.constant_term()
    if a0.is_zero():
        raise NotAUnit("常数项为零，无法开平方")
    if a0.is_real() and a0.re < 0:
        raise BranchCutError(f"常数项 {a0} 落在平方根割线上")
    root = power_series(series, Fraction(1, 2), order)
    return unit_certify(root, eps=unit.eps if unit else None, fixed=unit.fixed if unit else ())


def series_power(u: SeriesLike, q, order=None) -> UnitSeries:
    series, unit = _as_series(u)
    powered = power_series(series, q, order)
    return unit_certify(powered, eps=unit.eps if unit else None, fixed=unit.fixed if unit else ())


# ---------------------------------------------------------------------------
# 复合
# ---------------------------------------------------------------------------

def fnc_power(series: PuiseuxSeries, q, order=None) -> PuiseuxSeries:
    """FNC 级数 c y^γ u 的有理幂 c^q y^{qγ} u^q"""
    q = Fraction(q)
    if q.denominator == 1 and q >= 0:
        return series ** int(q) if order is None else series.truncate(order) ** int(q)
    coeff, gamma, unit = series.split_fnc()
    # 单项式的幂保持精确
    powered = unit if unit.is_exact() and len(unit.terms) == 1 else power_series(unit, q, order)
    return powered.multiply_monomial(scale(gamma, q), gauss_rational_power(coeff, q))


def series_compose(
    outer: PuiseuxSeries,
    images: Sequence[PuiseuxSeries],
    order=None
) -> PuiseuxSeries:
    """
    把 images[j] 代入 outer 的第 j 个变量
    整数指数直接做幂；分数指数要求对应的像是 FNC（常数的分数幂须为高斯有理数）
    截断阶：outer 的阶按像的最小次数缩放，再与各像的阶取最小
    输入全部精确时结果保持精确；order 只在非单项式单位取分数幂时才用来截断
    """
    if len(images) != outer.nvars:
        raise VariableMismatch(len(images), outer.nvars)
    target_vars = images[0].nvars if images else 0
    bounds = []
    if outer.order is not None:
        degrees = [img.min_degree() for img in images]
        if all(d is not None and d > 0 for d in degrees):
            bounds.append(outer.order * min(degrees))
    bounds.extend(img.order for img in images if img.order is not None)
    target = _min_order(*bounds)
    if target is not None and order is not None:
        target = min(target, Fraction(order))
    fallback = target if target is not None else (
        Fraction(order) if order is not None else TRUNCATION_CONFIG["default_order"]
    )
    cache: Dict[Tuple[int, Fraction], PuiseuxSeries] = {}

    def power_of(j: int, k: Fraction) -> PuiseuxSeries:
        key = (j, k)
        if key not in cache:
            image = images[j]
            exact = target is None and (
                (k.denominator == 1 and k >= 0) or _monomial_unit(image)
            )
            cache[key] = fnc_power(image, k, None if exact else fallback)
        return cache[key]

    eps = min((img.eps for img in images), default=outer.eps)
    result = PuiseuxSeries(target_vars, {}, order=target, eps=eps)
    for exp, coeff in outer.terms.items():
        term = PuiseuxSeries.constant(target_vars, coeff, order=target, eps=eps)
        for j, k in enumerate(exp):
            if k:
                term = term * power_of(j, Fraction(k))
        result = result + term
    return result


def _monomial_unit(image: PuiseuxSeries) -> bool:
    return image.is_exact() and len(image.terms) == 1


def poly_compose(poly, images: Sequence[PuiseuxSeries], order=None) -> PuiseuxSeries:
    """多项式在级数处求值（整数指数，像无需 FNC）"""
    return series_compose(poly.to_series(), images, order)
