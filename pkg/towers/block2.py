# block2.py
from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key
import logging
from typing import TYPE_CHECKING, List, Optional, Sequence, Tuple

import numpy as np

from algebra.exceptions import Incomparable
from algebra.exponents import order_exponents
from algebra.polynomial import MultiPoly
from algebra.series import PuiseuxSeries
from .engine import BandEngine
from .exceptions import NeedsRefinement
from .horns import TowerRegion
from .transforms import CoordChain, ElementaryTransform

if TYPE_CHECKING:
    from puiseux.newton_puiseux import PuiseuxRoot

logger = logging.getLogger(__name__)


def _check_hypotheses(roots: Sequence["PuiseuxRoot"]) -> None:
    """根、实部以及两两之差都必须恒为零或 FNC"""
    exact = [r.series for r in roots if r.is_near() and r.series is not None]
    candidates = list(exact) + [s.real_part() for s in exact]
    for i, a in enumerate(exact):
        for b in exact[i + 1:]:
            candidates.append(a - b)
            candidates.append(a.real_part() - b.real_part())
    for series in candidates:
        if not series.is_zero() and not series.is_fnc():
            raise NeedsRefinement(f"底区域上存在非 FNC 的根数据: {series.format()}",
                                  {"series": series.format()})


def _sign(series: PuiseuxSeries) -> int:
    """实 FNC 级数在 (0,1)^m 上的符号"""
    coeff, _, _ = series.split_fnc()
    return 1 if coeff.re > 0 else -1


def _compare(a: PuiseuxSeries, b: PuiseuxSeries) -> int:
    diff = a - b
    return 0 if diff.is_zero() else _sign(diff)


@dataclass(frozen=True)
class RootClasses:
    """
    底区域上近根的分类
    imaginary: Im(u) 为单位的根（含实部恒为零者），不参与平移
    positive / negative: 其余根互不相同的实部，按离零由近到远排列
    zero: x_{n+1} = 0 的根重数；inexact: 只有数值尾项、未参与分类的根数
    """
    imaginary: Tuple["PuiseuxRoot", ...]
    positive: Tuple[PuiseuxSeries, ...]
    negative: Tuple[PuiseuxSeries, ...]
    zero: int
    inexact: int = 0

    def band_count(self) -> int:
        return 2 * (len(self.positive) + len(self.negative)) + 2


def classify_roots(roots: Sequence["PuiseuxRoot"], beta_last: int = 0) -> RootClasses:
    imaginary = []
    positive: List[PuiseuxSeries] = []
    negative: List[PuiseuxSeries] = []
    zero = beta_last
    inexact = 0
    for root in roots:
        if not root.is_near():
            continue
        if not root.is_exact():
            inexact += 1
            continue
        series = root.series
        if series.is_zero():
            zero += root.multiplicity
            continue
        re = series.real_part()
        im = series - re
        if re.is_zero() or (im.is_fnc() and im.fnc_exponent() == series.fnc_exponent()):
            imaginary.append(root)
            continue
        bucket = positive if _sign(re) > 0 else negative
        if re not in bucket:
            bucket.append(re)
    positive.sort(key=cmp_to_key(_compare))
    negative.sort(key=cmp_to_key(lambda a, b: _compare(b, a)))
    return RootClasses(tuple(imaginary), tuple(positive), tuple(negative), zero, inexact)


@dataclass(frozen=True)
class ShiftedBand:
    """lower < x_{n+1} < upper；None 表示纤维端点 ±1"""
    lower: Optional[PuiseuxSeries]
    upper: Optional[PuiseuxSeries]
    label: str

    def contains_numpy(self, base_points: np.ndarray, fiber: np.ndarray) -> np.ndarray:
        base_points = np.atleast_2d(np.asarray(base_points, dtype=float))
        fiber = np.asarray(fiber, dtype=float)
        low = -np.ones_like(fiber) if self.lower is None else self.lower.evaluate_numpy(base_points).real
        high = np.ones_like(fiber) if self.upper is None else self.upper.evaluate_numpy(base_points).real
        return (fiber > low) & (fiber < high)


def shifted_bands(classes: RootClasses, nvars: int) -> List[ShiftedBand]:
    """
    按实部把 V × (−1, 1) 切成 2M + 2 条带：相邻实部之间以中点为界，
    第一条带到最近实部的一半为止，最外侧到纤维端点
    """
    zero = PuiseuxSeries(nvars, {})
    bands: List[ShiftedBand] = []
    for side, parts in (("+", classes.positive), ("-", classes.negative)):
        edges: List[Optional[PuiseuxSeries]] = [zero]
        previous = zero
        for part in parts:
            edges.extend([(previous + part).scale(Fraction(1, 2)), part])
            previous = part
        edges.append(None)
        for i, (a, b) in enumerate(zip(edges, edges[1:])):
            lower, upper = (a, b) if side == "+" else (b, a)
            bands.append(ShiftedBand(lower, upper, f"{side}{i}"))
    return bands


def block2_decompose(
    base: Optional[CoordChain],
    roots: Sequence["PuiseuxRoot"],
    target: MultiPoly,
    beta_last: int = 0,
    order=None,
    label: str = "V",
    fibre: Sequence[ElementaryTransform] = (),
    signs: Sequence[int] = (1, -1)
) -> List[TowerRegion]:
    """
    底区域（坐标链 base）× (−1, 1) 的塔式分解
    roots 为 target 关于最后一个变量的根，写成 base 坐标的级数；beta_last 为零根重数
    先按实部分类得到一层平移带，再由分带引擎细分为首选坐标下的塔；每块区域上 target∘φ 认证为 FNC
    """
    _check_hypotheses(roots)
    leading = sorted({r.leading_exponent for r in roots if r.is_near() and any(r.leading_exponent)})
    try:
        order_exponents(leading)
    except Incomparable as e:
        raise NeedsRefinement(f"根的首指数不是全序: {e}", e.details) from e
    m = target.nvars - 1
    classes = classify_roots(roots, beta_last)
    bands = shifted_bands(classes, m)
    logger.info(f"{label}: 虚根 {len(classes.imaginary)} 个，正实部 {len(classes.positive)} 个，"
                f"负实部 {len(classes.negative)} 个，零根重数 {classes.zero}，平移带 {len(bands)} 条")
    names = [f"u{j + 1}" for j in range(m)] + [f"x{m + 1}"]
    engine = BandEngine(target, roots, base_chain=base, signs=signs, order=order,
                        label=label, names=names, fibre=fibre)
    towers = engine.run()
    logger.info(f"{label}: 塔式分解得到 {len(towers)} 块")
    return towers
