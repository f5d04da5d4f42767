# horns.py
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
import logging
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from algebra.exceptions import IrrationalJetError, NotFNC
from algebra.exponents import Exponent, format_exponent, unit_vector
from algebra.scalars import as_gauss, gauss_rational_power
from algebra.series import PuiseuxSeries
from algebra.units import FNCForm
from .transforms import (
    BaseLift, CoordChain, ElementaryTransform, MonomialMap, Shift, UnitScaling, _pad, compose,
    normalize_jacobian
)

logger = logging.getLogger(__name__)


class HornKind(str, Enum):
    ADJACENT = "adjacent"    # 0 < κ(x − f) < g
    DISTANT = "distant"      # g1 < κ(x − f) < g2，g1 = a·y_k^μ·g2


def _monomial_data(series: PuiseuxSeries) -> Tuple[Fraction, Exponent]:
    """单项正有理系数级数的 (系数, 指数)"""
    if len(series.terms) != 1 or not series.is_exact():
        raise NotFNC(f"边界必须是单项式: {series.format()}")
    (exp, coeff), = series.terms.items()
    if not coeff.is_real() or coeff.re <= 0:
        raise ValueError(f"边界系数必须是正有理数: {coeff}")
    return coeff.re, exp


@dataclass(frozen=True)
class Horn:
    """
    一维纤维上的角状区域
    centre 为底坐标的实级数 f；upper 对相邻角是 g，对远离角是 g2；lower 为远离角的 g1
    远离角的 ratio/index/power 记录 g1 = ratio · y_index^power · g2（单支撑）
    """
    kind: HornKind
    centre: PuiseuxSeries
    sign: int
    upper: PuiseuxSeries
    lower: Optional[PuiseuxSeries] = None
    ratio: Optional[Fraction] = None
    index: Optional[int] = None
    power: Optional[Fraction] = None

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError(f"角的方向必须为 ±1: {self.sign}")
        if not self.centre.is_real():
            raise ValueError("角的中心必须是实级数")
        if self.upper.nvars != self.centre.nvars:
            raise ValueError("边界与中心的底维数不一致")
        _monomial_data(self.upper)
        if self.kind == HornKind.DISTANT:
            if self.lower is None or self.ratio is None or self.index is None or self.power is None:
                raise ValueError("远离角需要 g1、比例常数、指数方向与幂次")
            if self.ratio < 1:
                raise ValueError(f"远离角的比例常数必须 >= 1: {self.ratio}")
            if self.power <= 0:
                raise ValueError(f"远离角的幂次必须为正: {self.power}")
            expected = self.upper.multiply_monomial(
                unit_vector(self.base_nvars, self.index, self.power), self.ratio)
            if expected != self.lower:
                raise ValueError("远离角的 g1 与 a·y_k^μ·g2 不一致")

    @property
    def base_nvars(self) -> int:
        return self.centre.nvars

    @property
    def nvars(self) -> int:
        return self.base_nvars + 1

    def inequalities(self, names: Optional[Sequence[str]] = None) -> List[str]:
        names = list(names or [f"y{j + 1}" for j in range(self.base_nvars)] + ["x"])
        base, fiber = names[:-1], names[-1]
        sign = "+" if self.sign > 0 else "-"
        moved = fiber if self.centre.is_zero() else f"({fiber} - ({self.centre.format(base)}))"
        if self.kind == HornKind.ADJACENT:
            return [f"0 < {sign}{moved} < {self.upper.format(base)}"]
        return [f"{self.lower.format(base)} < {sign}{moved} < {self.upper.format(base)}"]

    def contains_numpy(self, base_points: np.ndarray, fiber: np.ndarray) -> np.ndarray:
        """数值判定 (w, x) 是否在角中（底点 w 由调用方保证在底区域内）"""
        base_points = np.atleast_2d(np.asarray(base_points, dtype=float))
        t = self.sign * (np.asarray(fiber, dtype=float) - self.centre.evaluate_numpy(base_points).real)
        upper = self.upper.evaluate_numpy(base_points).real
        lower = np.zeros_like(upper) if self.lower is None else self.lower.evaluate_numpy(base_points).real
        return (t > lower) & (t < upper)

    def to_dict(self) -> Dict:
        data = {
            "kind": self.kind.value,
            "centre": self.centre.format(),
            "sign": self.sign,
            "upper": self.upper.format(),
        }
        if self.kind == HornKind.DISTANT:
            data.update({
                "lower": self.lower.format(),
                "ratio": str(self.ratio),
                "index": self.index + 1,
                "power": str(self.power),
            })
        return data


def adjacent_horn(centre: PuiseuxSeries, sign: int, width: PuiseuxSeries) -> Horn:
    return Horn(HornKind.ADJACENT, centre, sign, width)


def split_distant_horn(centre: PuiseuxSeries, sign: int,
                       lower: PuiseuxSeries, upper: PuiseuxSeries,
                       first_ratio: Optional[Fraction] = None) -> List[Horn]:
    """
    g1 < κ(x − f) < g2，g1/g2 = a·y^μ 为一般单项式
    沿 μ 的支撑逐个除掉 y_k^{μ_k}，拆成单支撑远离角；μ = 0 时退化为相邻角
    first_ratio 为第一个分量承担的常数（默认承担全部 a）
    """
    a_low, e_low = _monomial_data(lower)
    a_up, e_up = _monomial_data(upper)
    ratio = a_low / a_up
    mu = tuple(x - y for x, y in zip(e_low, e_up))
    if any(m < 0 for m in mu):
        raise ValueError(f"g1/g2 的指数必须非负: {format_exponent(mu)}")
    support = [k for k, m in enumerate(mu) if m != 0]
    if not support:
        if ratio >= 1:
            raise ValueError(f"同阶边界要求 g1 < g2，比例为 {ratio}")
        offset = lower.scale(sign)
        return [adjacent_horn(centre + offset, sign, upper - lower)]
    if first_ratio is None:
        first_ratio = ratio
    factors = [Fraction(1)] * len(support)
    factors[0] = first_ratio
    factors[-1] *= ratio / first_ratio
    horns = []
    current = lower
    for k, c in zip(support, factors):
        step = unit_vector(len(mu), k, mu[k])
        following = current.divide_monomial(step).scale(Fraction(1) / c)
        horns.append(Horn(HornKind.DISTANT, centre, sign, following, current,
                          ratio=c, index=k, power=mu[k]))
        current = following
    if current != upper:
        raise ValueError("拆分后的远离角没有回到 g2")
    logger.debug(f"远离角按 μ={format_exponent(mu)} 拆成 {len(horns)} 段")
    return horns


def _exact_root(value: Fraction, q: Fraction) -> Fraction:
    powered = gauss_rational_power(as_gauss(value), q)
    if not powered.is_real() or powered.re <= 0:
        raise IrrationalJetError(f"{value}^{q} 不是正有理数")
    return powered.re


def preferred_coords(horn: Horn, base: Optional[CoordChain] = None, order=None,
                     fibre: Sequence[ElementaryTransform] = ()) -> CoordChain:
    """
    角的首选坐标 x = φ(y)，y ∈ (0,1)^{m+1}
    fibre 为纤维变量上先做的变换（如 x = c + κ s^{1/2}），角在变换后的纤维坐标中给出
    相邻角：x_last = f + κ g y_last
    远离角：x_last = f + κ g2 y_last，并用 y_k ← a^{-1/μ} y_k^{1/μ} y_last^{1/μ} 把 g1 < ... 变为 y_last < 1
    最后追加幂映射把 Jacobian 变为单位
    """
    n = horn.nvars
    last = n - 1
    fixed = set(base.fixed) if base is not None else set()
    if base is not None and base.transforms:
        if base.nvars != horn.base_nvars:
            raise ValueError(f"底坐标链维数 {base.nvars} 与角的底维数 {horn.base_nvars} 不一致")
        chain = CoordChain.from_transform(BaseLift(base, n), fixed)
    else:
        chain = CoordChain.identity(n, fixed)
    for transform in fibre:
        chain = compose(chain, transform, order)
    if not horn.centre.is_zero():
        chain = compose(chain, Shift(last, _pad(horn.centre, n)), order)
    if horn.sign < 0:
        chain = compose(chain, UnitScaling(last, PuiseuxSeries.constant(n, -1)), order)
    width = _pad(horn.upper, n)
    if width != PuiseuxSeries.constant(n, 1):
        chain = compose(chain, UnitScaling(last, width), order)
    fixed.add(last)
    if horn.kind == HornKind.DISTANT:
        k, mu = horn.index, horn.power
        rows = []
        coefficients = []
        for i in range(n):
            row = [Fraction(0)] * n
            if i == k:
                row[k] = 1 / mu
                row[last] = 1 / mu
                coefficients.append(_exact_root(horn.ratio, -1 / mu))
            else:
                row[i] = Fraction(1)
                coefficients.append(Fraction(1))
            rows.append(tuple(row))
        chain = compose(chain, MonomialMap(tuple(rows), tuple(coefficients), label="distant"), order)
        fixed.add(k)
    return normalize_jacobian(chain.with_fixed(fixed), order)


@dataclass(frozen=True)
class TowerRegion:
    """塔式区域：底区域上的角，连同首选坐标与目标函数的 FNC 形式"""
    label: str
    kind: str
    horn: Horn
    chain: CoordChain
    fnc: Optional[FNCForm] = None
    base_label: Optional[str] = None
    names: Tuple[str, ...] = field(default=())

    @property
    def dimension(self) -> int:
        return self.chain.nvars

    def inequalities(self) -> List[str]:
        return self.horn.inequalities(self.names or None)

    def contains(self, points: np.ndarray) -> np.ndarray:
        return self.chain.contains(points)

    def to_dict(self) -> Dict:
        return {
            "label": self.label,
            "kind": self.kind,
            "base": self.base_label,
            "inequalities": self.inequalities(),
            "horn": self.horn.to_dict(),
            "chart": self.chain.to_dict(),
            "fnc": self.fnc.format() if self.fnc is not None else None,
            "fnc_exponent": [str(e) for e in self.fnc.exponent] if self.fnc is not None else None,
        }
