# mu0.py
from dataclasses import dataclass
from fractions import Fraction
import logging
import math
from typing import Dict, List, Optional, Tuple

from algebra.polynomial import MultiPoly
from algebra.series import PuiseuxSeries
from algebra.units import poly_compose
from config import TRUNCATION_CONFIG
from newton.polyhedron import Extended, format_extended, newton_distance_exponent, np_from_terms
from .newton_puiseux import newton_puiseux

logger = logging.getLogger(__name__)

AXES = ("y", "x")


@dataclass(frozen=True)
class Mu0Candidate:
    """
    一个候选坐标：在 sign·u > 0 的半平面上把 v 平移为 v + shift(u)
    axis 为被平移的变量名；shift 为 None 表示原坐标
    """
    axis: str
    sign: int
    shift: Optional[PuiseuxSeries]
    delta0: Extended

    def describe(self) -> str:
        if self.shift is None:
            return "identity"
        other = "x" if self.axis == "y" else "y"
        side = f"{other} > 0" if self.sign > 0 else f"{other} < 0"
        return f"{self.axis} -> {self.axis} + ({self.shift.format([other])})  [{side}]"

    def to_dict(self) -> Dict:
        return {
            "coordinates": self.describe(),
            "axis": self.axis,
            "half_plane": self.sign,
            "shift": self.shift.format() if self.shift is not None else None,
            "delta0": format_extended(self.delta0),
        }


@dataclass(frozen=True)
class Mu0Result:
    mu0: Extended
    certificate: Mu0Candidate
    candidates: Tuple[Mu0Candidate, ...]
    order: Fraction

    def to_dict(self) -> Dict:
        return {
            "mu0": format_extended(self.mu0),
            "certificate": self.certificate.to_dict(),
            "candidates": [c.to_dict() for c in self.candidates],
            "truncation_order": str(self.order),
        }


def _delta0(series) -> Extended:
    return newton_distance_exponent(np_from_terms(series))[1]


def _swap(f: MultiPoly) -> MultiPoly:
    return f.substitute([MultiPoly.variable(2, 1), MultiPoly.variable(2, 0)])


def _shift_candidates(g: MultiPoly, axis: str, order: Fraction) -> List[Mu0Candidate]:
    """g 关于第二个变量的根的实部逐个平移，在两个半平面上分别计算 δ0"""
    found = []
    x = PuiseuxSeries.variable(2, 0)
    y = PuiseuxSeries.variable(2, 1)
    for sign in (1, -1):
        flipped = g.flip_signs((sign, 1))
        if flipped.degree(1) == 0:
            continue
        seen = set()
        for root in newton_puiseux(flipped, order):
            if root.series is None or not root.is_near():
                continue
            shift = root.real_part()
            if shift.is_zero() or shift in seen:
                continue
            seen.add(shift)
            lifted = PuiseuxSeries(2, {e + (Fraction(0),): c for e, c in shift.terms.items()},
                                   order=shift.order)
            shifted = poly_compose(flipped, [x, y + lifted])
            if shifted.is_zero():
                continue
            found.append(Mu0Candidate(axis, sign, shift, _delta0(shifted)))
    return found


def mu0_bivariate(f: MultiPoly, order: Optional[Fraction] = None) -> Mu0Result:
    """
    μ0(F) = min δ0(F; Φ)，Φ 取原坐标以及按每个根的截断实部平移的坐标（两种变量次序）
    平移后的级数只保留截断阶以内的项
    """
    if f.nvars != 2:
        raise ValueError(f"mu0_bivariate 需要二元多项式，收到 {f.nvars} 元")
    if f.is_zero():
        raise ValueError("零多项式没有可积性指数")
    order = Fraction(order) if order is not None else TRUNCATION_CONFIG["default_order"]
    if not f.constant_term().is_zero():
        identity = Mu0Candidate("y", 1, None, math.inf)
        return Mu0Result(math.inf, identity, (identity,), order)
    identity = Mu0Candidate("y", 1, None, _delta0(f))
    candidates = [identity]
    candidates.extend(_shift_candidates(f, "y", order))
    candidates.extend(_shift_candidates(_swap(f), "x", order))
    # 并列时保留先出现的候选（原坐标优先）
    best = min(candidates, key=lambda c: c.delta0)
    logger.info(f"μ0 = {format_extended(best.delta0)}，证书坐标: {best.describe()}")
    return Mu0Result(best.delta0, best, tuple(candidates), order)
