# sectors.py
from dataclasses import dataclass, replace
from fractions import Fraction
import logging
import math
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from algebra.exceptions import Incomparable, IrrationalJetError, TruncationExhausted
from algebra.polynomial import MultiPoly
from algebra.units import FNCForm, fnc_certify
from config import TRUNCATION_CONFIG
from towers.engine import BandEngine
from towers.horns import TowerRegion
from towers.transforms import CoordChain, PowerCoordinates, compose_chains, normalize_jacobian
from .newton_puiseux import PuiseuxRoot, newton_puiseux

logger = logging.getLogger(__name__)

QUADRANTS: Tuple[Tuple[int, int], ...] = ((1, 1), (-1, 1), (1, -1), (-1, -1))


def _quadrant_tag(signs: Sequence[int]) -> str:
    return "".join("+" if s > 0 else "-" for s in signs)


@dataclass(frozen=True)
class SectorRegion:
    """
    象限 signs 中的平面区域：(s1·x1, s2·x2) 落在 region 的角中
    region.chain 把 (0,1)^2 映成翻转后坐标里的区域
    power > 1 时分带在 (x1, x2^power) 上进行，region.chain 以幂坐标开头
    """
    quadrant: Tuple[int, int]
    region: TowerRegion
    power: int = 1

    @property
    def label(self) -> str:
        return self.region.label

    @property
    def chain(self) -> CoordChain:
        return self.region.chain

    @property
    def fnc(self) -> FNCForm:
        return self.region.fnc

    def inequalities(self, names: Optional[Sequence[str]] = None) -> List[str]:
        names = list(names or [f"x{j + 1}" if s > 0 else f"(-x{j + 1})" for j, s in enumerate(self.quadrant)])
        if self.power > 1:
            names[-1] = f"{names[-1]}^{self.power}"
        return self.region.horn.inequalities(names)

    def contains(self, points: np.ndarray) -> np.ndarray:
        """原坐标中的点是否在区域内"""
        flipped = np.atleast_2d(np.asarray(points, dtype=float)) * np.array(self.quadrant, dtype=float)
        return self.region.contains(flipped)

    def to_dict(self) -> Dict:
        data = self.region.to_dict()
        data["quadrant"] = list(self.quadrant)
        data["inequalities"] = self.inequalities()
        data["fibre_power"] = self.power
        return data


def _band_regions(flipped: MultiPoly, signs: Tuple[int, int], order: Fraction, power: int) -> List[SectorRegion]:
    """在 (x1, w = x2^power) 上分带；power > 1 时每块坐标链前接幂坐标并重新认证 Λ"""
    deflated = flipped.deflate((1, power))
    roots = newton_puiseux(deflated, order) if deflated.degree(1) > 0 else []
    names = ("x1", "x2") if power == 1 else ("x1", f"x2^{power}")
    engine = BandEngine(deflated, roots, base_chain=None, signs=(1,), order=order,
                        label=f"Q{_quadrant_tag(signs)}", names=names)
    regions = engine.run()
    if power == 1:
        return [SectorRegion(signs, region) for region in regions]
    head = CoordChain.from_transform(PowerCoordinates((1, power)))
    sectors = []
    for region in regions:
        chain = normalize_jacobian(compose_chains(head, region.chain, order), order)
        fnc = fnc_certify(chain.compose_poly(flipped, order), fixed=chain.fixed)
        sectors.append(SectorRegion(signs, replace(region, chain=chain, fnc=fnc), power))
    return sectors


def _quadrant_regions(lam: MultiPoly, signs: Tuple[int, int], order: Fraction,
                      period: int = 0) -> List[SectorRegion]:
    """
    分带常数不在 Q 中时（如 x2^4 − 4 x1^4 的根 √2·x1），
    依次改用 w = x2^k（k 整除 period）使根的首项系数变为有理数
    """
    flipped = lam.flip_signs(signs)
    try:
        return _band_regions(flipped, signs, order, 1)
    except IrrationalJetError as e:
        candidates = [k for k in range(2, period + 1) if period % k == 0]
        if not candidates:
            raise
        logger.info(f"象限 {_quadrant_tag(signs)}: {e}，尝试 x2 的幂坐标 {candidates}")
        for k in candidates:
            try:
                found = _band_regions(flipped, signs, order, k)
            except IrrationalJetError:
                continue
            logger.info(f"象限 {_quadrant_tag(signs)}: 在 x2^{k} 上分带成功")
            return found
        logger.error(f"象限 {_quadrant_tag(signs)}: 幂坐标 {candidates} 都无法使分带常数有理化")
        raise


def monomialize_bivariate(
    lam: MultiPoly,
    order: Optional[Fraction] = None,
    quadrants: Optional[Sequence[Tuple[int, int]]] = None,
    period: Optional[int] = None
) -> List[SectorRegion]:
    """
    把二元多项式 Λ 在各象限中单项化
    每个象限内用 Λ 关于 x2 的 Puiseux 根分带，区域上 Λ∘φ 认证为 FNC
    截断阶不足以分离根时加倍重试
    period 限定可用的 x2 幂坐标次数（还须整除 Λ 中 x2 的各次数）
    """
    if lam.nvars != 2:
        raise ValueError(f"monomialize_bivariate 需要二元多项式，收到 {lam.nvars} 元")
    if lam.is_zero():
        raise ValueError("Λ 恒为零，无法单项化")
    order = Fraction(order) if order is not None else TRUNCATION_CONFIG["default_order"]
    max_order = TRUNCATION_CONFIG["max_order"]
    period = lam.variable_period(1) if period is None else math.gcd(period, lam.variable_period(1))
    regions: List[SectorRegion] = []
    for signs in quadrants or QUADRANTS:
        current = order
        while True:
            try:
                found = _quadrant_regions(lam, tuple(signs), current, period)
                break
            except (TruncationExhausted, Incomparable) as e:
                if current * 2 > max_order:
                    logger.error(f"象限 {_quadrant_tag(signs)}: 截断阶 {current} 仍无法分离根")
                    raise TruncationExhausted(
                        f"象限 {_quadrant_tag(signs)} 在截断阶 {max_order} 内无法单项化 Λ") from e
                logger.warning(f"象限 {_quadrant_tag(signs)}: {e}，截断阶加倍到 {current * 2}")
                current *= 2
        logger.debug(f"象限 {_quadrant_tag(signs)}: {len(found)} 块区域")
        regions.extend(found)
    logger.info(f"Λ 单项化完成: {len(regions)} 块区域")
    return regions


def jet_curves(lam: MultiPoly, order: Optional[Fraction] = None,
               samples: int = 200, x_max: float = 0.5) -> pd.DataFrame:
    """Λ 关于 x2 的根分支在 x1 ∈ (0, x_max] 上的数值曲线（供绘图与 CSV 导出）"""
    roots: List[PuiseuxRoot] = newton_puiseux(lam, order) if lam.degree(1) > 0 else []
    xs = np.linspace(x_max / samples, x_max, samples)
    frames = []
    for branch, root in enumerate(r for r in roots if r.series is not None):
        values = root.evaluate_numpy(xs.reshape(-1, 1))
        frames.append(pd.DataFrame({
            "branch": branch,
            "multiplicity": root.multiplicity,
            "reality": root.reality.value,
            "x1": xs,
            "x2_re": values.real,
            "x2_im": values.imag,
        }))
    if not frames:
        return pd.DataFrame(columns=["branch", "multiplicity", "reality", "x1", "x2_re", "x2_im"])
    return pd.concat(frames, ignore_index=True)
