# checks.py
"""
区域分解的数值检查：Jacobian 有限差分、覆盖率、FNC 抽样比值
都以 numpy 随机数生成器为输入，结果可复现
"""
from dataclasses import dataclass
import logging
from typing import Optional, Sequence

import numpy as np

from algebra.polynomial import MultiPoly
from algebra.series import PuiseuxSeries
from algebra.units import FNCForm, fnc_certify, series_compose
from config import UNIT_CONFIG, VERIFY_CONFIG
from .horns import TowerRegion
from .transforms import CoordChain

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CoverageResult:
    samples: int
    covered: int
    overlapping: int

    @property
    def fraction(self) -> float:
        return self.covered / self.samples if self.samples else 0.0

    @property
    def overlap_fraction(self) -> float:
        return self.overlapping / self.samples if self.samples else 0.0


def interior_points(chain: CoordChain, rng: np.random.Generator, count: int,
                    eps: float = 0.25) -> np.ndarray:
    """链坐标中的内点：固定坐标取满 (0,1)，其余取 (0, eps)"""
    upper = np.array([1.0 if j in chain.fixed else eps for j in range(chain.nvars)])
    return rng.uniform(0.05, 0.95, size=(count, chain.nvars)) * upper


def finite_difference_jacobian(chain: CoordChain, points: np.ndarray, step: float = 1e-7) -> np.ndarray:
    """中心差分的 det(Dφ)"""
    points = np.atleast_2d(np.asarray(points, dtype=float))
    n = chain.nvars
    dets = np.empty(points.shape[0])
    for i, y in enumerate(points):
        matrix = np.empty((n, n))
        for j in range(n):
            h = step * max(1.0, abs(y[j]))
            plus, minus = y.copy(), y.copy()
            plus[j] += h
            minus[j] -= h
            matrix[:, j] = (chain.forward(plus)[0] - chain.forward(minus)[0]) / (2 * h)
        dets[i] = np.linalg.det(matrix)
    return dets


def jacobian_relative_error(chain: CoordChain, points: np.ndarray) -> np.ndarray:
    """记录的 Jacobian 与有限差分之间的相对误差"""
    numeric = finite_difference_jacobian(chain, points)
    tracked = chain.jacobian.evaluate_numpy(points).real
    return np.abs(numeric - tracked) / np.maximum(np.abs(tracked), 1e-300)


def coverage(regions: Sequence[TowerRegion], points: np.ndarray) -> CoverageResult:
    """原坐标点落入至少一块区域的比例（边界在抽样下测度为零）"""
    points = np.atleast_2d(np.asarray(points, dtype=float))
    hits = np.zeros(points.shape[0], dtype=int)
    for region in regions:
        hits += region.contains(points).astype(int)
    result = CoverageResult(points.shape[0], int(np.count_nonzero(hits)), int(np.count_nonzero(hits > 1)))
    logger.debug(f"覆盖率 {result.fraction:.4f}，重叠 {result.overlap_fraction:.4f}")
    return result


def fiber_points(base: Optional[CoordChain], base_nvars: int, rng: np.random.Generator,
                 count: int, eps: float, fiber_width: float = 1.0) -> np.ndarray:
    """底区域 ψ((0, eps)^m) × (−fiber_width, fiber_width) 中的随机点（原坐标）"""
    u = rng.uniform(0.0, eps, size=(count, base_nvars))
    x_base = base.forward(u) if base is not None and base.transforms else u
    fiber = rng.uniform(-fiber_width, fiber_width, size=(count, 1))
    return np.hstack([x_base, fiber])


def fnc_ratio(target: MultiPoly, region: TowerRegion, points: np.ndarray) -> np.ndarray:
    """|target∘φ(y)| / |FNC(y)|，链坐标 y 应落在单位的认证域内"""
    points = np.atleast_2d(np.asarray(points, dtype=float))
    exact = np.abs(target.evaluate_numpy(region.chain.forward(points)))
    model = np.abs(region.fnc.evaluate_numpy(points))
    return exact / model


def certified_points(region: TowerRegion, rng: np.random.Generator, count: int) -> np.ndarray:
    """区域 FNC 单位认证域内的随机点"""
    upper = region.fnc.unit.domain_upper()
    return rng.uniform(0.05, 0.95, size=(count, region.dimension)) * upper


def fnc_ratio_within(target: MultiPoly, region: TowerRegion, rng: np.random.Generator,
                     count: Optional[int] = None) -> bool:
    low, high = VERIFY_CONFIG["fnc_tolerance"]
    count = count or UNIT_CONFIG["sample_points"]
    ratios = fnc_ratio(target, region, certified_points(region, rng, count))
    ok = bool(np.all((ratios >= low) & (ratios <= high)))
    if not ok:
        logger.warning(f"区域 {region.label}: FNC 比值超出 [{low}, {high}]，"
                       f"范围 [{ratios.min():.3g}, {ratios.max():.3g}]")
    return ok


def fnc_transport(h: PuiseuxSeries, chain: CoordChain, order=None) -> FNCForm:
    """u 坐标下的 FNC 函数经首选坐标链后仍为 FNC，重新认证单位"""
    composed = series_compose(h, list(chain.images), order)
    return fnc_certify(composed, fixed=chain.fixed)
