# sampling.py
"""
分层蒙特卡洛抽样：盒子按每维 k 段切成 k^d 个层，每层等量均匀抽样
每个尺度（壳层）使用独立的子随机流 SeedSequence(seed).spawn，串行与分块运行结果逐位一致
"""
from dataclasses import dataclass
import logging
from typing import Callable, List, Sequence, Tuple

import numpy as np

logger = logging.getLogger(__name__)


def shell_streams(seed: int, count: int) -> List[np.random.Generator]:
    """(seed, 壳层序号) 决定的确定性子随机流"""
    children = np.random.SeedSequence(seed).spawn(count)
    return [np.random.default_rng(child) for child in children]


@dataclass(frozen=True)
class StratifiedEstimate:
    """层均值的加权平均及其标准误（各层权重相等）"""
    mean: float
    stderr: float
    hits: int
    samples: int


class StratifiedSampler:
    """
    在盒子 [lows, highs] 上分层抽样
    strata_per_dim 为每维层数；样本数不足以覆盖所有层时自动减少层数
    """

    def __init__(self, lows: Sequence[float], highs: Sequence[float], strata_per_dim: int = 4):
        self.lows = np.asarray(lows, dtype=float)
        self.highs = np.asarray(highs, dtype=float)
        if self.lows.shape != self.highs.shape or np.any(self.highs <= self.lows):
            raise ValueError("采样盒的上下界不合法")
        self.dim = self.lows.size
        self.strata_per_dim = max(1, int(strata_per_dim))
        self.logger = logging.getLogger(__name__)

    @property
    def volume(self) -> float:
        return float(np.prod(self.highs - self.lows))

    def _layout(self, n: int) -> Tuple[int, int]:
        k = self.strata_per_dim
        while k > 1 and k ** self.dim > n:
            k -= 1
        return k, n // (k ** self.dim)

    def sample(self, n: int, rng: np.random.Generator) -> Tuple[np.ndarray, np.ndarray]:
        """返回 (点, 所属层编号)；每层 n // k^d 个点"""
        k, per = self._layout(n)
        if per == 0:
            raise ValueError(f"样本数 {n} 少于层数")
        width = (self.highs - self.lows) / k
        # 层的多重下标
        grids = np.meshgrid(*[np.arange(k)] * self.dim, indexing="ij")
        cells = np.stack([g.ravel() for g in grids], axis=1)
        cells = np.repeat(cells, per, axis=0)
        offsets = rng.random((cells.shape[0], self.dim))
        points = self.lows + (cells + offsets) * width
        labels = np.repeat(np.arange(k ** self.dim), per)
        return points, labels

    def estimate(self, indicator: Callable[[np.ndarray], np.ndarray], n: int,
                 rng: np.random.Generator) -> StratifiedEstimate:
        """估计 |{indicator}| 在盒中的体积"""
        points, labels = self.sample(n, rng)
        hits = np.asarray(indicator(points), dtype=float)
        strata = labels.max() + 1
        per = hits.size // strata
        table = hits.reshape(strata, per)
        means = table.mean(axis=1)
        variances = table.var(axis=1, ddof=1) if per > 1 else np.zeros(strata)
        mean = means.mean()
        stderr = np.sqrt(variances.sum() / per) / strata
        return StratifiedEstimate(
            mean=float(mean * self.volume),
            stderr=float(stderr * self.volume),
            hits=int(hits.sum()),
            samples=int(hits.size),
        )


def centered_box(nvars: int, radius: float) -> Tuple[np.ndarray, np.ndarray]:
    r = float(radius)
    return np.full(nvars, -r), np.full(nvars, r)
