# scan.py
"""
二进壳层积分性扫描：∫|F|^{-δ} 有限当且仅当 Σ_j 2^{jδ} |{|F| ~ 2^{-j}}| 收敛
拟合壳层和的几何比值 2^ℓ，ℓ 明显小于 0 判收敛，不小于 0 判发散（比值为 1 时级数发散）
"""
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, Optional, Tuple

import numpy as np

from algebra.polynomial import MultiPoly
from .base_oracle import BaseOracle, SlopeFit
from .exceptions import OracleError
from .sampling import StratifiedSampler, centered_box


class ScanVerdict(str, Enum):
    CONVERGENT = "convergent"
    DIVERGENT = "divergent"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class ScanResult:
    delta: float
    shells: Tuple[int, ...]
    sums: Tuple[float, ...]
    stderrs: Tuple[float, ...]
    log_ratio: float
    band: Tuple[float, float]
    verdict: ScanVerdict
    fit: SlopeFit

    @property
    def ratio(self) -> float:
        return 2.0 ** self.log_ratio

    def to_dict(self) -> Dict[str, Any]:
        return {
            "delta": self.delta,
            "shells": list(self.shells),
            "shell_sums": list(self.sums),
            "stderrs": list(self.stderrs),
            "ratio": self.ratio,
            "log2_ratio": self.log_ratio,
            "log2_ratio_band": list(self.band),
            "verdict": self.verdict.value,
            "seed": self.fit.seed,
        }


class IntegrabilityScan(BaseOracle):
    kind = "scan"

    def run(
        self,
        f: MultiPoly,
        delta: float = 1.0,
        shells: Optional[Tuple[int, int]] = None,
        radius: Optional[Fraction] = None,
        samples: Optional[int] = None,
        strata_per_dim: Optional[int] = None
    ) -> ScanResult:
        delta = float(delta)
        if delta <= 0:
            raise ValueError(f"δ 必须为正: {delta}")
        first, last = shells or self.config["eps_schedule"]
        radius = float(radius if radius is not None else self.config["box_radius"])
        samples = int(samples or self.config["samples"])
        sampler = StratifiedSampler(*centered_box(f.nvars, radius),
                                    strata_per_dim=strata_per_dim or self.config["strata_per_dim"])
        indices = list(range(first, last + 1))
        streams = self.streams(len(indices))

        used, sums, stderrs, dropped = [], [], [], []
        try:
            for j, rng in self.progress(list(zip(indices, streams)), desc="scan"):
                lo, hi = 2.0 ** (-j - 1), 2.0 ** (-j)

                def shell(pts, lo=lo, hi=hi):
                    values = np.abs(f.evaluate_numpy(pts))
                    return (values >= lo) & (values < hi)

                est = sampler.estimate(shell, samples, rng)
                if est.hits == 0:
                    self.logger.warning(f"壳层 j = {j} 没有样本命中，舍弃")
                    dropped.append(2.0 ** (-j))
                    continue
                weight = 2.0 ** (j * delta)
                used.append(j)
                sums.append(weight * est.mean)
                stderrs.append(weight * est.stderr)
        except ValueError as e:
            self.log_failure("壳层抽样", e)
            raise OracleError("积分性扫描抽样失败", e) from e

        # s_j ∝ 2^{jℓ}：按尺度 2^{-j} 拟合时斜率为 −ℓ
        fit = self.fit([2.0 ** (-j) for j in used], sums, stderrs, dropped=dropped)
        log_ratio = -fit.exponent
        band = (-fit.band[1], -fit.band[0])
        margin = self.config["ratio_margin"]
        if band[1] < -margin:
            verdict = ScanVerdict.CONVERGENT
        elif band[0] > -margin:
            verdict = ScanVerdict.DIVERGENT
        else:
            verdict = ScanVerdict.INCONCLUSIVE
        self.logger.info(f"δ = {delta}: 壳层比值 2^{log_ratio:.3f}，结论 {verdict.value}")
        return ScanResult(delta, tuple(used), tuple(sums), tuple(stderrs), log_ratio, band, verdict, fit)


def integrability_scan(
    f: MultiPoly,
    delta: float,
    shells: Optional[Tuple[int, int]] = None,
    radius: Optional[Fraction] = None,
    samples: Optional[int] = None,
    seed: int = 0,
    strata_per_dim: Optional[int] = None
) -> ScanResult:
    return IntegrabilityScan(seed).run(f, delta, shells, radius, samples, strata_per_dim)
