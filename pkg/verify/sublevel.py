# sublevel.py
from fractions import Fraction
from typing import Optional, Tuple

import numpy as np

from algebra.polynomial import MultiPoly
from .base_oracle import BaseOracle, SlopeFit, dyadic_schedule
from .exceptions import OracleError
from .sampling import StratifiedSampler, centered_box


class SublevelOracle(BaseOracle):
    """
    次水平集增长率：|{x ∈ 盒 : |F(x)| < ε}| ~ ε^{ν0}
    每个 ε 用独立子随机流分层抽样，log-log 拟合斜率即 ν̂0
    """

    kind = "sublevel"

    def measure(self, f: MultiPoly, eps: float, sampler: StratifiedSampler, samples: int,
                rng: np.random.Generator):
        return sampler.estimate(lambda pts: np.abs(f.evaluate_numpy(pts)) < eps, samples, rng)

    def run(
        self,
        f: MultiPoly,
        eps_schedule: Optional[Tuple[int, int]] = None,
        radius: Optional[Fraction] = None,
        samples: Optional[int] = None,
        strata_per_dim: Optional[int] = None
    ) -> SlopeFit:
        if f.is_zero():
            raise ValueError("零多项式的次水平集是整个盒子")
        first, last = eps_schedule or self.config["eps_schedule"]
        radius = float(radius if radius is not None else self.config["box_radius"])
        samples = int(samples or self.config["samples"])
        sampler = StratifiedSampler(*centered_box(f.nvars, radius),
                                    strata_per_dim=strata_per_dim or self.config["strata_per_dim"])
        schedule = dyadic_schedule(first, last)
        streams = self.streams(len(schedule))

        scales, values, stderrs, dropped = [], [], [], []
        try:
            for eps, rng in self.progress(list(zip(schedule, streams)), desc="sublevel"):
                est = self.measure(f, eps, sampler, samples, rng)
                if est.hits == 0 or est.hits == est.samples:
                    self.logger.warning(f"ε = {eps:g}: 命中 {est.hits}/{est.samples}，舍弃该尺度")
                    dropped.append(eps)
                    continue
                scales.append(eps)
                values.append(est.mean)
                stderrs.append(est.stderr)
                self.logger.debug(f"ε = {eps:g}: |E_ε| ≈ {est.mean:.4e} ± {est.stderr:.1e}")
        except (ValueError, FloatingPointError) as e:
            self.log_failure("次水平集抽样", e)
            raise OracleError("次水平集抽样失败", e) from e

        fit = self.fit(scales, values, stderrs, dropped=dropped)
        self.logger.info(f"ν̂0 = {fit.exponent:.3f}（残差 {fit.residual:.3f}，{len(fit.used)} 个尺度）")
        if fit.log_flag:
            self.logger.warning(f"拟合残差 {fit.residual:.3f} 超过阈值，可能含对数修正")
        return fit


def sublevel_volume(
    f: MultiPoly,
    eps_schedule: Optional[Tuple[int, int]] = None,
    radius: Optional[Fraction] = None,
    samples: Optional[int] = None,
    seed: int = 0,
    strata_per_dim: Optional[int] = None
) -> SlopeFit:
    return SublevelOracle(seed).run(f, eps_schedule, radius, samples, strata_per_dim)
