# oscillatory.py
"""
振荡积分 I(λ) = ∫ e^{iλF(x)} φ(x) dx 的衰减指数
φ 为张量积磨光函数 Π ψ(x_j)，ψ(t) = exp(−1/(1 − (t/R)^2))
F 可加分离（每个单项式只含一个变量）时 I 分解为一维积分的乘积
求积为分段 Gauss–Legendre，段数从 ⌈√λ·d⌉ 起加倍直到相邻两次相对差小于容差
"""
from dataclasses import dataclass
import math
from typing import Dict, List, Optional, Tuple

import numpy as np
from scipy.special import roots_legendre

from algebra.polynomial import MultiPoly
from .base_oracle import BaseOracle, SlopeFit, dyadic_schedule
from .exceptions import OracleError


def bump(t: np.ndarray, radius: float) -> np.ndarray:
    s = np.asarray(t, dtype=float) / radius
    inside = np.abs(s) < 1
    out = np.zeros_like(s)
    out[inside] = np.exp(-1.0 / (1.0 - s[inside] ** 2))
    return out


@dataclass(frozen=True)
class QuadratureValue:
    value: complex
    error: float
    panels: int
    converged: bool


def separable_parts(f: MultiPoly) -> Optional[Tuple[complex, List[MultiPoly]]]:
    """F = c + Σ g_j(x_j) 时返回 (c, [g_j])，否则 None"""
    constant = 0j
    parts: List[Dict] = [{} for _ in range(f.nvars)]
    for exp, coeff in f.terms.items():
        active = [j for j, e in enumerate(exp) if e]
        if not active:
            constant += complex(coeff)
        elif len(active) == 1:
            j = active[0]
            parts[j][(exp[j],)] = coeff
        else:
            return None
    return constant, [MultiPoly(1, p) for p in parts]


class OscillatoryOracle(BaseOracle):
    kind = "oscillatory"

    def __init__(self, seed: int = 0, config: Optional[Dict] = None):
        super().__init__(seed, config)
        nodes, weights = roots_legendre(int(self.config["quadrature_nodes"]))
        self.nodes = nodes
        self.weights = weights

    def _panel_rule(self, panels: int, radius: float) -> Tuple[np.ndarray, np.ndarray]:
        edges = np.linspace(-radius, radius, panels + 1)
        mid = (edges[:-1] + edges[1:]) / 2
        half = (edges[1:] - edges[:-1]) / 2
        x = (mid[:, None] + half[:, None] * self.nodes[None, :]).ravel()
        w = (half[:, None] * self.weights[None, :]).ravel()
        return x, w

    def _tensor(self, f: MultiPoly, lam: float, panels: int, radius: float) -> complex:
        x, w = self._panel_rule(panels, radius)
        w = w * bump(x, radius)
        keep = w != 0
        x, w = x[keep], w[keep]
        d = f.nvars
        if d == 1:
            return complex(np.sum(w * np.exp(1j * lam * f.evaluate_numpy(x[:, None]))))
        # 沿第一个坐标分块，避免一次展开全部张量网格
        grids = np.meshgrid(*[x] * (d - 1), indexing="ij")
        rest = np.stack([g.ravel() for g in grids], axis=1)
        rest_w = np.ones(rest.shape[0])
        for g in np.meshgrid(*[w] * (d - 1), indexing="ij"):
            rest_w = rest_w * g.ravel()
        total = 0j
        for x0, w0 in zip(x, w):
            pts = np.column_stack([np.full(rest.shape[0], x0), rest])
            total += w0 * np.sum(rest_w * np.exp(1j * lam * f.evaluate_numpy(pts)))
        return complex(total)

    def integrate(self, f: MultiPoly, lam: float, radius: float) -> QuadratureValue:
        """面板加倍直到相对差 < panel_tolerance，或网格点数超过上限"""
        q = len(self.nodes)
        panels = max(2, math.ceil(math.sqrt(lam) * f.nvars))
        limit = self.config["max_grid_points"]
        previous = self._tensor(f, lam, panels, radius)
        while True:
            panels *= 2
            if (panels * q) ** f.nvars > limit:
                return QuadratureValue(previous, float("inf"), panels // 2, False)
            current = self._tensor(f, lam, panels, radius)
            error = abs(current - previous)
            if error <= self.config["panel_tolerance"] * abs(current):
                return QuadratureValue(current, error, panels, True)
            previous = current

    def evaluate(self, f: MultiPoly, lam: float, radius: float) -> QuadratureValue:
        split = separable_parts(f)
        if split is None:
            return self.integrate(f, lam, radius)
        constant, parts = split
        value = complex(np.exp(1j * lam * constant))
        error = 0.0
        panels = 0
        for part in parts:
            factor = self.integrate(part, lam, radius)
            if not factor.converged:
                return QuadratureValue(value * factor.value, float("inf"), factor.panels, False)
            # 乘积的相对误差近似为各因子相对误差之和
            error += factor.error / max(abs(factor.value), 1e-300)
            value *= factor.value
            panels = max(panels, factor.panels)
        return QuadratureValue(value, error * abs(value), panels, True)

    def run(
        self,
        f: MultiPoly,
        lambda_schedule: Optional[Tuple[int, int]] = None,
        radius: Optional[float] = None
    ) -> SlopeFit:
        if f.is_constant():
            raise ValueError("常数相位没有衰减")
        first, last = lambda_schedule or self.config["lambda_schedule"]
        radius = float(radius if radius is not None else self.config["bump_radius"])
        scales, values, errors, dropped = [], [], [], []
        try:
            for lam in self.progress(dyadic_schedule(first, last, sign=1), desc="oscillatory"):
                result = self.evaluate(f, lam, radius)
                if not result.converged:
                    self.logger.warning(f"λ = {lam:g}: 面板加倍未收敛（{result.panels} 段），舍弃该尺度")
                    dropped.append(lam)
                    continue
                scales.append(lam)
                values.append(abs(result.value))
                errors.append(result.error)
                self.logger.debug(f"λ = {lam:g}: |I| = {abs(result.value):.4e}，{result.panels} 段")
        except (ValueError, FloatingPointError) as e:
            self.log_failure("振荡积分求积", e)
            raise OracleError("振荡积分求积失败", e) from e

        fit = self.fit(scales, values, errors, dropped=dropped)
        self.logger.info(f"ρ̂0 = {fit.exponent:.3f}（{len(fit.used)} 个 λ）")
        return fit


def oscillatory_decay(
    f: MultiPoly,
    lambda_schedule: Optional[Tuple[int, int]] = None,
    radius: Optional[float] = None,
    config: Optional[Dict] = None
) -> SlopeFit:
    return OscillatoryOracle(0, config).run(f, lambda_schedule, radius)
