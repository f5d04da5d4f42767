# base_oracle.py
from abc import ABC, abstractmethod
from dataclasses import dataclass
import logging
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd
from sklearn.linear_model import LinearRegression
from tqdm import tqdm

from algebra.polynomial import MultiPoly
from config import VERIFY_CONFIG
from .exceptions import Inconclusive
from .sampling import shell_streams

MIN_SCALES = 5


@dataclass(frozen=True)
class SlopeFit:
    """
    对数-对数最小二乘拟合
    sublevel: log|E_ε| 对 log ε，指数为斜率 ν̂0
    oscillatory: log|I(λ)| 对 log λ，指数为斜率的相反数 ρ̂0
    """
    kind: str
    scales: Tuple[float, ...]
    values: Tuple[float, ...]
    stderrs: Tuple[float, ...]
    used: Tuple[int, ...]
    slope: float
    intercept: float
    exponent: float
    band: Tuple[float, float]
    residual: float
    log_flag: bool
    dropped: Tuple[float, ...] = ()
    seed: Optional[int] = None
    notes: Tuple[str, ...] = ()

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({"scale": self.scales, "value": self.values, "stderr": self.stderrs})

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kind": self.kind,
            "exponent": self.exponent,
            "slope": self.slope,
            "intercept": self.intercept,
            "band": list(self.band),
            "residual": self.residual,
            "log_flag": self.log_flag,
            "points": self.to_frame().to_dict(orient="records"),
            "used": list(self.used),
            "dropped": list(self.dropped),
            "seed": self.seed,
            "notes": list(self.notes),
        }


def dyadic_schedule(first: int, last: int, sign: int = -1) -> List[float]:
    """2^{sign·first}, …, 2^{sign·last}"""
    if last < first:
        raise ValueError(f"尺度区间为空: {first}..{last}")
    return [2.0 ** (sign * j) for j in range(first, last + 1)]


def fit_loglog(
    kind: str,
    scales: Sequence[float],
    values: Sequence[float],
    stderrs: Sequence[float],
    trim: bool = True,
    threshold: float = 0.02,
    dropped: Iterable[float] = (),
    seed: Optional[int] = None,
    notes: Iterable[str] = ()
) -> SlopeFit:
    """
    加权最小二乘（权重为相对标准误平方的倒数），可去掉两端尺度
    残差为拟合残差的均方根；超过阈值且大于统计误差时标记对数修正
    """
    scales = np.asarray(scales, dtype=float)
    values = np.asarray(values, dtype=float)
    stderrs = np.asarray(stderrs, dtype=float)
    used = np.arange(scales.size)
    if trim and scales.size - 2 >= MIN_SCALES:
        used = used[1:-1]
    if used.size < MIN_SCALES:
        raise Inconclusive(f"{kind}: 只有 {used.size} 个有效尺度，至少需要 {MIN_SCALES} 个",
                           {"scales": scales.tolist()})

    x = np.log(scales[used])
    y = np.log(values[used])
    relative = np.maximum(stderrs[used] / values[used], 1e-3)
    weights = 1.0 / relative ** 2
    model = LinearRegression()
    model.fit(x.reshape(-1, 1), y, sample_weight=weights)
    slope = float(model.coef_[0])
    intercept = float(model.intercept_)
    residuals = y - model.predict(x.reshape(-1, 1))
    residual = float(np.sqrt(np.mean(residuals ** 2)))
    # 加权斜率标准误
    xbar = np.average(x, weights=weights)
    spread = np.sum(weights * (x - xbar) ** 2)
    dof = max(used.size - 2, 1)
    se = float(np.sqrt(np.sum(weights * residuals ** 2) / dof / spread)) if spread > 0 else float("inf")
    log_flag = residual > threshold and residual > 2 * float(np.mean(relative))

    exponent = -slope if kind == "oscillatory" else slope
    return SlopeFit(
        kind=kind,
        scales=tuple(scales.tolist()),
        values=tuple(values.tolist()),
        stderrs=tuple(stderrs.tolist()),
        used=tuple(int(i) for i in used),
        slope=slope,
        intercept=intercept,
        exponent=exponent,
        band=(exponent - 2 * se, exponent + 2 * se),
        residual=residual,
        log_flag=bool(log_flag),
        dropped=tuple(dropped),
        seed=seed,
        notes=tuple(notes),
    )


class BaseOracle(ABC):
    """数值预言机基类：持有种子与配置，提供子随机流、进度条和拟合"""

    kind = "oracle"

    def __init__(self, seed: int = 0, config: Optional[Dict[str, Any]] = None):
        self.seed = int(seed)
        self.config = {**VERIFY_CONFIG, **(config or {})}
        self.logger = logging.getLogger(__name__)

    @abstractmethod
    def run(self, f: MultiPoly, **kwargs) -> Any:
        """
        对多项式 f 运行预言机
        Returns:
            标准化的结果对象（SlopeFit 或扫描结果）
        """

    def streams(self, count: int) -> List[np.random.Generator]:
        return shell_streams(self.seed, count)

    def progress(self, iterable: Iterable, desc: str) -> Iterable:
        # 非终端时 tqdm 自动关闭
        return tqdm(iterable, desc=desc, disable=None, leave=False)

    def fit(self, scales, values, stderrs, dropped=(), notes=()) -> SlopeFit:
        return fit_loglog(
            self.kind, scales, values, stderrs,
            trim=self.config["trim_extremes"],
            threshold=self.config["residual_threshold"],
            dropped=dropped, seed=self.seed, notes=notes,
        )

    def log_failure(self, context: str, error: Exception) -> None:
        self.logger.error(f"[{type(self).__name__}] {context} 失败: {error}")
