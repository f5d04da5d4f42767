# lp_bound.py
"""
单项式次水平集 E_ε = {x ∈ (0,1]^n : x^{p_j} <= ε/(C d)} 的体积下界
对数坐标下 Ω = {y <= 0, y·p_j <= −1}，M(𝟏) = sup_Ω y·𝟏
|E_ε| >= n^{-n} (ε/(C d))^{−M(𝟏)}（差一个只依赖维数的常数），且 M(𝟏) >= −δ0
"""
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
import logging
import math
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from algebra.exponents import Exponent, format_exponent, minimal_elements
from algebra.polynomial import MultiPoly
from config import LP_CONFIG
from newton.polyhedron import Extended, format_extended, newton_distance_exponent, np_from_terms
from newton.simplex import linprog_exact
from .exceptions import OracleError

logger = logging.getLogger(__name__)


def minimal_exponents(p: MultiPoly) -> List[Exponent]:
    """支撑集在分量偏序下的极小元"""
    if p.is_zero():
        raise ValueError("零多项式没有支撑集")
    return minimal_elements(p.terms.keys())


def _dot(a: Sequence, b: Sequence) -> Fraction:
    return sum((Fraction(x) * Fraction(y) for x, y in zip(a, b)), Fraction(0))


@dataclass(frozen=True)
class CubeCheck:
    """立方体 Q = {w_j − s <= y_j <= w_j}，s = 1/(n ℓ)，ℓ 为 log(Cd/ε) 的有理替代值"""
    side: Fraction
    log_parameter: Fraction
    corners: int
    failures: Tuple[Tuple[Fraction, ...], ...]

    @property
    def passed(self) -> bool:
        return not self.failures


@dataclass(frozen=True)
class LPBound:
    exponents: Tuple[Exponent, ...]
    m_one: Fraction
    optimizer: Tuple[Fraction, ...]
    dual_beta: Tuple[Fraction, ...]
    dual_sum: Fraction
    equality_sup: Optional[Fraction]
    delta0: Extended
    constant: float
    cube: CubeCheck

    @property
    def nvars(self) -> int:
        return len(self.optimizer)

    @property
    def implied_exponent(self) -> Fraction:
        return -self.m_one

    @property
    def holds(self) -> bool:
        return self.delta0 == math.inf or self.m_one >= -self.delta0

    def constraints(self) -> List[str]:
        names = [f"y{j + 1}" for j in range(self.nvars)]
        rows = [f"{n} <= 0" for n in names]
        for p in self.exponents:
            terms = " + ".join(f"{e}*{n}" for e, n in zip(p, names) if e)
            rows.append(f"{terms} <= -1")
        return rows

    def lower_bound(self, eps: float) -> float:
        """n^{-n} (ε/(C d))^{−M(𝟏)}"""
        n = self.nvars
        scale = eps / (self.constant * len(self.exponents))
        return float(n) ** (-n) * scale ** float(self.implied_exponent)

    def in_sublevel(self, points: np.ndarray, eps: float) -> np.ndarray:
        """点是否落在单项式次水平集 E_ε 中（只取 (0,1]^n 内的点）"""
        points = np.atleast_2d(np.asarray(points, dtype=float))
        bound = eps / (self.constant * len(self.exponents))
        inside = np.all((points > 0) & (points <= 1), axis=1)
        for p in self.exponents:
            inside &= np.prod(points ** np.asarray([float(e) for e in p]), axis=1) <= bound
        return inside

    def to_dict(self) -> Dict[str, Any]:
        return {
            "minimal_exponents": [format_exponent(p) for p in self.exponents],
            "omega": self.constraints(),
            "M_one": self.m_one,
            "optimizer": list(self.optimizer),
            "dual_beta": list(self.dual_beta),
            "dual_sum": self.dual_sum,
            "equality_sup": self.equality_sup,
            "delta0": format_extended(self.delta0),
            "holds": self.holds,
            "implied_exponent": self.implied_exponent,
            "constant_C": self.constant,
            "cube": {
                "side": self.cube.side,
                "log_parameter": self.cube.log_parameter,
                "corners": self.cube.corners,
                "passed": self.cube.passed,
            },
        }


def cube_corners_check(exponents: Sequence[Exponent], w: Sequence[Fraction], m_one: Fraction,
                       log_parameter: Fraction) -> CubeCheck:
    """逐个角点精确检验 Q ⊆ Ω̂ = {y ∈ Ω : M(𝟏) − 1/ℓ <= y·𝟏 <= M(𝟏)}"""
    n = len(w)
    side = 1 / (n * Fraction(log_parameter))
    failures = []
    count = 0
    for mask in product((0, 1), repeat=n):
        count += 1
        y = tuple(Fraction(wj) - side * m for wj, m in zip(w, mask))
        total = sum(y, Fraction(0))
        ok = all(v <= 0 for v in y)
        ok = ok and all(_dot(y, p) <= -1 for p in exponents)
        ok = ok and m_one - 1 / Fraction(log_parameter) <= total <= m_one
        if not ok:
            failures.append(y)
    return CubeCheck(side, Fraction(log_parameter), count, tuple(failures))


def lp_lower_bound(p: MultiPoly, log_parameter: Optional[Fraction] = None) -> LPBound:
    """
    精确 LP：z = −y >= 0，min Σz s.t. p_j·z >= 1，M(𝟏) = −min
    对偶 max Σβ s.t. Σβ_j p_j <= 𝟏 与之相等；等式约束版本 𝟏 = Σβ_j p_j 的上确界不超过 δ0
    """
    exponents = minimal_exponents(p)
    n = p.nvars
    if any(not any(e) for e in exponents):
        raise ValueError("F(0) ≠ 0：小 ε 时次水平集为空，没有下界可言")
    log_parameter = Fraction(log_parameter if log_parameter is not None else LP_CONFIG["log_parameter"])

    primal = linprog_exact([1] * n, a_ub=[[-e for e in q] for q in exponents], b_ub=[-1] * len(exponents))
    dual = linprog_exact([1] * len(exponents), a_ub=[[q[i] for q in exponents] for i in range(n)],
                         b_ub=[1] * n, maximize=True)
    if not (primal.is_optimal and dual.is_optimal):
        logger.error(f"LP 异常: 原问题 {primal.status}，对偶 {dual.status}")
        raise OracleError(f"LP 下界求解异常: {primal.status.value}/{dual.status.value}")
    m_one = -primal.value
    if dual.value != -m_one:
        logger.error(f"强对偶不成立: {dual.value} 与 {-m_one}")
        raise OracleError("原问题与对偶问题最优值不一致")
    equality = linprog_exact([1] * len(exponents), a_eq=[[q[i] for q in exponents] for i in range(n)],
                             b_eq=[1] * n, maximize=True)
    equality_sup = equality.value if equality.is_optimal else None

    w = tuple(-z for z in primal.x)
    delta0 = newton_distance_exponent(np_from_terms(p))[1]
    constant = float(sum(abs(complex(c)) for c in p.terms.values()))
    cube = cube_corners_check(exponents, w, m_one, log_parameter)
    bound = LPBound(
        exponents=tuple(exponents),
        m_one=m_one,
        optimizer=w,
        dual_beta=tuple(dual.x),
        dual_sum=dual.value,
        equality_sup=equality_sup,
        delta0=delta0,
        constant=constant,
        cube=cube,
    )
    logger.info(f"M(𝟏) = {m_one}，δ0 = {format_extended(delta0)}，立方体检验 {'通过' if cube.passed else '失败'}")
    if not bound.holds:
        logger.warning(f"M(𝟏) = {m_one} < −δ0 = −{format_extended(delta0)}")
    return bound
