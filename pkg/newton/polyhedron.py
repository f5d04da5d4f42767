# polyhedron.py
from dataclasses import dataclass
from fractions import Fraction
import logging
import math
from typing import Dict, List, Sequence, Tuple, Union

from algebra.exponents import Exponent, as_exponent, format_exponent, minimal_elements
from algebra.polynomial import MultiPoly
from algebra.series import PuiseuxSeries
from .simplex import linprog_exact

logger = logging.getLogger(__name__)

# 有理数或 math.inf
Extended = Union[Fraction, float]


def extended_inverse(value: Extended) -> Extended:
    """1/value，约定 1/0 = inf、1/inf = 0"""
    if value == math.inf:
        return Fraction(0)
    if value == 0:
        return math.inf
    return 1 / Fraction(value)


def format_extended(value: Extended) -> str:
    return "inf" if value == math.inf else str(value)


@dataclass(frozen=True)
class NewtonPolyhedron:
    """
    牛顿多面体，只存极小生成元
    表示集合为 conv(∪ (p + 非负象限))
    """
    nvars: int
    generators: Tuple[Exponent, ...]

    def __post_init__(self):
        if not self.generators:
            raise ValueError("牛顿多面体至少需要一个生成元")
        gens = [as_exponent(g) for g in self.generators]
        for g in gens:
            if len(g) != self.nvars:
                raise ValueError(f"生成元 {format_exponent(g)} 维数不是 {self.nvars}")
            if any(x < 0 for x in g):
                raise ValueError(f"生成元 {format_exponent(g)} 含负分量")
        object.__setattr__(self, "generators", tuple(minimal_elements(gens)))

    def contains(self, point: Sequence) -> bool:
        """点是否属于多面体（精确 LP 可行性）"""
        return hull_contains(self.generators, as_exponent(point))

    def extreme_generators(self) -> Tuple[Exponent, ...]:
        """去掉落在其余生成元凸包 + 象限内的生成元"""
        gens = list(self.generators)
        kept: List[Exponent] = []
        for idx, g in enumerate(gens):
            others = [h for k, h in enumerate(gens) if k != idx and (h in kept or k > idx)]
            if others and hull_contains(others, g):
                continue
            kept.append(g)
        return tuple(kept)

    def project(self, j: int) -> "NewtonPolyhedron":
        """π_j: (x, x_{n+1}) -> (x_j, x_{n+1})，j 从 1 开始"""
        n = self.nvars - 1
        if not 1 <= j <= n:
            raise ValueError(f"投影下标 {j} 超出范围 1..{n}")
        return NewtonPolyhedron(2, tuple((g[j - 1], g[-1]) for g in self.generators))

    def to_dict(self) -> Dict:
        return {
            "nvars": self.nvars,
            "generators": [[str(x) for x in g] for g in self.generators],
        }


def hull_contains(generators: Sequence[Exponent], point: Exponent) -> bool:
    """point ∈ conv(generators) + 非负象限：存在 λ>=0, Σλ=1, Σλ p <= point"""
    k = len(generators)
    dim = len(point)
    a_ub = [[g[i] for g in generators] for i in range(dim)]
    result = linprog_exact([0] * k, a_ub=a_ub, b_ub=list(point), a_eq=[[1] * k], b_eq=[1])
    return result.is_optimal


def np_from_terms(p: Union[MultiPoly, PuiseuxSeries]) -> NewtonPolyhedron:
    """多项式或级数的牛顿多面体（极小指数即生成元）"""
    if p.is_zero():
        raise ValueError("零多项式没有牛顿多面体")
    if not p.constant_term().is_zero():
        raise ValueError("输入在原点不为零，牛顿多面体不含有意义的奇点信息")
    exponents = [as_exponent(e) for e in p.terms]
    return NewtonPolyhedron(p.nvars, tuple(exponents))


def newton_distance_exponent(np_: NewtonPolyhedron) -> Tuple[Fraction, Extended]:
    """
    牛顿距离 d0 = min{d : d·1 ∈ NP} 与牛顿指数 δ0 = 1/d0
    LP: min d, Σλ_k p_k(i) − d <= 0, Σλ = 1
    """
    gens = np_.generators
    k = len(gens)
    c = [0] * k + [1]
    a_ub = [[g[i] for g in gens] + [-1] for i in range(np_.nvars)]
    a_eq = [[1] * k + [0]]
    result = linprog_exact(c, a_ub=a_ub, b_ub=[0] * np_.nvars, a_eq=a_eq, b_eq=[1])
    if not result.is_optimal:
        raise RuntimeError(f"牛顿距离 LP 异常: {result.status}")
    d0 = result.value
    logger.debug(f"牛顿距离 d0={d0}（{k} 个生成元）")
    return d0, extended_inverse(d0)


def projected_exponent(np_: NewtonPolyhedron, j: int) -> Extended:
    """
    第 j 个投影牛顿指数 max{t : (1/t, 1/t) ∈ π_j(NP)}（j 从 1 开始）
    投影后的生成元若落在原点，投影多面体是整个象限，指数为 inf
    """
    projected = np_.project(j)
    return newton_distance_exponent(projected)[1]


def generalized_exponent(np_: NewtonPolyhedron) -> Extended:
    """n 个投影指数中的最小者"""
    return min(projected_exponent(np_, j) for j in range(1, np_.nvars))
