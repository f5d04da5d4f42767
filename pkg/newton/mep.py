# mep.py
from dataclasses import dataclass, field
from fractions import Fraction
import logging
import math
from typing import Dict, List, Optional, Sequence, Tuple

from algebra.exceptions import Incomparable
from algebra.exponents import (
    Exponent, add, as_exponent, format_exponent, lt, order_exponents, scale, sub, zero_exponent
)
from .polyhedron import Extended, NewtonPolyhedron, extended_inverse, format_extended

logger = logging.getLogger(__name__)

Vertex = Tuple[Exponent, Fraction]


@dataclass(frozen=True)
class MonotoneEdgePath:
    """单调边路径：μ_i 严格递增（偏序），ν_i 严格递减"""
    vertices: Tuple[Vertex, ...]

    def __post_init__(self):
        if not self.vertices:
            raise ValueError("单调边路径至少需要一个顶点")
        cleaned = tuple((as_exponent(mu), Fraction(nu)) for mu, nu in self.vertices)
        for (mu1, nu1), (mu2, nu2) in zip(cleaned, cleaned[1:]):
            if not lt(mu1, mu2):
                raise Incomparable((mu1, mu2))
            if not nu1 > nu2:
                raise ValueError(f"末坐标必须严格递减: {nu1} -> {nu2}")
        object.__setattr__(self, "vertices", cleaned)

    @property
    def nvars(self) -> int:
        return len(self.vertices[0][0])

    @property
    def points(self) -> List[Exponent]:
        return [mu + (nu,) for mu, nu in self.vertices]

    def to_dict(self) -> Dict:
        return {"vertices": [[str(x) for x in p] for p in self.points]}


@dataclass(frozen=True)
class RootGroup:
    """同一首项指数 α 的根组；leading 为各根（按重数展开）的首项系数"""
    alpha: Exponent
    multiplicity: int
    leading: Optional[Tuple[object, ...]] = None

    def __post_init__(self):
        object.__setattr__(self, "alpha", as_exponent(self.alpha))
        if self.multiplicity <= 0:
            raise ValueError(f"根组重数必须为正: {self.multiplicity}")
        if self.leading is not None:
            object.__setattr__(self, "leading", tuple(self.leading))
            if len(self.leading) != self.multiplicity:
                raise ValueError(f"首项系数个数 {len(self.leading)} 与重数 {self.multiplicity} 不一致")


@dataclass(frozen=True)
class FactoredRootData:
    """
    F∘Φ = unit · y^β · y_{n+1}^{β_{n+1}} · Π (y_{n+1} − r_i) 的指数数据
    groups 按 α 升序（必须全序）
    """
    beta: Exponent
    beta_last: int
    groups: Tuple[RootGroup, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "beta", as_exponent(self.beta))
        if self.beta_last < 0:
            raise ValueError("β_{n+1} 必须非负")
        groups = tuple(g if isinstance(g, RootGroup) else RootGroup(*g) for g in self.groups)
        for g in groups:
            if len(g.alpha) != len(self.beta):
                raise ValueError(f"根指数 {format_exponent(g.alpha)} 维数与 β 不一致")
            if all(x == 0 for x in g.alpha):
                raise ValueError("根的首项指数必须非零（远根应并入单位因子）")
        alphas = [g.alpha for g in groups]
        order = order_exponents(alphas)
        for a, b in zip(order, order[1:]):
            if alphas[a] == alphas[b]:
                raise ValueError(f"根组指数重复: {format_exponent(alphas[a])}")
        object.__setattr__(self, "groups", tuple(groups[i] for i in order))

    @property
    def nvars(self) -> int:
        return len(self.beta)

    @property
    def total_roots(self) -> int:
        return sum(g.multiplicity for g in self.groups)

    def vertex(self, ell: int) -> Vertex:
        """(A_ℓ, B_ℓ)，ℓ = 0..L"""
        a = self.beta
        for g in self.groups[:ell]:
            a = add(a, scale(g.alpha, g.multiplicity))
        b = self.beta_last + sum(g.multiplicity for g in self.groups[ell:])
        return a, Fraction(b)


def mep_from_factored(f: FactoredRootData) -> MonotoneEdgePath:
    """A_ℓ = β + Σ_{k<=ℓ} m_k α_k，B_ℓ = β_{n+1} + Σ_{k>ℓ} m_k"""
    path = MonotoneEdgePath(tuple(f.vertex(ell) for ell in range(len(f.groups) + 1)))
    logger.debug(f"由根数据得到 {len(path.vertices)} 个顶点的单调边路径")
    return path


def np_from_mep(path: MonotoneEdgePath) -> NewtonPolyhedron:
    """路径顶点加非负象限的凸包"""
    return NewtonPolyhedron(path.nvars + 1, tuple(path.points))


def mep_slice(path: MonotoneEdgePath, c) -> Optional[Exponent]:
    """
    高度 c 处的水平截面为 (μ(c), c) + 水平象限，返回 μ(c)
    c 低于最后一个顶点时截面为空，返回 None
    """
    c = Fraction(c)
    vertices = path.vertices
    if c >= vertices[0][1]:
        return vertices[0][0]
    for (mu1, nu1), (mu2, nu2) in zip(vertices, vertices[1:]):
        if nu2 <= c <= nu1:
            t = (nu1 - c) / (nu1 - nu2)
            return add(mu1, scale(sub(mu2, mu1), t))
    return None


def is_mep_defined(np_: NewtonPolyhedron) -> Optional[MonotoneEdgePath]:
    """若极端生成元能按末坐标排成单调边路径，返回该路径"""
    extreme = sorted(np_.extreme_generators(), key=lambda g: g[-1], reverse=True)
    vertices = [(g[:-1], g[-1]) for g in extreme]
    for (mu1, nu1), (mu2, nu2) in zip(vertices, vertices[1:]):
        if not (lt(mu1, mu2) and nu1 > nu2):
            return None
    return MonotoneEdgePath(tuple(vertices))


@dataclass(frozen=True)
class Delta0Term:
    kind: str  # edge | head | tail
    edge: Optional[int]
    j: Optional[int]
    value: Extended


@dataclass(frozen=True)
class Delta0Table:
    """δ0 的逐项表；achieving 列出所有取到最小值的项"""
    value: Extended
    terms: Tuple[Delta0Term, ...]
    achieving: Tuple[Delta0Term, ...] = field(default=())

    def edge_value(self, ell: int, j: int) -> Extended:
        for term in self.terms:
            if term.kind == "edge" and term.edge == ell and term.j == j:
                return term.value
        raise KeyError((ell, j))

    def to_dict(self) -> Dict:
        def row(t: Delta0Term) -> Dict:
            return {"kind": t.kind, "edge": t.edge, "j": t.j, "value": format_extended(t.value)}
        return {
            "delta0": format_extended(self.value),
            "terms": [row(t) for t in self.terms],
            "achieving": [row(t) for t in self.achieving],
        }


def edge_term(alpha_j: Fraction, a_j: Fraction, b: Fraction) -> Extended:
    """(α(j) + 1) / (A(j) + α(j) B)，分母为零时为 inf"""
    denominator = a_j + alpha_j * b
    if denominator == 0:
        return math.inf
    return (alpha_j + 1) / denominator


def delta0_formula(f: FactoredRootData) -> Delta0Table:
    """
    闭式 δ0：各边项、首端竖直面项 1/β_j、末端水平面项 1/β_{n+1} 取最小
    L = 0 时退化为 min_j 1/max(β_j, β_{n+1})
    """
    n = f.nvars
    terms: List[Delta0Term] = []
    for ell, group in enumerate(f.groups, start=1):
        a_ell, b_ell = f.vertex(ell)
        for j in range(1, n + 1):
            value = edge_term(group.alpha[j - 1], a_ell[j - 1], b_ell)
            terms.append(Delta0Term("edge", ell, j, value))
    for j in range(1, n + 1):
        terms.append(Delta0Term("head", None, j, extended_inverse(f.beta[j - 1])))
    terms.append(Delta0Term("tail", None, None, extended_inverse(Fraction(f.beta_last))))
    value = min(t.value for t in terms)
    achieving = tuple(t for t in terms if t.value == value)
    logger.debug(f"闭式 δ0 = {format_extended(value)}，取到最小值的项 {len(achieving)} 个")
    return Delta0Table(value=value, terms=tuple(terms), achieving=achieving)
