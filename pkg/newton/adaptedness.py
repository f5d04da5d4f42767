# adaptedness.py
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
import logging
from typing import Dict, List, Tuple

from algebra.scalars import as_gauss
from .mep import FactoredRootData, delta0_formula
from .polyhedron import Extended, extended_inverse, format_extended

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class EdgeAdaptedness:
    edge: int
    kappa: int
    deltas: Tuple[Extended, ...]      # δ_ℓ(j)，j = 1..n
    bound: Extended                   # min_j δ_ℓ(j)^{-1}
    satisfied: bool
    main: bool
    position: str                     # main | left | right | none
    kappa_vs_delta0: bool             # κ_ℓ <= δ0^{-1}

    def to_dict(self) -> Dict:
        return {
            "edge": self.edge,
            "kappa": self.kappa,
            "deltas": [format_extended(d) for d in self.deltas],
            "bound": format_extended(self.bound),
            "satisfied": self.satisfied,
            "main": self.main,
            "position": self.position,
            "kappa_le_inverse_delta0": self.kappa_vs_delta0,
        }


@dataclass(frozen=True)
class AdaptednessReport:
    delta0: Extended
    edges: Tuple[EdgeAdaptedness, ...]
    adapted: bool

    def to_dict(self) -> Dict:
        return {
            "delta0": format_extended(self.delta0),
            "adapted": self.adapted,
            "edges": [e.to_dict() for e in self.edges],
        }


def _leading_key(value):
    exact = as_gauss(value, strict=False)
    if exact is not None:
        return ("exact", exact.re, exact.im)
    z = complex(value)
    return ("approx", round(z.real, 9), round(z.imag, 9))


def kappa(leading: Tuple[object, ...]) -> int:
    """同一首项系数的根的最大个数"""
    counts = Counter(_leading_key(c) for c in leading)
    return max(counts.values()) if counts else 0


def _is_main_edge(f: FactoredRootData, ell: int, d0: Fraction) -> bool:
    """存在 j 使 π_j(Γ_ℓ) 与对角线交于 (d0, d0)"""
    a0, b0 = f.vertex(ell - 1)
    a1, b1 = f.vertex(ell)
    if not b1 <= d0 <= b0:
        return False
    t = (b0 - d0) / (b0 - b1)
    return any(a0[j] + t * (a1[j] - a0[j]) == d0 for j in range(f.nvars))


def adaptedness_check(f: FactoredRootData) -> AdaptednessReport:
    """
    对每条边计算 κ_ℓ 与 δ_ℓ(j)，检验 κ_ℓ <= min_j δ_ℓ(j)^{-1}
    全部边成立时坐标系是可积意义下适配的
    """
    missing = [ell for ell, g in enumerate(f.groups, start=1) if g.leading is None]
    if missing:
        raise ValueError(f"根组 {missing} 缺少首项系数，无法计算 κ")
    table = delta0_formula(f)
    d0 = extended_inverse(table.value)
    mains: List[int] = []
    if table.value != float("inf"):
        mains = [ell for ell in range(1, len(f.groups) + 1) if _is_main_edge(f, ell, Fraction(d0))]

    edges: List[EdgeAdaptedness] = []
    for ell, group in enumerate(f.groups, start=1):
        deltas = tuple(table.edge_value(ell, j) for j in range(1, f.nvars + 1))
        bound = min(extended_inverse(d) for d in deltas)
        k = kappa(group.leading)
        if ell in mains:
            position = "main"
        elif not mains:
            position = "none"
        else:
            position = "left" if ell < min(mains) else "right"
        edges.append(EdgeAdaptedness(
            edge=ell,
            kappa=k,
            deltas=deltas,
            bound=bound,
            satisfied=k <= bound,
            main=ell in mains,
            position=position,
            kappa_vs_delta0=k <= d0,
        ))
        if k > d0 and position == "left":
            logger.info(f"主边左侧的边 {ell}: κ={k} > δ0^-1={format_extended(d0)}")
    adapted = all(e.satisfied for e in edges)
    return AdaptednessReport(delta0=table.value, edges=tuple(edges), adapted=adapted)
