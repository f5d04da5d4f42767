# squarefree.py
from dataclasses import dataclass
import logging
from typing import Dict, Tuple

from algebra.polynomial import MultiPoly
from .gcd import (
    content, derivative, exact_divide, leading_coefficient, normalize, poly_gcd, primitive_part
)
from .resultant import PolyInLast

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SquarefreeDecomposition:
    """G = content · Π factor^m（factor 关于区分变量本原且两两互素）"""
    part: PolyInLast
    factors: Tuple[Tuple[MultiPoly, int], ...]
    content: MultiPoly

    def multiplicities(self) -> Dict[str, int]:
        return {f.format(): m for f, m in self.factors}


def yun_decomposition(g: MultiPoly, var: int) -> Tuple[Tuple[MultiPoly, int], ...]:
    """Yun 无平方分解（输入关于 var 本原）"""
    factors = []
    dg = derivative(g, var)
    common = poly_gcd(g, dg)
    c = exact_divide(g, common)
    d = exact_divide(dg, common) - derivative(c, var)
    multiplicity = 1
    while c.degree(var) > 0:
        a = poly_gcd(c, d)
        if a.degree(var) > 0:
            factors.append((normalize(a), multiplicity))
        c = exact_divide(c, a)
        d = exact_divide(d, a) - derivative(c, var)
        multiplicity += 1
    return tuple(factors)


def squarefree_part(g: PolyInLast) -> SquarefreeDecomposition:
    """P = G / gcd(G, ∂G) 的本原部分，附带重数表"""
    if g.poly.is_zero():
        raise ValueError("零多项式没有无平方部分")
    var = g.var
    cont = content(g.poly, var)
    primitive = exact_divide(g.poly, cont)
    if primitive.degree(var) == 0:
        return SquarefreeDecomposition(PolyInLast(MultiPoly.constant(g.nvars, 1), var), (), cont)
    factors = yun_decomposition(primitive, var)
    part = exact_divide(primitive, poly_gcd(primitive, derivative(primitive, var)))
    part = primitive_part(part, var)
    _, lead = leading_coefficient(part, var).leading_term()
    part = part.scale(1 / lead)
    logger.debug(f"无平方分解: {len(factors)} 个因式，最高重数 {max(m for _, m in factors)}")
    return SquarefreeDecomposition(PolyInLast(part, var), factors, cont)
