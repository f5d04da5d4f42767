# resultant.py
from dataclasses import dataclass
import logging
from typing import Dict, List, Optional

from algebra.polynomial import MultiPoly
from .gcd import derivative, exact_divide, leading_coefficient

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PolyInLast:
    """
    把多元多项式看作区分变量 var（默认最后一个）的一元多项式
    系数 c_ν 仍是同样变量数、var 次数为 0 的多项式
    """
    poly: MultiPoly
    var: Optional[int] = None

    def __post_init__(self):
        if self.var is None:
            object.__setattr__(self, "var", self.poly.nvars - 1)

    @property
    def nvars(self) -> int:
        return self.poly.nvars

    @property
    def degree(self) -> int:
        return self.poly.degree(self.var)

    @property
    def coefficients(self) -> Dict[int, MultiPoly]:
        return self.poly.coefficients_in(self.var)

    def coefficient(self, k: int) -> MultiPoly:
        return self.coefficients.get(k, MultiPoly.zero(self.nvars))

    @property
    def leading(self) -> MultiPoly:
        return leading_coefficient(self.poly, self.var)

    def is_monic(self) -> bool:
        return self.leading == 1

    def is_weierstrass(self) -> bool:
        """首一且其余系数在原点为零"""
        if not self.is_monic():
            return False
        d = self.degree
        return all(c.constant_term().is_zero() for k, c in self.coefficients.items() if k < d)

    def derivative(self) -> "PolyInLast":
        return PolyInLast(derivative(self.poly, self.var), self.var)

    def at_zero(self) -> MultiPoly:
        """x_{n+1} = 0 处的值（即 c_0）"""
        return self.coefficient(0)

    def base_restriction(self) -> MultiPoly:
        """F(0, …, 0, x_{n+1})"""
        return MultiPoly(self.nvars, {
            exp: c for exp, c in self.poly.terms.items()
            if all(e == 0 for j, e in enumerate(exp) if j != self.var)
        })

    def format(self, names=None) -> str:
        return self.poly.format(names)


def sylvester_matrix(p: PolyInLast, q: PolyInLast) -> List[List[MultiPoly]]:
    """(N+M)×(N+M) Sylvester 矩阵，N = deg p, M = deg q"""
    n, m = p.degree, q.degree
    size = n + m
    zero = MultiPoly.zero(p.nvars)
    pc = [p.coefficient(n - k) for k in range(n + 1)]
    qc = [q.coefficient(m - k) for k in range(m + 1)]
    rows: List[List[MultiPoly]] = []
    for shift in range(m):
        rows.append([pc[col - shift] if 0 <= col - shift <= n else zero for col in range(size)])
    for shift in range(n):
        rows.append([qc[col - shift] if 0 <= col - shift <= m else zero for col in range(size)])
    return rows


def bareiss_determinant(matrix: List[List[MultiPoly]]) -> MultiPoly:
    """多项式矩阵的无分式 Bareiss 消元行列式（每步整除）"""
    size = len(matrix)
    if size == 0:
        raise ValueError("空矩阵")
    nvars = matrix[0][0].nvars
    work = [list(row) for row in matrix]
    sign = 1
    previous = MultiPoly.constant(nvars, 1)
    for k in range(size - 1):
        if work[k][k].is_zero():
            swap = next((i for i in range(k + 1, size) if not work[i][k].is_zero()), None)
            if swap is None:
                return MultiPoly.zero(nvars)
            work[k], work[swap] = work[swap], work[k]
            sign = -sign
        pivot = work[k][k]
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                numerator = work[i][j] * pivot - work[i][k] * work[k][j]
                work[i][j] = exact_divide(numerator, previous)
            work[i][k] = MultiPoly.zero(nvars)
        previous = pivot
    det = work[size - 1][size - 1]
    return det if sign > 0 else -det


def sylvester_resultant(p: PolyInLast, q: PolyInLast) -> MultiPoly:
    """Res(p, q) = det Sylvester(p, q)"""
    if p.poly.is_zero() or q.poly.is_zero():
        raise ValueError("结式的输入不能是零多项式")
    if p.var != q.var:
        raise ValueError(f"区分变量不一致: {p.var} 与 {q.var}")
    if p.degree + q.degree == 0:
        return MultiPoly.constant(p.nvars, 1)
    return bareiss_determinant(sylvester_matrix(p, q))


def discriminant(p: PolyInLast) -> MultiPoly:
    """Δ_P = (−1)^{M(M−1)/2} a^{-1} Res(P, P')，除法必须整除"""
    m = p.degree
    if m < 1:
        raise ValueError("判别式要求次数至少为 1")
    if m == 1:
        return MultiPoly.constant(p.nvars, 1)
    res = sylvester_resultant(p, p.derivative())
    delta = exact_divide(res, p.leading)
    if (m * (m - 1) // 2) % 2:
        delta = -delta
    logger.debug(f"{m} 次多项式的判别式有 {len(delta.terms)} 项")
    return delta
