# simplex.py
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
import logging
from typing import List, Optional, Sequence, Tuple

logger = logging.getLogger(__name__)

Matrix = Sequence[Sequence]


class LPStatus(str, Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LPResult:
    status: LPStatus
    value: Optional[Fraction] = None
    x: Tuple[Fraction, ...] = ()

    @property
    def is_optimal(self) -> bool:
        return self.status == LPStatus.OPTIMAL


class ExactSimplex:
    """
    有理数上的两阶段单纯形法（Bland 规则保证终止）
    标准形: min c·x, A x = b, x >= 0
    """

    def __init__(self, max_iterations: int = 10000):
        self.max_iterations = max_iterations
        self.logger = logging.getLogger(__name__)

    def solve(self, c: Sequence, a_eq: Matrix, b_eq: Sequence) -> LPResult:
        nvars = len(c)
        rows = [[Fraction(v) for v in row] for row in a_eq]
        rhs = [Fraction(v) for v in b_eq]
        for i, row in enumerate(rows):
            if len(row) != nvars:
                raise ValueError(f"约束第 {i} 行长度 {len(row)} 与变量数 {nvars} 不一致")
            if rhs[i] < 0:
                rows[i] = [-v for v in row]
                rhs[i] = -rhs[i]
        m = len(rows)
        if m == 0:
            if any(Fraction(v) < 0 for v in c):
                return LPResult(LPStatus.UNBOUNDED)
            return LPResult(LPStatus.OPTIMAL, Fraction(0), tuple(Fraction(0) for _ in range(nvars)))

        # 第一阶段：每行一个人工变量
        width = nvars + m
        tableau = [rows[i] + [Fraction(int(i == k)) for k in range(m)] + [rhs[i]] for i in range(m)]
        basis = [nvars + i for i in range(m)]
        phase1_cost = [Fraction(0)] * nvars + [Fraction(1)] * m
        status = self._optimize(tableau, basis, phase1_cost, allowed=range(width))
        if status != LPStatus.OPTIMAL:
            # 第一阶段目标有下界 0，不会无界
            raise RuntimeError("第一阶段单纯形异常终止")
        infeasibility = sum((tableau[i][-1] for i in range(m) if basis[i] >= nvars), Fraction(0))
        if infeasibility > 0:
            self.logger.debug(f"线性规划不可行（人工变量和 {infeasibility}）")
            return LPResult(LPStatus.INFEASIBLE)

        # 把仍在基中的人工变量换出；换不出的行是冗余约束
        i = 0
        while i < len(tableau):
            if basis[i] < nvars:
                i += 1
                continue
            pivot_col = next((j for j in range(nvars) if tableau[i][j] != 0), None)
            if pivot_col is None:
                del tableau[i]
                del basis[i]
                continue
            self._pivot(tableau, basis, i, pivot_col)
            i += 1

        cost = [Fraction(v) for v in c] + [Fraction(0)] * m
        status = self._optimize(tableau, basis, cost, allowed=range(nvars))
        if status == LPStatus.UNBOUNDED:
            return LPResult(LPStatus.UNBOUNDED)
        x = [Fraction(0)] * nvars
        for row, var in zip(tableau, basis):
            x[var] = row[-1]
        value = sum((Fraction(ci) * xi for ci, xi in zip(c, x)), Fraction(0))
        return LPResult(LPStatus.OPTIMAL, value, tuple(x))

    def _optimize(self, tableau: List[List[Fraction]], basis: List[int],
                  cost: List[Fraction], allowed) -> LPStatus:
        allowed = list(allowed)
        for _ in range(self.max_iterations):
            entering = None
            for j in allowed:
                if j in basis:
                    continue
                reduced = cost[j] - sum((cost[b] * row[j] for row, b in zip(tableau, basis)), Fraction(0))
                if reduced < 0:
                    entering = j
                    break
            if entering is None:
                return LPStatus.OPTIMAL
            leaving = None
            best = None
            for i, row in enumerate(tableau):
                if row[entering] > 0:
                    ratio = row[-1] / row[entering]
                    if best is None or ratio < best or (ratio == best and basis[i] < basis[leaving]):
                        best = ratio
                        leaving = i
            if leaving is None:
                return LPStatus.UNBOUNDED
            self._pivot(tableau, basis, leaving, entering)
        raise RuntimeError(f"单纯形迭代超过上限 {self.max_iterations}")

    @staticmethod
    def _pivot(tableau: List[List[Fraction]], basis: List[int], row_idx: int, col: int) -> None:
        pivot_row = tableau[row_idx]
        factor = pivot_row[col]
        tableau[row_idx] = pivot_row = [v / factor for v in pivot_row]
        for i, row in enumerate(tableau):
            if i != row_idx and row[col] != 0:
                mult = row[col]
                tableau[i] = [a - mult * b for a, b in zip(row, pivot_row)]
        basis[row_idx] = col


def linprog_exact(
    c: Sequence,
    a_ub: Optional[Matrix] = None,
    b_ub: Optional[Sequence] = None,
    a_eq: Optional[Matrix] = None,
    b_eq: Optional[Sequence] = None,
    maximize: bool = False
) -> LPResult:
    """
    精确线性规划（变量均非负）
    不等式 a_ub x <= b_ub 通过松弛变量化为等式；返回的 x 只含原变量
    """
    nvars = len(c)
    a_ub = [list(r) for r in (a_ub or [])]
    b_ub = list(b_ub or [])
    a_eq = [list(r) for r in (a_eq or [])]
    b_eq = list(b_eq or [])
    nslack = len(a_ub)
    rows = []
    rhs = []
    for k, (row, b) in enumerate(zip(a_ub, b_ub)):
        rows.append(list(row) + [int(i == k) for i in range(nslack)])
        rhs.append(b)
    for row, b in zip(a_eq, b_eq):
        rows.append(list(row) + [0] * nslack)
        rhs.append(b)
    sign = -1 if maximize else 1
    cost = [sign * Fraction(v) for v in c] + [0] * nslack
    result = ExactSimplex().solve(cost, rows, rhs)
    if not result.is_optimal:
        return result
    return LPResult(result.status, sign * result.value, result.x[:nvars])
