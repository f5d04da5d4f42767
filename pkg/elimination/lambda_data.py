# lambda_data.py
from dataclasses import dataclass
from fractions import Fraction
import logging
import math
from typing import Dict, Optional, Tuple, Union

import numpy as np

from algebra.polynomial import MultiPoly
from algebra.scalars import GaussRational, ONE
from .exceptions import NeedsRotation
from .resultant import PolyInLast, discriminant
from .squarefree import SquarefreeDecomposition, squarefree_part

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LambdaData:
    """
    Λ = c · Δ_P（非首一时再乘 P 的首项系数），化为本原形式
    raw = constant · lam
    """
    beta_last: int
    part: PolyInLast
    c: MultiPoly
    delta: MultiPoly
    lam: MultiPoly
    constant: GaussRational
    leading: Optional[MultiPoly]
    decomposition: SquarefreeDecomposition

    @property
    def base_nvars(self) -> int:
        return self.lam.nvars - 1

    def base_lambda(self) -> MultiPoly:
        """去掉区分变量后的 Λ（n 个变量）"""
        return self.lam.drop_variable(self.part.var)

    def to_dict(self) -> Dict:
        return {
            "beta_last": self.beta_last,
            "squarefree_part": self.part.format(),
            "c": self.c.format(),
            "discriminant": self.delta.format(),
            "lambda": self.lam.format(),
            "constant": str(self.constant),
            "leading_coefficient": self.leading.format() if self.leading is not None else None,
            "multiplicities": self.decomposition.multiplicities(),
        }


def make_primitive(p: MultiPoly) -> Tuple[MultiPoly, GaussRational]:
    """
    去掉常数因子：实有理系数时化为互素整数且首项为正，否则首项系数化为 1
    返回 (本原多项式, 常数)，p = 常数 · 本原多项式
    """
    if p.is_zero():
        raise ValueError("零多项式不能本原化")
    _, lead = p.leading_term()
    if p.is_real():
        coeffs = [c.re for c in p.terms.values()]
        den = math.lcm(*(c.denominator for c in coeffs))
        num = math.gcd(*(int(c * den) for c in coeffs))
        constant = Fraction(num, den) * (1 if lead.re > 0 else -1)
        return p.scale(ONE / GaussRational(constant)), GaussRational(constant)
    return p.scale(ONE / lead), lead


def split_last_power(f: PolyInLast) -> Tuple[int, MultiPoly]:
    """F = x_{n+1}^β · G，G(x, 0) ≢ 0"""
    beta = min(exp[f.var] for exp in f.poly.terms)
    shifted = {}
    for exp, coeff in f.poly.terms.items():
        new_exp = list(exp)
        new_exp[f.var] -= beta
        shifted[tuple(new_exp)] = coeff
    return beta, MultiPoly(f.nvars, shifted)


def lambda_construct(f: Union[MultiPoly, PolyInLast]) -> LambdaData:
    """
    Λ 的构造：分出 x_{n+1}^{β_{n+1}}，余下部分取无平方部分 P，
    c = G(x, 0)，Λ = c · Δ_P（P 非首一时再乘首项系数）
    """
    if isinstance(f, MultiPoly):
        f = PolyInLast(f)
    if f.poly.is_zero():
        raise ValueError("零多项式")
    if f.base_restriction().is_zero():
        logger.error("F 在 x_{n+1} 轴上恒为零")
        raise NeedsRotation()
    beta, g = split_last_power(f)
    g_last = PolyInLast(g, f.var)
    decomposition = squarefree_part(g_last)
    part = decomposition.part
    c = g_last.at_zero()
    if part.degree >= 1:
        delta = discriminant(part)
    else:
        delta = MultiPoly.constant(f.nvars, 1)
    raw = c * delta
    leading = None
    if part.degree >= 1 and not part.leading.is_constant():
        leading = part.leading
        raw = raw * leading
    if raw.is_zero():
        raise RuntimeError("Λ 恒为零：无平方分解异常")
    lam, constant = make_primitive(raw)
    logger.info(f"Λ 构造完成: β_(n+1)={beta}, deg_P={part.degree}, Λ 共 {len(lam.terms)} 项")
    return LambdaData(
        beta_last=beta,
        part=part,
        c=c,
        delta=delta,
        lam=lam,
        constant=constant,
        leading=leading,
        decomposition=decomposition,
    )


def random_rotation(f: MultiPoly, seed: int, max_tries: int = 16) -> Tuple[MultiPoly, Tuple[Fraction, ...]]:
    """
    可逆线性变换 x_j -> x_j + q_j x_{n+1}（j <= n），q_j 为随机小有理数
    返回变换后的多项式与 (q_1, …, q_n)
    """
    rng = np.random.default_rng(seed)
    n = f.nvars - 1
    for attempt in range(max_tries):
        shears = tuple(Fraction(int(rng.integers(-4, 5)), int(rng.integers(1, 4))) for _ in range(n))
        if all(q == 0 for q in shears):
            continue
        last = MultiPoly.variable(f.nvars, n)
        images = [MultiPoly.variable(f.nvars, j) + last.scale(shears[j]) for j in range(n)] + [last]
        rotated = f.substitute(images)
        if not PolyInLast(rotated).base_restriction().is_zero():
            logger.info(f"第 {attempt + 1} 次随机线性变换成功: {[str(q) for q in shears]}")
            return rotated, shears
    raise NeedsRotation(f"{max_tries} 次随机线性变换后 F 仍在 x_(n+1) 轴上恒为零")
