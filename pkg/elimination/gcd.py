# gcd.py
import logging
from typing import Optional

from algebra.polynomial import MultiPoly
from algebra.scalars import ONE
from .exceptions import InexactDivision

logger = logging.getLogger(__name__)


def exact_divide(dividend: MultiPoly, divisor: MultiPoly) -> MultiPoly:
    """整除，余项非零时抛出 InexactDivision"""
    quotient, remainder = dividend.divmod_lex(divisor)
    if not remainder.is_zero():
        raise InexactDivision(dividend, divisor)
    return quotient


def leading_coefficient(p: MultiPoly, var: int) -> MultiPoly:
    """作为 var 的一元多项式时的首项系数"""
    if p.is_zero():
        return p
    return p.coefficients_in(var)[p.degree(var)]


def derivative(p: MultiPoly, var: int) -> MultiPoly:
    return p.partial_derivative(var)


def normalize(p: MultiPoly) -> MultiPoly:
    """去掉常数因子：字典序首项系数化为 1"""
    if p.is_zero():
        return p
    return p.monic()[0]


def _highest_variable(*polys: MultiPoly) -> Optional[int]:
    found = [j for p in polys for exp in p.terms for j, e in enumerate(exp) if e]
    return max(found) if found else None


def pseudo_remainder(a: MultiPoly, b: MultiPoly, var: int) -> MultiPoly:
    """prem(a, b) = lc(b)^{deg a − deg b + 1} · a mod b（按变量 var）"""
    if b.is_zero():
        raise ZeroDivisionError("伪除以零多项式")
    db = b.degree(var)
    lc_b = leading_coefficient(b, var)
    remaining = a.degree(var) - db + 1
    r = a
    while not r.is_zero() and r.degree(var) >= db:
        dr = r.degree(var)
        lc_r = leading_coefficient(r, var)
        shift = [0] * a.nvars
        shift[var] = dr - db
        r = lc_b * r - lc_r * MultiPoly.monomial(shift) * b
        remaining -= 1
    return lc_b ** max(remaining, 0) * r


def content(p: MultiPoly, var: int) -> MultiPoly:
    """关于 var 的容度：各系数的最大公因式"""
    result = MultiPoly.zero(p.nvars)
    for coeff in p.coefficients_in(var).values():
        result = poly_gcd(result, coeff)
        if result.is_constant():
            break
    return result


def primitive_part(p: MultiPoly, var: int) -> MultiPoly:
    if p.is_zero():
        return p
    return normalize(exact_divide(p, content(p, var)))


def poly_gcd(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    """
    Q(i)[x_1..x_m] 上的最大公因式（首项系数规范为 1）
    按最高变量递归：容度递归求 gcd，本原部分走本原伪余式序列
    """
    if a.is_zero():
        return normalize(b)
    if b.is_zero():
        return normalize(a)
    var = _highest_variable(a, b)
    if var is None:
        return MultiPoly.constant(a.nvars, ONE)
    ca, cb = content(a, var), content(b, var)
    common = poly_gcd(ca, cb)
    pa, pb = exact_divide(a, ca), exact_divide(b, cb)
    if pa.degree(var) < pb.degree(var):
        pa, pb = pb, pa
    while not pb.is_zero():
        if pb.degree(var) == 0:
            pa = MultiPoly.constant(a.nvars, ONE)
            break
        r = pseudo_remainder(pa, pb, var)
        pa, pb = pb, (primitive_part(r, var) if not r.is_zero() else r)
    if pa.degree(var) > 0:
        pa = primitive_part(pa, var)
    else:
        pa = MultiPoly.constant(a.nvars, ONE)
    return normalize(common * pa)
