# polynomial.py
from fractions import Fraction
import logging
import math
from types import MappingProxyType
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from .exceptions import VariableMismatch
from .scalars import GaussRational, ZERO, ONE, as_gauss

logger = logging.getLogger(__name__)

IntExponent = Tuple[int, ...]


class MultiPoly:
    """
    Q(i) 系数的多元多项式，terms: 整数指数向量 -> 系数（不存零系数）
    对象构造后不再修改
    """
    __slots__ = ("nvars", "_terms", "_hash")

    def __init__(self, nvars: int, terms: Optional[Mapping[Sequence[int], object]] = None):
        cleaned: Dict[IntExponent, GaussRational] = {}
        for exp, coeff in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != nvars:
                raise VariableMismatch(len(exp), nvars)
            if any(e < 0 for e in exp):
                raise ValueError(f"多项式指数必须非负: {exp}")
            total = cleaned.get(exp, ZERO) + as_gauss(coeff)
            if total.is_zero():
                cleaned.pop(exp, None)
            else:
                cleaned[exp] = total
        self.nvars = nvars
        self._terms = cleaned
        self._hash = None

    # ---- 构造 ----
    @classmethod
    def zero(cls, nvars: int) -> "MultiPoly":
        return cls(nvars)

    @classmethod
    def constant(cls, nvars: int, value) -> "MultiPoly":
        return cls(nvars, {(0,) * nvars: value})

    @classmethod
    def variable(cls, nvars: int, index: int) -> "MultiPoly":
        exp = [0] * nvars
        exp[index] = 1
        return cls(nvars, {tuple(exp): 1})

    @classmethod
    def monomial(cls, exponent: Sequence[int], coeff=1) -> "MultiPoly":
        return cls(len(exponent), {tuple(exponent): coeff})

    # ---- 基本访问 ----
    @property
    def terms(self) -> Mapping[IntExponent, GaussRational]:
        return MappingProxyType(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(not any(exp) for exp in self._terms)

    def is_real(self) -> bool:
        return all(c.is_real() for c in self._terms.values())

    def constant_term(self) -> GaussRational:
        return self._terms.get((0,) * self.nvars, ZERO)

    def degree(self, var: int) -> int:
        if self.is_zero():
            return -1
        return max(exp[var] for exp in self._terms)

    def total_degree(self) -> int:
        if self.is_zero():
            return -1
        return max(sum(exp) for exp in self._terms)

    def leading_term(self) -> Tuple[IntExponent, GaussRational]:
        """字典序首项"""
        if self.is_zero():
            raise ValueError("零多项式没有首项")
        exp = max(self._terms)
        return exp, self._terms[exp]

    def _check(self, other: "MultiPoly") -> None:
        if self.nvars != other.nvars:
            raise VariableMismatch(self.nvars, other.nvars)

    def _lift(self, other) -> Optional["MultiPoly"]:
        if isinstance(other, MultiPoly):
            self._check(other)
            return other
        scalar = as_gauss(other, strict=False)
        if scalar is None:
            return None
        return MultiPoly.constant(self.nvars, scalar)

    # ---- 环运算 ----
    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        merged = dict(self._terms)
        for exp, coeff in other._terms.items():
            merged[exp] = merged.get(exp, ZERO) + coeff
        return MultiPoly(self.nvars, merged)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.nvars, {exp: -c for exp, c in self._terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        product: Dict[IntExponent, GaussRational] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                exp = tuple(a + b for a, b in zip(e1, e2))
                product[exp] = product.get(exp, ZERO) + c1 * c2
        return MultiPoly(self.nvars, product)

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            return NotImplemented
        result = MultiPoly.constant(self.nvars, 1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def scale(self, factor) -> "MultiPoly":
        factor = as_gauss(factor)
        return MultiPoly(self.nvars, {exp: c * factor for exp, c in self._terms.items()})

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.nvars == other.nvars and self._terms == other._terms
        scalar = as_gauss(other, strict=False)
        if scalar is None:
            return NotImplemented
        return self == MultiPoly.constant(self.nvars, scalar)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    # ---- 微分、求值、代换 ----
    def partial_derivative(self, var: int) -> "MultiPoly":
        result: Dict[IntExponent, GaussRational] = {}
        for exp, coeff in self._terms.items():
            if exp[var] == 0:
                continue
            new_exp = list(exp)
            new_exp[var] -= 1
            result[tuple(new_exp)] = coeff * exp[var]
        return MultiPoly(self.nvars, result)

    def evaluate(self, point: Sequence) -> GaussRational:
        if len(point) != self.nvars:
            raise VariableMismatch(len(point), self.nvars)
        values = [as_gauss(v) for v in point]
        total = ZERO
        for exp, coeff in self._terms.items():
            term = coeff
            for value, e in zip(values, exp):
                if e:
                    term = term * value ** e
            total = total + term
        return total

    def evaluate_numpy(self, points: np.ndarray) -> np.ndarray:
        """对 (m, nvars) 数组逐行求值，返回复数数组"""
        points = np.atleast_2d(np.asarray(points, dtype=complex))
        if points.shape[1] != self.nvars:
            raise VariableMismatch(points.shape[1], self.nvars)
        result = np.zeros(points.shape[0], dtype=complex)
        for exp, coeff in self._terms.items():
            term = np.full(points.shape[0], complex(coeff))
            for j, e in enumerate(exp):
                if e:
                    term = term * points[:, j] ** e
            result += term
        return result

    def substitute(self, images: Sequence["MultiPoly"]) -> "MultiPoly":
        """多项式复合：x_j -> images[j]"""
        if len(images) != self.nvars:
            raise VariableMismatch(len(images), self.nvars)
        target = images[0].nvars if images else 0
        result = MultiPoly.zero(target)
        power_cache: Dict[Tuple[int, int], MultiPoly] = {}
        for exp, coeff in self._terms.items():
            term = MultiPoly.constant(target, coeff)
            for j, e in enumerate(exp):
                if e:
                    key = (j, e)
                    if key not in power_cache:
                        power_cache[key] = images[j] ** e
                    term = term * power_cache[key]
            result = result + term
        return result

    def substitute_monomial_map(self, images: Sequence[Tuple[object, Sequence]]):
        """
        单项式代换 x_j -> c_j * y^{e_j}（e_j 为非负有理指数），结果重新落到公共格上
        Returns:
            PuiseuxSeries: 精确（不截断）的分数幂级数
        """
        from .series import PuiseuxSeries  # 避免循环导入
        if len(images) != self.nvars:
            raise VariableMismatch(len(images), self.nvars)
        target = len(images[0][1]) if images else 0
        terms: Dict[Tuple[Fraction, ...], GaussRational] = {}
        for exp, coeff in self._terms.items():
            value = coeff
            new_exp = [Fraction(0)] * target
            for (c, e), k in zip(images, exp):
                if k:
                    value = value * as_gauss(c) ** k
                    for idx, x in enumerate(e):
                        new_exp[idx] += Fraction(x) * k
            key = tuple(new_exp)
            terms[key] = terms.get(key, ZERO) + value
        return PuiseuxSeries(target, terms, order=None)

    def flip_signs(self, signs: Sequence[int]) -> "MultiPoly":
        """x_j -> signs[j] * x_j"""
        result = {}
        for exp, coeff in self._terms.items():
            sign = 1
            for s, e in zip(signs, exp):
                if s < 0 and e % 2:
                    sign = -sign
            result[exp] = coeff * sign
        return MultiPoly(self.nvars, result)

    def conjugate(self) -> "MultiPoly":
        return MultiPoly(self.nvars, {exp: c.conjugate() for exp, c in self._terms.items()})

    def variable_period(self, var: int) -> int:
        """var 的全部次数的最大公因子（不出现时为 0）"""
        return math.gcd(*(exp[var] for exp in self._terms)) if self._terms else 0

    def deflate(self, powers: Sequence[int]) -> "MultiPoly":
        """w_j = x_j^{k_j} 代入：指数逐个除以 k_j，要求整除"""
        if len(powers) != self.nvars:
            raise VariableMismatch(len(powers), self.nvars)
        if all(k == 1 for k in powers):
            return self
        result = {}
        for exp, coeff in self._terms.items():
            if any(e % k for e, k in zip(exp, powers)):
                raise ValueError(f"指数 {exp} 不能被 {tuple(powers)} 整除")
            result[tuple(e // k for e, k in zip(exp, powers))] = coeff
        return MultiPoly(self.nvars, result)

    # ---- 视为最后一个变量的一元多项式 ----
    def coefficients_in(self, var: int) -> Dict[int, "MultiPoly"]:
        """按变量 var 的次数分组，系数仍是同样变量个数的多项式（var 次数为 0）"""
        groups: Dict[int, Dict[IntExponent, GaussRational]] = {}
        for exp, coeff in self._terms.items():
            k = exp[var]
            reduced = list(exp)
            reduced[var] = 0
            groups.setdefault(k, {})[tuple(reduced)] = coeff
        return {k: MultiPoly(self.nvars, t) for k, t in groups.items()}

    @classmethod
    def from_coefficients(cls, coeffs: Mapping[int, "MultiPoly"], var: int, nvars: int) -> "MultiPoly":
        result = cls.zero(nvars)
        for k, c in coeffs.items():
            exp = [0] * nvars
            exp[var] = k
            result = result + c * cls.monomial(exp)
        return result

    def drop_variable(self, var: int) -> "MultiPoly":
        """删去不出现的变量（要求 var 次数为 0）"""
        if self.degree(var) > 0:
            raise ValueError(f"变量 {var} 仍出现在多项式中")
        return MultiPoly(self.nvars - 1, {exp[:var] + exp[var + 1:]: c for exp, c in self._terms.items()})

    def insert_variable(self, var: int) -> "MultiPoly":
        return MultiPoly(self.nvars + 1, {exp[:var] + (0,) + exp[var:]: c for exp, c in self._terms.items()})

    # ---- 除法与规范化 ----
    def divmod_lex(self, divisor: "MultiPoly") -> Tuple["MultiPoly", "MultiPoly"]:
        """按字典序的多元带余除法"""
        self._check(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("除以零多项式")
        lead_exp, lead_coeff = divisor.leading_term()
        remainder_terms: Dict[IntExponent, GaussRational] = {}
        quotient_terms: Dict[IntExponent, GaussRational] = {}
        current = dict(self._terms)
        while current:
            exp = max(current)
            coeff = current[exp]
            if all(a >= b for a, b in zip(exp, lead_exp)):
                q_exp = tuple(a - b for a, b in zip(exp, lead_exp))
                q_coeff = coeff / lead_coeff
                quotient_terms[q_exp] = quotient_terms.get(q_exp, ZERO) + q_coeff
                for d_exp, d_coeff in divisor._terms.items():
                    key = tuple(a + b for a, b in zip(q_exp, d_exp))
                    value = current.get(key, ZERO) - q_coeff * d_coeff
                    if value.is_zero():
                        current.pop(key, None)
                    else:
                        current[key] = value
            else:
                remainder_terms[exp] = coeff
                del current[exp]
        return MultiPoly(self.nvars, quotient_terms), MultiPoly(self.nvars, remainder_terms)

    def monic(self) -> Tuple["MultiPoly", GaussRational]:
        """除以字典序首项系数，返回 (规范多项式, 被除去的常数)"""
        if self.is_zero():
            return self, ONE
        _, lead = self.leading_term()
        return self.scale(ONE / lead), lead

    def to_series(self, order=None, eps=None):
        from .series import PuiseuxSeries
        terms = {tuple(Fraction(e) for e in exp): c for exp, c in self._terms.items()}
        return PuiseuxSeries(self.nvars, terms, order=order, eps=eps)

    # ---- 输出 ----
    def format(self, names: Optional[Sequence[str]] = None) -> str:
        if self.is_zero():
            return "0"
        names = names or [f"x{j + 1}" for j in range(self.nvars)]
        pieces: List[str] = []
        for exp in sorted(self._terms, reverse=True):
            coeff = self._terms[exp]
            factors = []
            for name, e in zip(names, exp):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            monomial = "*".join(factors)
            text = _coeff_text(coeff)
            if monomial:
                if coeff == ONE:
                    text = monomial
                elif coeff == -ONE:
                    text = f"-{monomial}"
                else:
                    text = f"{text}*{monomial}"
            pieces.append(text)
        out = pieces[0]
        for piece in pieces[1:]:
            out += f" - {piece[1:]}" if piece.startswith("-") else f" + {piece}"
        return out

    def __repr__(self):
        return f"MultiPoly({self.format()})"


def poly_arith(lhs: MultiPoly, rhs=None, kind: str = "add", **kwargs):
    """
    多项式运算统一入口
    Args:
        kind: add | mul | partial_derivative | evaluate | substitute_monomial_map
    """
    if kind == "add":
        return lhs + rhs
    if kind == "mul":
        return lhs * rhs
    if kind == "partial_derivative":
        return lhs.partial_derivative(kwargs.get("var", rhs))
    if kind == "evaluate":
        return lhs.evaluate(rhs)
    if kind == "substitute_monomial_map":
        return lhs.substitute_monomial_map(rhs)
    raise ValueError(f"未知运算类型: {kind}")


def variables(nvars: int) -> List[MultiPoly]:
    return [MultiPoly.variable(nvars, j) for j in range(nvars)]


def _coeff_text(coeff: GaussRational) -> str:
    """可被表达式解析器读回的系数写法"""
    if coeff.is_real():
        return str(coeff.re)
    magnitude = abs(coeff.im)
    imag = "i" if magnitude == 1 else f"{magnitude}*i"
    if coeff.re == 0:
        return imag if coeff.im > 0 else f"-{imag}"
    sign = "+" if coeff.im > 0 else "-"
    return f"({coeff.re} {sign} {imag})"
