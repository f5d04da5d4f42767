# series.py
from fractions import Fraction
import logging
import math
from types import MappingProxyType
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from config import UNIT_CONFIG
from .exceptions import NotFNC, VariableMismatch
from .exponents import (
    Exponent, add, as_exponent, is_nonnegative, lattice_denominator, leq,
    minimal_elements, sub, total_degree, zero_exponent
)
from .scalars import GaussRational, ZERO, ONE, as_gauss, gauss_rational_power, root_bounds

logger = logging.getLogger(__name__)


def _min_order(*orders: Optional[Fraction]) -> Optional[Fraction]:
    known = [o for o in orders if o is not None]
    return min(known) if known else None


class PuiseuxSeries:
    """
    截断的多元分数幂级数
    order 为截断阶（总次数），None 表示精确（有限项、不截断）
    eps 为定义域尺度，级数视为定义在 (0, eps)^n 上
    """
    __slots__ = ("nvars", "_terms", "order", "eps", "_lattice")

    def __init__(
        self,
        nvars: int,
        terms: Optional[Mapping[Sequence, object]] = None,
        order: Optional[Fraction] = None,
        eps: Optional[Fraction] = None,
        lattice: int = 1
    ):
        order = None if order is None else Fraction(order)
        cleaned: Dict[Exponent, GaussRational] = {}
        for exp, coeff in (terms or {}).items():
            exp = as_exponent(exp)
            if len(exp) != nvars:
                raise VariableMismatch(len(exp), nvars)
            if not is_nonnegative(exp):
                raise ValueError(f"分数幂级数的指数必须非负: {exp}")
            if order is not None and total_degree(exp) > order:
                continue
            total = cleaned.get(exp, ZERO) + as_gauss(coeff)
            if total.is_zero():
                cleaned.pop(exp, None)
            else:
                cleaned[exp] = total
        self.nvars = nvars
        self._terms = cleaned
        self.order = order
        self.eps = Fraction(eps) if eps is not None else Fraction(1)
        computed = lattice_denominator(cleaned.keys())
        self._lattice = computed * lattice // math.gcd(computed, lattice)

    # ---- 构造 ----
    @classmethod
    def constant(cls, nvars: int, value, order=None, eps=None) -> "PuiseuxSeries":
        return cls(nvars, {zero_exponent(nvars): value}, order=order, eps=eps)

    @classmethod
    def monomial(cls, exponent: Sequence, coeff=1, order=None, eps=None) -> "PuiseuxSeries":
        exponent = as_exponent(exponent)
        return cls(len(exponent), {exponent: coeff}, order=order, eps=eps)

    @classmethod
    def variable(cls, nvars: int, index: int, order=None) -> "PuiseuxSeries":
        exp = [Fraction(0)] * nvars
        exp[index] = Fraction(1)
        return cls(nvars, {tuple(exp): 1}, order=order)

    # ---- 访问 ----
    @property
    def terms(self) -> Mapping[Exponent, GaussRational]:
        return MappingProxyType(self._terms)

    @property
    def lattice(self) -> int:
        return self._lattice

    def is_zero(self) -> bool:
        return not self._terms

    def is_exact(self) -> bool:
        return self.order is None

    def is_real(self) -> bool:
        return all(c.is_real() for c in self._terms.values())

    def constant_term(self) -> GaussRational:
        return self._terms.get(zero_exponent(self.nvars), ZERO)

    def coefficient(self, exponent: Sequence) -> GaussRational:
        return self._terms.get(as_exponent(exponent), ZERO)

    def min_degree(self) -> Optional[Fraction]:
        if self.is_zero():
            return None
        return min(total_degree(e) for e in self._terms)

    def max_degree(self) -> Fraction:
        if self.is_zero():
            return Fraction(0)
        return max(total_degree(e) for e in self._terms)

    def minimal_exponents(self) -> List[Exponent]:
        return minimal_elements(self._terms.keys())

    def fnc_exponent(self) -> Exponent:
        """唯一的最小指数（所有指数都支配它）；否则不是 FNC"""
        if self.is_zero():
            raise NotFNC("零级数不是分数正规交叉形式")
        minimal = self.minimal_exponents()
        if len(minimal) != 1:
            raise NotFNC(f"最小指数不唯一: {len(minimal)} 个")
        return minimal[0]

    def is_fnc(self) -> bool:
        try:
            self.fnc_exponent()
            return True
        except NotFNC:
            return False

    def split_fnc(self) -> Tuple[GaussRational, Exponent, "PuiseuxSeries"]:
        """写成 c * y^γ * u，u 常数项为 1"""
        gamma = self.fnc_exponent()
        coeff = self._terms[gamma]
        unit = self.divide_monomial(gamma).scale(ONE / coeff)
        return coeff, gamma, unit

    def _check(self, other: "PuiseuxSeries") -> None:
        if self.nvars != other.nvars:
            raise VariableMismatch(self.nvars, other.nvars)

    def _lift(self, other) -> Optional["PuiseuxSeries"]:
        if isinstance(other, PuiseuxSeries):
            self._check(other)
            return other
        scalar = as_gauss(other, strict=False)
        if scalar is None:
            return None
        return PuiseuxSeries.constant(self.nvars, scalar, order=None, eps=self.eps)

    # ---- 算术 ----
    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        merged = dict(self._terms)
        for exp, coeff in other._terms.items():
            merged[exp] = merged.get(exp, ZERO) + coeff
        lattice = self._lattice * other._lattice // math.gcd(self._lattice, other._lattice)
        return PuiseuxSeries(
            self.nvars, merged, order=_min_order(self.order, other.order),
            eps=min(self.eps, other.eps), lattice=lattice
        )

    __radd__ = __add__

    def __neg__(self):
        return PuiseuxSeries(self.nvars, {e: -c for e, c in self._terms.items()},
                             order=self.order, eps=self.eps, lattice=self._lattice)

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
        order = _min_order(self.order, other.order)
        product: Dict[Exponent, GaussRational] = {}
        for e1, c1 in self._terms.items():
            d1 = total_degree(e1)
            for e2, c2 in other._terms.items():
                if order is not None and d1 + total_degree(e2) > order:
                    continue
                exp = add(e1, e2)
                product[exp] = product.get(exp, ZERO) + c1 * c2
        lattice = self._lattice * other._lattice // math.gcd(self._lattice, other._lattice)
        return PuiseuxSeries(self.nvars, product, order=order,
                             eps=min(self.eps, other.eps), lattice=lattice)

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            return NotImplemented
        result = PuiseuxSeries.constant(self.nvars, 1, order=self.order, eps=self.eps)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def scale(self, factor) -> "PuiseuxSeries":
        factor = as_gauss(factor)
        return PuiseuxSeries(self.nvars, {e: c * factor for e, c in self._terms.items()},
                             order=self.order, eps=self.eps, lattice=self._lattice)

    def __eq__(self, other):
        if not isinstance(other, PuiseuxSeries):
            return NotImplemented
        return (self.nvars == other.nvars and self._terms == other._terms
                and self.order == other.order)

    def __hash__(self):
        return hash((self.nvars, frozenset(self._terms.items()), self.order))

    def truncate(self, order) -> "PuiseuxSeries":
        order = Fraction(order)
        new_order = order if self.order is None else min(order, self.order)
        return PuiseuxSeries(self.nvars, self._terms, order=new_order, eps=self.eps, lattice=self._lattice)

    def with_eps(self, eps) -> "PuiseuxSeries":
        return PuiseuxSeries(self.nvars, self._terms, order=self.order, eps=eps, lattice=self._lattice)

    def with_lattice(self, lattice: int) -> "PuiseuxSeries":
        return PuiseuxSeries(self.nvars, self._terms, order=self.order, eps=self.eps, lattice=lattice)

    # ---- 单项式操作 ----
    def multiply_monomial(self, exponent: Sequence, coeff=1) -> "PuiseuxSeries":
        exponent = as_exponent(exponent)
        coeff = as_gauss(coeff)
        shift = total_degree(exponent)
        order = None if self.order is None else self.order + shift
        return PuiseuxSeries(self.nvars, {add(e, exponent): c * coeff for e, c in self._terms.items()},
                             order=order, eps=self.eps, lattice=self._lattice)

    def divide_monomial(self, exponent: Sequence) -> "PuiseuxSeries":
        exponent = as_exponent(exponent)
        moved = {}
        for e, c in self._terms.items():
            if not leq(exponent, e):
                raise NotFNC(f"单项式 {exponent} 不整除项 {e}")
            moved[sub(e, exponent)] = c
        order = None if self.order is None else self.order - total_degree(exponent)
        return PuiseuxSeries(self.nvars, moved, order=order, eps=self.eps, lattice=self._lattice)

    # ---- 实部、虚部、共轭 ----
    def real_part(self) -> "PuiseuxSeries":
        return PuiseuxSeries(self.nvars, {e: GaussRational(c.re) for e, c in self._terms.items()},
                             order=self.order, eps=self.eps, lattice=self._lattice)

    def imag_part(self) -> "PuiseuxSeries":
        return PuiseuxSeries(self.nvars, {e: GaussRational(c.im) for e, c in self._terms.items()},
                             order=self.order, eps=self.eps, lattice=self._lattice)

    def conjugate(self) -> "PuiseuxSeries":
        return PuiseuxSeries(self.nvars, {e: c.conjugate() for e, c in self._terms.items()},
                             order=self.order, eps=self.eps, lattice=self._lattice)

    # ---- 变量代换 ----
    def lattify(self, lattice: Optional[int] = None) -> Tuple["PuiseuxSeries", int]:
        """幂代换 y = z^s，使全部指数变为整数"""
        s = lattice or self._lattice
        terms = {tuple(x * s for x in e): c for e, c in self._terms.items()}
        order = None if self.order is None else self.order * s
        return PuiseuxSeries(self.nvars, terms, order=order, eps=root_bounds(self.eps, s)[0]), s

    def delattify(self, lattice: int) -> "PuiseuxSeries":
        terms = {tuple(x / lattice for x in e): c for e, c in self._terms.items()}
        order = None if self.order is None else self.order / lattice
        return PuiseuxSeries(self.nvars, terms, order=order, eps=self.eps, lattice=lattice)

    def substitute_monomials(self, images: Sequence[Tuple[object, Sequence]], eps=None) -> "PuiseuxSeries":
        """
        y_j -> c_j * w^{e_j}；常数的分数幂必须仍是高斯有理数
        截断阶按代换单项式的最小次数缩放，精度损失显式记录
        """
        if len(images) != self.nvars:
            raise VariableMismatch(len(images), self.nvars)
        target = len(images[0][1])
        degrees = [total_degree(e) for _, e in images]
        if any(d <= 0 for d in degrees):
            raise ValueError("单项式代换的指数总次数必须为正")
        terms: Dict[Exponent, GaussRational] = {}
        for exp, coeff in self._terms.items():
            value = coeff
            new_exp = zero_exponent(target)
            for (c, e), k in zip(images, exp):
                if k:
                    value = value * gauss_rational_power(as_gauss(c), k)
                    new_exp = add(new_exp, tuple(Fraction(x) * k for x in e))
            terms[new_exp] = terms.get(new_exp, ZERO) + value
        order = None if self.order is None else self.order * min(degrees)
        return PuiseuxSeries(target, terms, order=order, eps=eps if eps is not None else self.eps)

    def scale_domain(self, factor) -> "PuiseuxSeries":
        """记录定义域缩放 y -> factor * y（factor 的分数幂须为有理）"""
        factor = Fraction(factor)
        images = []
        for j in range(self.nvars):
            e = [Fraction(0)] * self.nvars
            e[j] = Fraction(1)
            images.append((factor, tuple(e)))
        return self.substitute_monomials(images)

    # ---- 数值求值 ----
    def evaluate_numpy(self, points: np.ndarray) -> np.ndarray:
        points = np.atleast_2d(np.asarray(points, dtype=float))
        if points.shape[1] != self.nvars:
            raise VariableMismatch(points.shape[1], self.nvars)
        result = np.zeros(points.shape[0], dtype=complex)
        for exp, coeff in self._terms.items():
            term = np.full(points.shape[0], complex(coeff))
            for j, e in enumerate(exp):
                if e:
                    term = term * np.power(points[:, j], float(e))
            result += term
        return result

    def format(self, names: Optional[Sequence[str]] = None, limit: int = 8) -> str:
        if self.is_zero():
            return "0"
        names = names or [f"y{j + 1}" for j in range(self.nvars)]
        pieces = []
        for exp in sorted(self._terms, key=lambda e: (total_degree(e), e))[:limit]:
            factors = [f"{n}^{e}" if e != 1 else n for n, e in zip(names, exp) if e != 0]
            pieces.append(f"({self._terms[exp]})" + ("*" + "*".join(factors) if factors else ""))
        text = " + ".join(pieces)
        if len(self._terms) > limit:
            text += " + ..."
        if self.order is not None:
            text += f" + O(deg>{self.order})"
        return text

    def __repr__(self):
        return f"PuiseuxSeries({self.format()})"


def series_arith(lhs: PuiseuxSeries, rhs: PuiseuxSeries, kind: str = "add") -> PuiseuxSeries:
    """级数运算统一入口：格取最小公倍数，截断阶取较小者"""
    if kind == "add":
        return lhs + rhs
    if kind == "mul":
        return lhs * rhs
    raise ValueError(f"未知级数运算: {kind}")


def default_eps() -> Fraction:
    return UNIT_CONFIG["default_eps"]
