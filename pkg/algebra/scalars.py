# scalars.py
from dataclasses import dataclass
from fractions import Fraction
import logging
import math
from typing import List, Optional, Tuple, Union

import numpy as np

from config import TRUNCATION_CONFIG
from .exceptions import IrrationalJetError

logger = logging.getLogger(__name__)

RationalLike = Union[int, Fraction]


@dataclass(frozen=True, eq=False)
class GaussRational:
    """高斯有理数 a + bi（a, b 为精确有理数）"""
    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", Fraction(self.re))
        object.__setattr__(self, "im", Fraction(self.im))

    # ---- 基本性质 ----
    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def is_real(self) -> bool:
        return self.im == 0

    def conjugate(self) -> "GaussRational":
        return GaussRational(self.re, -self.im)

    def modulus_sq(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    # ---- 运算 ----
    def __add__(self, other):
        other = as_gauss(other, strict=False)
        if other is None:
            return NotImplemented
        return GaussRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = as_gauss(other, strict=False)
        if other is None:
            return NotImplemented
        return GaussRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = as_gauss(other, strict=False)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = as_gauss(other, strict=False)
        if other is None:
            return NotImplemented
        return GaussRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = as_gauss(other, strict=False)
        if other is None:
            return NotImplemented
        norm = other.modulus_sq()
        if norm == 0:
            raise ZeroDivisionError("高斯有理数除以零")
        num = self * other.conjugate()
        return GaussRational(num.re / norm, num.im / norm)

    def __rtruediv__(self, other):
        other = as_gauss(other, strict=False)
        if other is None:
            return NotImplemented
        return other / self

    def __neg__(self):
        return GaussRational(-self.re, -self.im)

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return (GaussRational(1) / self) ** (-exponent)
        result = GaussRational(1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other):
        other = as_gauss(other, strict=False)
        if other is None:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __repr__(self):
        return f"GaussRational({format_gauss(self)})"

    def __str__(self):
        return format_gauss(self)


ZERO = GaussRational(0)
ONE = GaussRational(1)
I_UNIT = GaussRational(0, 1)


def as_gauss(value, strict: bool = True) -> Optional[GaussRational]:
    """把 int / Fraction / GaussRational 统一转换为 GaussRational"""
    if isinstance(value, GaussRational):
        return value
    if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
        return GaussRational(Fraction(value), Fraction(0))
    if strict:
        raise TypeError(f"无法精确转换为高斯有理数: {value!r}")
    return None


def format_gauss(z: GaussRational) -> str:
    if z.im == 0:
        return str(z.re)
    if z.re == 0:
        return f"{z.im}i"
    sign = "+" if z.im > 0 else "-"
    return f"{z.re}{sign}{abs(z.im)}i"


# ---------------------------------------------------------------------------
# 模长界与有理开方
# ---------------------------------------------------------------------------

def integer_nth_root(value: int, n: int) -> int:
    """返回 floor(value ** (1/n))，value >= 0"""
    if value < 0:
        raise ValueError("负数不能开偶次方")
    if value in (0, 1) or n == 1:
        return value
    guess = int(round(value ** (1.0 / n))) if value < 2 ** 1000 else 1 << (value.bit_length() // n + 1)
    guess = max(guess, 1)
    # 牛顿迭代修正
    while True:
        nxt = ((n - 1) * guess + value // guess ** (n - 1)) // n
        if nxt >= guess:
            break
        guess = nxt
    while guess ** n > value:
        guess -= 1
    while (guess + 1) ** n <= value:
        guess += 1
    return guess


def rational_root(value: RationalLike, n: int) -> Optional[Fraction]:
    """非负有理数的精确 n 次方根；不存在时返回 None"""
    value = Fraction(value)
    if value < 0:
        return None
    num_root = integer_nth_root(value.numerator, n)
    den_root = integer_nth_root(value.denominator, n)
    if num_root ** n == value.numerator and den_root ** n == value.denominator:
        return Fraction(num_root, den_root)
    return None


def sqrt_bounds(value: RationalLike, bits: int = 40) -> Tuple[Fraction, Fraction]:
    """sqrt(value) 的有理上下界"""
    value = Fraction(value)
    if value < 0:
        raise ValueError("负数没有实平方根")
    exact = rational_root(value, 2)
    if exact is not None:
        return exact, exact
    scale = 1 << bits
    scaled = value.numerator * value.denominator * scale * scale
    root = integer_nth_root(scaled, 2)
    den = value.denominator * scale
    return Fraction(root, den), Fraction(root + 1, den)


def root_bounds(value: RationalLike, n: int, bits: int = 24) -> Tuple[Fraction, Fraction]:
    """value 的 n 次方根的有理上下界（恰为 n 次幂时上下界相等）"""
    value = Fraction(value)
    exact = rational_root(value, n)
    if exact is not None:
        return exact, exact
    scale = 1 << bits
    scaled = value * scale ** n
    root = integer_nth_root(scaled.numerator // scaled.denominator, n)
    return Fraction(root, scale), Fraction(root + 1, scale)


def modulus_bounds(z: GaussRational) -> Tuple[Fraction, Fraction]:
    """|z| 的有理上下界（模长比较一律走平方模）"""
    return sqrt_bounds(z.modulus_sq())


def rational_power_ceiling(value: RationalLike, n: int, grid: Optional[int] = None) -> Fraction:
    """返回 t >= 1，使 t**n >= value；若 value 恰为 n 次幂则取精确根"""
    value = Fraction(value)
    if value <= 1:
        return Fraction(1)
    exact = rational_root(value, n)
    if exact is not None:
        return exact
    grid = grid or TRUNCATION_CONFIG["power_grid"]
    t = Fraction(math.ceil(float(value) ** (1.0 / n) * grid), grid)
    while t ** n < value:
        t += Fraction(1, grid)
    while t - Fraction(1, grid) >= 1 and (t - Fraction(1, grid)) ** n >= value:
        t -= Fraction(1, grid)
    return max(t, Fraction(1))


def reconstruct_gauss(value: complex, max_denominator: Optional[int] = None) -> GaussRational:
    """由浮点复数重建小分母高斯有理数（调用方负责精确校验）"""
    max_denominator = max_denominator or TRUNCATION_CONFIG["max_reconstruction_denominator"]
    re = Fraction(float(np.real(value))).limit_denominator(max_denominator)
    im = Fraction(float(np.imag(value))).limit_denominator(max_denominator)
    return GaussRational(re, im)


def gauss_roots_of_unity_power(target: GaussRational, m: int) -> List[GaussRational]:
    """target 在 Q(i) 中的全部 m 次方根"""
    if target.is_zero():
        return [ZERO]
    found: List[GaussRational] = []
    base = complex(target) ** (1.0 / m)
    for k in range(m):
        candidate = reconstruct_gauss(base * np.exp(2j * np.pi * k / m))
        if candidate ** m == target and candidate not in found:
            found.append(candidate)
    return found


def gauss_rational_power(c: GaussRational, q: RationalLike) -> GaussRational:
    """主值分支 c**q；结果必须仍在 Q(i) 中，否则抛出 IrrationalJetError"""
    q = Fraction(q)
    if c.is_zero():
        if q <= 0:
            raise ZeroDivisionError("零的非正次幂")
        return ZERO
    if q.denominator == 1:
        return c ** int(q)
    powered = c ** q.numerator
    m = q.denominator
    if powered.is_real() and powered.re > 0:
        exact = rational_root(powered.re, m)
        if exact is not None:
            return GaussRational(exact)
    principal = complex(powered) ** (1.0 / m)
    candidate = reconstruct_gauss(principal)
    if candidate ** m == powered:
        return candidate
    logger.debug(f"常数 {c} 的 {q} 次幂不在 Q(i) 中")
    raise IrrationalJetError(f"常数 {c} 的 {q} 次幂不是高斯有理数")


def gauss_sqrt(c: GaussRational) -> GaussRational:
    """平方根（负实数取 +i 方向）"""
    if c.is_real() and c.re < 0:
        root = rational_root(-c.re, 2)
        if root is None:
            raise IrrationalJetError(f"常数 {c} 的平方根不是高斯有理数")
        return GaussRational(0, root)
    return gauss_rational_power(c, Fraction(1, 2))
