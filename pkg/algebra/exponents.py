# exponents.py
from fractions import Fraction
from functools import reduce
import math
from typing import Iterable, List, Sequence, Tuple

from .exceptions import Incomparable

Exponent = Tuple[Fraction, ...]


def as_exponent(values: Iterable) -> Exponent:
    return tuple(Fraction(v) for v in values)


def zero_exponent(n: int) -> Exponent:
    return tuple(Fraction(0) for _ in range(n))


def unit_vector(n: int, index: int, value=1) -> Exponent:
    return tuple(Fraction(value) if i == index else Fraction(0) for i in range(n))


def leq(a: Sequence, b: Sequence) -> bool:
    """分量序 a <= b"""
    return all(x <= y for x, y in zip(a, b))


def lt(a: Sequence, b: Sequence) -> bool:
    return leq(a, b) and tuple(a) != tuple(b)


def comparable(a: Sequence, b: Sequence) -> bool:
    return leq(a, b) or leq(b, a)


def add(a: Sequence, b: Sequence) -> Exponent:
    return tuple(Fraction(x) + Fraction(y) for x, y in zip(a, b))


def sub(a: Sequence, b: Sequence) -> Exponent:
    return tuple(Fraction(x) - Fraction(y) for x, y in zip(a, b))


def scale(a: Sequence, factor) -> Exponent:
    factor = Fraction(factor)
    return tuple(Fraction(x) * factor for x in a)


def total_degree(a: Sequence) -> Fraction:
    return sum((Fraction(x) for x in a), Fraction(0))


def is_nonnegative(a: Sequence) -> bool:
    return all(x >= 0 for x in a)


def lattice_denominator(vectors: Iterable[Sequence]) -> int:
    """所有分量分母的最小公倍数"""
    dens = [Fraction(x).denominator for vec in vectors for x in vec]
    return reduce(lambda p, q: p * q // math.gcd(p, q), dens, 1)


def order_exponents(vectors: Sequence[Sequence]) -> List[int]:
    """
    若指数向量全序，返回升序排列的下标；否则抛出 Incomparable(不可比的一对)
    """
    indices = sorted(range(len(vectors)), key=lambda i: (total_degree(vectors[i]), tuple(vectors[i])))
    for left, right in zip(indices, indices[1:]):
        if not leq(vectors[left], vectors[right]):
            raise Incomparable((tuple(vectors[left]), tuple(vectors[right])))
    return indices


def sort_exponents(vectors: Sequence[Sequence]) -> List[Exponent]:
    return [as_exponent(vectors[i]) for i in order_exponents(vectors)]


def minimal_elements(vectors: Iterable[Sequence]) -> List[Exponent]:
    """偏序下的极小元（去重）"""
    unique = sorted({as_exponent(v) for v in vectors}, key=lambda v: (total_degree(v), v))
    minimal: List[Exponent] = []
    for candidate in unique:
        if not any(leq(kept, candidate) for kept in minimal):
            minimal.append(candidate)
    return minimal


def format_exponent(a: Sequence) -> str:
    return "(" + ", ".join(str(Fraction(x)) for x in a) + ")"
