# newton_puiseux.py
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
import logging
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from algebra.exceptions import Incomparable, NotFNC
from algebra.exponents import (
    Exponent, add, is_nonnegative, leq, lt, scale, sub, total_degree, zero_exponent
)
from algebra.polynomial import MultiPoly
from algebra.scalars import GaussRational, ONE, ZERO, as_gauss, reconstruct_gauss
from algebra.series import PuiseuxSeries
from algebra.units import invert_series
from config import TRUNCATION_CONFIG
from elimination.squarefree import yun_decomposition

logger = logging.getLogger(__name__)

Scalar = Union[GaussRational, complex]


class Reality(str, Enum):
    REAL = "real"
    COMPLEX_PAIR = "complex-pair"
    COMPLEX_SINGLE = "complex-single"


class RootPlace(str, Enum):
    NEAR = "near"        # 首指数为正：经过原点
    FAR = "far"          # 首指数为零：非零常数起步
    POLE = "pole"        # 首指数为负：首项系数消失处的无界根


@dataclass(frozen=True)
class InexactTail:
    """精确前缀之后的第一项只有浮点近似（特征方程的根不在 Q(i) 中）"""
    exponent: Exponent
    coefficient: complex


@dataclass(frozen=True)
class PuiseuxRoot:
    """
    多项式关于最后一个变量的一个根，写成基变量的分数幂级数
    series 为精确前缀；tail 非空时其后还有一项只有数值近似
    """
    series: Optional[PuiseuxSeries]
    multiplicity: int
    leading_exponent: Exponent
    leading_coefficient: Scalar
    reality: Reality
    place: RootPlace = RootPlace.NEAR
    tail: Optional[InexactTail] = None

    @property
    def nvars(self) -> int:
        return len(self.leading_exponent)

    def is_exact(self) -> bool:
        return self.tail is None and self.series is not None

    def is_near(self) -> bool:
        return self.place == RootPlace.NEAR

    def is_real(self) -> bool:
        return self.reality == Reality.REAL

    def real_part(self) -> PuiseuxSeries:
        if self.series is None:
            raise ValueError("远根没有级数表示")
        return self.series.real_part()

    def leading_modulus(self) -> float:
        return abs(complex(self.leading_coefficient))

    def difference(self, centre: PuiseuxSeries) -> Optional[Tuple[Exponent, Scalar, bool]]:
        """
        r − centre 的首项 (指数, 系数, 是否精确)；恒等于 centre 时返回 None
        精确部分不是 FNC 时抛出 NotFNC
        """
        if self.series is None:
            raise ValueError("远根没有级数表示")
        diff = (self.series - centre)
        tail = self.tail
        if diff.is_zero():
            return (tail.exponent, tail.coefficient, False) if tail is not None else None
        coeff, gamma, _ = diff.split_fnc()
        if tail is None or lt(gamma, tail.exponent):
            return gamma, coeff, True
        if tail.exponent == gamma:
            return gamma, complex(coeff) + tail.coefficient, False
        if lt(tail.exponent, gamma):
            return tail.exponent, tail.coefficient, False
        raise Incomparable((gamma, tail.exponent))

    def evaluate_numpy(self, points: np.ndarray) -> np.ndarray:
        values = self.series.evaluate_numpy(points)
        if self.tail is not None:
            points = np.atleast_2d(np.asarray(points, dtype=float))
            mono = np.ones(points.shape[0])
            for j, e in enumerate(self.tail.exponent):
                if e:
                    mono = mono * np.power(points[:, j], float(e))
            values = values + self.tail.coefficient * mono
        return values

    def to_dict(self) -> Dict:
        return {
            "series": self.series.format() if self.series is not None else None,
            "multiplicity": self.multiplicity,
            "leading_exponent": [str(e) for e in self.leading_exponent],
            "leading_coefficient": str(self.leading_coefficient),
            "reality": self.reality.value,
            "place": self.place.value,
            "exact": self.is_exact(),
        }


@dataclass(frozen=True)
class CharacteristicRoot:
    value: Scalar
    multiplicity: int
    exact: bool


# ---------------------------------------------------------------------------
# 特征方程
# ---------------------------------------------------------------------------

def characteristic_roots(coeffs: Sequence[GaussRational]) -> List[CharacteristicRoot]:
    """
    Q(i) 上一元多项式 Σ coeffs[k] T^k 的全部根
    无平方分解后逐因式取数值候选，有理重建并精确校验；校验失败的根保留浮点值
    """
    coeffs = [as_gauss(c) for c in coeffs]
    while coeffs and coeffs[-1].is_zero():
        coeffs.pop()
    if len(coeffs) <= 1:
        return []
    poly = MultiPoly(1, {(k,): c for k, c in enumerate(coeffs)})
    found: List[CharacteristicRoot] = []
    for factor, multiplicity in yun_decomposition(poly.monic()[0], 0):
        degree = factor.degree(0)
        dense = [complex(factor.terms.get((k,), ZERO)) for k in range(degree, -1, -1)]
        candidates = np.roots(dense) if degree > 1 else np.array([-dense[1] / dense[0]])
        for z in candidates:
            guess = reconstruct_gauss(z)
            if factor.evaluate([guess]).is_zero():
                found.append(CharacteristicRoot(guess, multiplicity, True))
            else:
                found.append(CharacteristicRoot(complex(z), multiplicity, False))
    # 精确根排在前面，按 (实部, 虚部) 排序保证输出确定
    found.sort(key=lambda r: (not r.exact, complex(r.value).real, complex(r.value).imag))
    return found


def _classify(value: Scalar, real_input: bool) -> Reality:
    if isinstance(value, GaussRational):
        is_real = value.is_real()
    else:
        is_real = abs(value.imag) <= 1e-12 * max(1.0, abs(value))
    if is_real:
        return Reality.REAL
    return Reality.COMPLEX_PAIR if real_input else Reality.COMPLEX_SINGLE


# ---------------------------------------------------------------------------
# 系数为级数的一元多项式
# ---------------------------------------------------------------------------

SeriesPoly = Dict[int, PuiseuxSeries]


def _trim(poly: SeriesPoly) -> SeriesPoly:
    return {k: c for k, c in poly.items() if not c.is_zero()}


def _evaluate(poly: SeriesPoly, x: PuiseuxSeries) -> PuiseuxSeries:
    degree = max(poly)
    result = poly.get(degree)
    for k in range(degree - 1, -1, -1):
        result = result * x
        if k in poly:
            result = result + poly[k]
    return result


def _derivative(poly: SeriesPoly) -> SeriesPoly:
    return {k - 1: c.scale(k) for k, c in poly.items() if k >= 1}


def _binomial(n: int, k: int) -> int:
    value = 1
    for i in range(k):
        value = value * (n - i) // (i + 1)
    return value


def _weight(nvars: int) -> Tuple[Fraction, ...]:
    # 多元指数的一般位置权重，只用于找下凸包的候选边，之后逐项校验
    return tuple(Fraction(1) + Fraction(j, 97) for j in range(nvars))


def _lower_hull(points: List[Tuple[int, Fraction]]) -> List[Tuple[int, int]]:
    """(k, w_k) 点集的下凸包边，按 k 递增"""
    hull: List[Tuple[int, Fraction]] = []
    for p in points:
        while len(hull) >= 2:
            (k1, w1), (k2, w2) = hull[-2], hull[-1]
            # 叉积 <= 0 时中间点不在下凸包上
            if (w2 - w1) * (p[0] - k1) >= (p[1] - w1) * (k2 - k1):
                hull.pop()
            else:
                break
        hull.append(p)
    return [(hull[i][0], hull[i + 1][0]) for i in range(len(hull) - 1)]


@dataclass(frozen=True)
class _Edge:
    alpha: Exponent              # 根的首指数
    base: Exponent               # 边上各项 y^{γ_k + kα} 的公共指数
    char: List[GaussRational]    # 特征多项式系数，按 T 的次数由低到高
    start: int


def newton_polygon_edges(poly: SeriesPoly, nvars: int) -> Tuple[int, List[_Edge]]:
    """
    返回 (零根重数, 下凸包边列表)
    多元时每条边的指数向量都逐项校验支配关系，无法比较时抛出 Incomparable
    """
    low = min(poly)
    gammas = {}
    for k, c in poly.items():
        try:
            gammas[k] = c.fnc_exponent()
        except NotFNC as e:
            raise Incomparable(c.minimal_exponents()[:2]) from e
    weight = _weight(nvars)
    points = sorted((k, sum(w * g for w, g in zip(weight, gammas[k]))) for k in poly)
    edges: List[_Edge] = []
    for j, k in _lower_hull(points):
        alpha = scale(sub(gammas[j], gammas[k]), Fraction(1, k - j))
        base = add(gammas[j], scale(alpha, j))
        char = []
        for i in range(j, k + 1):
            if i in poly:
                value = add(gammas[i], scale(alpha, i))
                if not leq(base, value):
                    raise Incomparable((base, value))
                char.append(poly[i].coefficient(sub(base, scale(alpha, i))) if value == base else ZERO)
            else:
                char.append(ZERO)
        for i in poly:
            if not leq(base, add(gammas[i], scale(alpha, i))):
                raise Incomparable((base, add(gammas[i], scale(alpha, i))))
        edges.append(_Edge(alpha=alpha, base=base, char=char, start=j))
    return low, edges


def _shift_poly(poly: SeriesPoly, alpha: Exponent, c: GaussRational, base: Exponent) -> SeriesPoly:
    """G1(X1) = y^{−base} · G(y^α (c + X1))"""
    degree = max(poly)
    shifted: SeriesPoly = {}
    for k, a_k in poly.items():
        scaled = a_k.multiply_monomial(scale(alpha, k))
        for i in range(k + 1):
            term = scaled.scale(c ** (k - i) * _binomial(k, i))
            shifted[i] = shifted[i] + term if i in shifted else term
    result = {}
    for i in range(degree + 1):
        if i in shifted and not shifted[i].is_zero():
            result[i] = shifted[i].divide_monomial(base)
    return result


def _newton_lift(poly: SeriesPoly, start: PuiseuxSeries, target: Fraction, nvars: int) -> PuiseuxSeries:
    """
    单根的牛顿迭代 x ← x − G(x)/G'(x)（等价于在 y^α(c + w) 坐标下的 Hensel 提升）
    工作阶比目标阶多出 G'(x) 的首指数次数
    """
    derivative = _derivative(poly)
    x = start
    slack = None
    max_iter = TRUNCATION_CONFIG["newton_iterations"]
    for _ in range(max_iter):
        d_value = _evaluate(derivative, x)
        coeff, beta, unit = d_value.split_fnc()
        if slack is None:
            slack = total_degree(beta)
        working = target + slack
        x_work = PuiseuxSeries(nvars, x.terms, order=working)
        value = _evaluate(poly, x_work)
        if value.is_zero():
            # 有限项且代入后恰为零时记为精确根
            finite = PuiseuxSeries(nvars, x.terms)
            if _poly_is_exact(poly) and _evaluate(poly, finite).is_zero():
                return finite
            return PuiseuxSeries(nvars, x.terms, order=target)
        d_value = _evaluate(derivative, x_work)
        coeff, beta, unit = d_value.split_fnc()
        correction = (value.divide_monomial(beta) * invert_series(unit, target)).scale(ONE / coeff)
        updated = PuiseuxSeries(nvars, (x_work - correction).terms, order=target)
        if updated == PuiseuxSeries(nvars, x.terms, order=target):
            return updated
        x = updated
    logger.warning(f"牛顿迭代 {max_iter} 次未稳定，按当前近似返回")
    return x


def _poly_is_exact(poly: SeriesPoly) -> bool:
    return all(c.is_exact() for c in poly.values())


def _expand_roots(
    poly: SeriesPoly,
    nvars: int,
    target: Fraction,
    real_input: bool,
    positive_only: bool,
    depth: int = 0
) -> List[PuiseuxRoot]:
    """
    经典 Newton–Puiseux 递归
    positive_only 为真时只取首指数为正的根（递归层），零根单独返回
    """
    poly = _trim(poly)
    zero = zero_exponent(nvars)
    roots: List[PuiseuxRoot] = []
    low, edges = newton_polygon_edges(poly, nvars)
    if low:
        roots.append(PuiseuxRoot(
            series=PuiseuxSeries(nvars, {}, order=None if _poly_is_exact(poly) else target),
            multiplicity=low, leading_exponent=zero, leading_coefficient=ZERO,
            reality=Reality.REAL,
        ))
    for edge in edges:
        alpha = edge.alpha
        if positive_only and not (is_nonnegative(alpha) and alpha != zero):
            continue
        if is_nonnegative(alpha):
            place = RootPlace.FAR if alpha == zero else RootPlace.NEAR
        elif all(a <= 0 for a in alpha):
            place = RootPlace.POLE
        else:
            raise Incomparable((alpha, zero))
        for char_root in characteristic_roots(edge.char):
            value = char_root.value
            reality = _classify(value, real_input)
            if place != RootPlace.NEAR and depth == 0:
                # 远根只保留首项数据（用于选取 C0）
                roots.append(PuiseuxRoot(
                    series=None, multiplicity=char_root.multiplicity, leading_exponent=alpha,
                    leading_coefficient=value, reality=reality, place=place,
                ))
                continue
            if total_degree(alpha) > target:
                # 超出截断阶：只记录首项数据
                roots.append(PuiseuxRoot(
                    series=PuiseuxSeries(nvars, {}, order=target),
                    multiplicity=char_root.multiplicity, leading_exponent=alpha,
                    leading_coefficient=value, reality=reality,
                ))
                continue
            if not char_root.exact:
                roots.append(PuiseuxRoot(
                    series=PuiseuxSeries(nvars, {}, order=target),
                    multiplicity=char_root.multiplicity, leading_exponent=alpha,
                    leading_coefficient=value, reality=reality,
                    tail=InexactTail(alpha, complex(value)),
                ))
                continue
            if char_root.multiplicity == 1:
                series = _newton_lift(poly, PuiseuxSeries.monomial(alpha, value), target, nvars)
                roots.append(PuiseuxRoot(
                    series=series, multiplicity=1, leading_exponent=alpha,
                    leading_coefficient=value, reality=reality,
                ))
                continue
            reduced = _shift_poly(poly, alpha, value, edge.base)
            head = PuiseuxSeries.monomial(alpha, value)
            for sub_root in _expand_roots(reduced, nvars, target - total_degree(alpha),
                                          real_input, True, depth + 1):
                tail = sub_root.tail
                if tail is not None:
                    tail = InexactTail(add(tail.exponent, alpha), complex(tail.coefficient))
                series = head + sub_root.series.multiply_monomial(alpha)
                if series.order is not None:
                    series = series.truncate(target)
                sub_reality = reality
                if reality == Reality.REAL and sub_root.reality != Reality.REAL:
                    sub_reality = sub_root.reality
                roots.append(PuiseuxRoot(
                    series=series, multiplicity=sub_root.multiplicity, leading_exponent=alpha,
                    leading_coefficient=value, reality=sub_reality, tail=tail,
                ))
    return roots


def puiseux_roots(
    coefficients: Mapping[int, PuiseuxSeries],
    order: Optional[Fraction] = None,
    real_input: Optional[bool] = None
) -> List[PuiseuxRoot]:
    """
    系数为分数幂级数的一元多项式 Σ a_k X^k 的全部根
    基变量维数由系数决定；多元时要求牛顿多边形的边指数可比
    """
    poly = _trim(dict(coefficients))
    if not poly:
        raise ValueError("零多项式没有根")
    nvars = next(iter(poly.values())).nvars
    target = Fraction(order) if order is not None else TRUNCATION_CONFIG["default_order"]
    if real_input is None:
        real_input = all(c.is_real() for c in poly.values())
    roots = _expand_roots(poly, nvars, target, real_input, positive_only=False)
    logger.debug(f"Newton–Puiseux: {len(roots)} 个根分支，总重数 {sum(r.multiplicity for r in roots)}")
    return roots


def newton_puiseux(f: MultiPoly, order: Optional[Fraction] = None) -> List[PuiseuxRoot]:
    """二元多项式 F(x, y) 关于 y 的 Puiseux 根（x 的分数幂级数），含重数"""
    if f.nvars != 2:
        raise ValueError(f"newton_puiseux 需要二元多项式，收到 {f.nvars} 元")
    if f.is_zero():
        raise ValueError("零多项式没有根")
    coeffs = f.coefficients_in(1)
    # 去掉 x 的整体幂次（F(0, y) ≡ 0 的情形）与 y^β
    shift = min(exp[0] for exp in f.terms)
    beta = min(coeffs)
    series = {}
    for k, c in coeffs.items():
        series[k - beta] = PuiseuxSeries(1, {(e[0] - shift,): v for e, v in c.terms.items()})
    if shift:
        logger.info(f"F(0, y) 恒为零，先去掉因子 x^{shift}")
    if beta:
        logger.debug(f"分出 y^{beta}")
    roots = puiseux_roots(series, order, real_input=f.is_real())
    logger.info(f"Newton–Puiseux 完成: {len(roots)} 个根分支")
    return roots


def root_multiset(roots: Sequence[PuiseuxRoot]) -> List[PuiseuxRoot]:
    """按重数展开"""
    expanded = []
    for r in roots:
        expanded.extend([r] * r.multiplicity)
    return expanded
