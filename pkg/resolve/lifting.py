# lifting.py
"""
区域上 F 关于最后一个变量的根
二次时用求根公式：判别式是 FNC，平方根等于单项式指数减半乘单位的平方根
其余次数交给 Newton–Puiseux 提升，要求首项数据在截断阶内可分离
首项系数不在 Q(i) 中又没有二次余因子时只保留数值首项，δ0 只用到首项数据
"""
from dataclasses import dataclass, field
from fractions import Fraction
import logging
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from algebra.exceptions import Incomparable, IrrationalJetError, NotFNC, TruncationExhausted
from algebra.exponents import Exponent, is_nonnegative, leq, lt, minimal_elements, order_exponents, scale, zero_exponent
from algebra.polynomial import MultiPoly
from algebra.scalars import GaussRational, ONE, gauss_sqrt
from algebra.series import PuiseuxSeries
from algebra.units import FNCForm, fnc_certify, invert_series, power_series
from config import TRUNCATION_CONFIG
from elimination.resultant import PolyInLast
from puiseux.newton_puiseux import InexactTail, PuiseuxRoot, Reality, RootPlace, puiseux_roots
from newton.mep import FactoredRootData, RootGroup
from towers.transforms import CoordChain
from .exceptions import Unresolved

logger = logging.getLogger(__name__)

Scalar = Union[GaussRational, complex]


@dataclass(frozen=True)
class SurdSeries:
    """
    rational + k·√radicand·spread
    radicand 不是 Q(i) 中的平方，因此有理部分与根式部分的同指数项不会相消
    radicand 为 None 时就是普通的精确级数
    tail 非空时 rational 为精确前缀，其后一项只有浮点系数，更高阶未知；不与根式同时出现
    """
    rational: PuiseuxSeries
    radicand: Optional[GaussRational] = None
    k: Fraction = Fraction(0)
    spread: Optional[PuiseuxSeries] = None
    tail: Optional[InexactTail] = None

    @classmethod
    def numeric(cls, prefix: PuiseuxSeries, tail: InexactTail) -> "SurdSeries":
        """精确前缀加数值尾项；被尾项指数支配的前缀项超出已知精度，丢掉"""
        terms = {}
        coeff = complex(tail.coefficient)
        for e, c in prefix.terms.items():
            if e == tail.exponent:
                coeff += complex(c)
            elif not leq(tail.exponent, e):
                terms[e] = c
        rational = PuiseuxSeries(prefix.nvars, terms, order=prefix.order, eps=prefix.eps)
        return cls(rational, tail=InexactTail(tail.exponent, coeff))

    @property
    def nvars(self) -> int:
        return self.rational.nvars

    def _has_surd(self) -> bool:
        return self.radicand is not None and self.k != 0

    def is_exact(self) -> bool:
        return self.tail is None and not self._has_surd()

    def exact_series(self) -> PuiseuxSeries:
        if self.tail is not None:
            raise IrrationalJetError("根的首项系数不在 Q(i) 中，只有数值尾项")
        if not self.is_exact():
            raise IrrationalJetError(f"根含二次根式 √({self.radicand})，没有 Q(i) 上的级数表示")
        return self.rational

    def is_zero(self) -> bool:
        return self.is_exact() and self.rational.is_zero()

    def _numeric_sub(self, other: "SurdSeries") -> "SurdSeries":
        if self == other:
            return SurdSeries(PuiseuxSeries(self.nvars, {}))
        if self._has_surd() or other._has_surd():
            raise IrrationalJetError("二次根式根与数值尾项根无法相减")
        mine = self.tail
        theirs = None if other.tail is None else InexactTail(other.tail.exponent, -other.tail.coefficient)
        if mine is None or theirs is None:
            tail = mine or theirs
        elif mine.exponent == theirs.exponent:
            coeff = mine.coefficient + theirs.coefficient
            scale_ = max(abs(mine.coefficient), abs(theirs.coefficient))
            if abs(coeff) <= TRUNCATION_CONFIG["numeric_tolerance"] * scale_:
                # 数值首项相消：前缀也相同则视为同一个值，否则尾项处只知道为零
                rational = self.rational - other.rational
                if rational.is_zero():
                    return SurdSeries(PuiseuxSeries(self.nvars, {}))
                coeff = 0j
            tail = InexactTail(mine.exponent, coeff)
        elif lt(mine.exponent, theirs.exponent):
            tail = mine
        elif lt(theirs.exponent, mine.exponent):
            tail = theirs
        else:
            raise IrrationalJetError("两个数值尾项的指数不可比")
        return SurdSeries.numeric(self.rational - other.rational, tail)

    def __sub__(self, other: "SurdSeries") -> "SurdSeries":
        if self.tail is not None or other.tail is not None:
            return self._numeric_sub(other)
        rational = self.rational - other.rational
        if self.is_exact() and other.is_exact():
            return SurdSeries(rational)
        carrier = other if self.is_exact() else self
        for part in (self, other):
            if not part.is_exact() and (part.radicand != carrier.radicand or part.spread != carrier.spread):
                raise IrrationalJetError("两个根含不同的二次根式，无法精确相减")
        k = (Fraction(0) if self.is_exact() else self.k) - (Fraction(0) if other.is_exact() else other.k)
        if k == 0:
            return SurdSeries(rational)
        return SurdSeries(rational, carrier.radicand, k, carrier.spread)

    def real_part(self) -> "SurdSeries":
        if self.tail is not None:
            if self.is_real():
                return self
            # 实部在尾项处只知道数值首项；纯虚尾项的实部记为零
            coeff = self.tail.coefficient
            re = 0.0 if abs(coeff.real) <= TRUNCATION_CONFIG["numeric_tolerance"] * abs(coeff) else coeff.real
            return SurdSeries.numeric(self.rational.real_part(), InexactTail(self.tail.exponent, complex(re)))
        if self.is_exact():
            return SurdSeries(self.rational.real_part())
        if not (self.radicand.is_real() and self.spread.is_real()):
            raise IrrationalJetError(f"复二次根式 √({self.radicand}) 的实部无法精确表示")
        if self.radicand.re < 0:
            # 纯虚根式
            return SurdSeries(self.rational.real_part())
        return SurdSeries(self.rational.real_part(), self.radicand, self.k, self.spread)

    def is_real(self) -> bool:
        if self.tail is not None:
            coeff = self.tail.coefficient
            return self.rational.is_real() \
                and abs(coeff.imag) <= TRUNCATION_CONFIG["numeric_tolerance"] * max(abs(coeff), 1.0)
        if self.is_exact():
            return self.rational.is_real()
        return self.rational.is_real() and self.spread.is_real() and self.radicand.is_real() \
            and self.radicand.re > 0

    def minimal_exponents(self) -> List[Exponent]:
        support = list(self.rational.terms)
        if self._has_surd():
            support.extend(self.spread.terms)
        if self.tail is not None:
            support.append(self.tail.exponent)
        return minimal_elements(support)

    def _tail_vanishes(self, gamma: Exponent) -> bool:
        """首项落在系数为零的数值尾项上：该处只知道实部为零，更高阶未知"""
        return self.tail is not None and gamma == self.tail.exponent and abs(self.tail.coefficient) == 0

    def is_fnc(self) -> bool:
        if self.is_exact():
            return self.rational.is_fnc()
        minimal = self.minimal_exponents()
        return len(minimal) == 1 and not self._tail_vanishes(minimal[0])

    def _root(self) -> complex:
        return complex(self.radicand) ** 0.5

    def leading(self) -> Tuple[Exponent, Scalar, bool]:
        """唯一极小指数、首项系数、系数是否精确；含根式或落在数值尾项上时系数只有浮点值"""
        if self.is_exact():
            coeff, gamma, _ = self.rational.split_fnc()
            return gamma, coeff, True
        minimal = self.minimal_exponents()
        if len(minimal) != 1:
            raise NotFNC(f"最小指数不唯一: {len(minimal)} 个")
        gamma = minimal[0]
        if self._tail_vanishes(gamma):
            raise NotFNC("首项超出已知精度")
        if self.tail is not None:
            if gamma != self.tail.exponent:
                return gamma, self.rational.coefficient(gamma), True
            return gamma, self.tail.coefficient, False
        value = complex(self.rational.coefficient(gamma)) \
            + float(self.k) * self._root() * complex(self.spread.coefficient(gamma))
        return gamma, value, False

    def evaluate_numpy(self, points: np.ndarray) -> np.ndarray:
        values = self.rational.evaluate_numpy(points)
        if self._has_surd():
            values = values + float(self.k) * self._root() * self.spread.evaluate_numpy(points)
        if self.tail is not None:
            mono = PuiseuxSeries.monomial(self.tail.exponent).evaluate_numpy(points)
            values = values + self.tail.coefficient * mono
        return values

    def format(self, names: Optional[Sequence[str]] = None) -> str:
        text = self.rational.format(names)
        if self.tail is not None:
            mono = PuiseuxSeries.monomial(self.tail.exponent).format(names)
            return f"{text} + ~({self.tail.coefficient:.6g})*{mono}"
        if self.is_exact():
            return text
        return f"{text} + ({self.k})*sqrt({self.radicand})*({self.spread.format(names)})"



@dataclass(frozen=True)
class LiftedRoot:
    value: SurdSeries
    multiplicity: int
    real: bool

    @property
    def leading_exponent(self) -> Exponent:
        return self.value.leading()[0]

    def is_exact(self) -> bool:
        return self.value.is_exact()

    def to_puiseux_root(self) -> PuiseuxRoot:
        """
        转成塔式分解使用的根
        纯虚根式的复根：实部精确，根式部分只保留首项（数值尾项）
        实根含根式时没有 Q(i) 上的中心，抛出 IrrationalJetError
        """
        gamma, coeff, _ = self.value.leading()
        if self.value.tail is not None:
            reality = Reality.REAL if self.real else (
                Reality.COMPLEX_PAIR if self.value.rational.is_real() else Reality.COMPLEX_SINGLE)
            return PuiseuxRoot(series=self.value.rational, multiplicity=self.multiplicity,
                               leading_exponent=gamma, leading_coefficient=coeff, reality=reality,
                               tail=self.value.tail)
        if not self.value.is_exact():
            if self.value.is_real() or not self.value.rational.is_real():
                raise IrrationalJetError(f"根含实二次根式 √({self.value.radicand})，没有 Q(i) 上的中心")
            centre = self.value.real_part().exact_series()
            surd = self.value - SurdSeries(centre)
            tail_gamma, tail_coeff, _ = surd.leading()
            return PuiseuxRoot(series=centre, multiplicity=self.multiplicity, leading_exponent=gamma,
                               leading_coefficient=coeff, reality=Reality.COMPLEX_PAIR,
                               tail=InexactTail(tail_gamma, complex(tail_coeff)))
        series = self.value.exact_series()
        if self.real:
            reality = Reality.REAL
        elif series.is_real():
            reality = Reality.COMPLEX_PAIR
        else:
            reality = Reality.COMPLEX_SINGLE
        return PuiseuxRoot(series=series, multiplicity=self.multiplicity, leading_exponent=gamma,
                           leading_coefficient=coeff, reality=reality)

    def to_dict(self, names: Optional[Sequence[str]] = None) -> Dict:
        gamma, coeff, exact = self.value.leading()
        return {
            "value": self.value.format(names),
            "multiplicity": self.multiplicity,
            "real": self.real,
            "exact": self.is_exact(),
            "leading_exponent": [str(e) for e in gamma],
            "leading_coefficient": str(coeff) if exact else repr(complex(coeff)),
        }


@dataclass(frozen=True)
class RegionRoots:
    """
    区域上 F∘(φ, x_{n+1}) = lead · x_{n+1}^{β_{n+1}} · Π (x_{n+1} − r_i)^{m_i} · (远根因子)
    远根（首指数为零）和无界根（首指数非正）并入单位，其首指数计入 beta
    """
    label: str
    chain: CoordChain
    beta_last: int
    lead: PuiseuxSeries
    beta: Exponent
    roots: Tuple[LiftedRoot, ...]
    absorbed: Tuple[Exponent, ...] = ()
    method: str = "none"
    order: Fraction = field(default=TRUNCATION_CONFIG["default_order"])
    inequalities: Tuple[str, ...] = ()
    notes: Tuple[str, ...] = ()

    @property
    def nvars(self) -> int:
        return self.chain.nvars

    @property
    def degree(self) -> int:
        return sum(r.multiplicity for r in self.roots) + len(self.absorbed)

    def fnc_roots(self) -> List[FNCForm]:
        """精确且非零的根写成认证过的 FNC 形式"""
        forms = []
        for root in self.roots:
            if root.is_exact() and not root.value.is_zero():
                forms.append(fnc_certify(root.value.exact_series(), fixed=self.chain.fixed))
        return forms

    def puiseux_roots(self) -> List[PuiseuxRoot]:
        return [r.to_puiseux_root() for r in self.roots]

    def real_surd_pair(self) -> Optional[Tuple[PuiseuxSeries, PuiseuxSeries, int]]:
        """
        恰有一对实二次根式根 c ± √D 时返回 (c, D, 重数)，其余根须精确或非实
        D 的系数在 Q(i) 中，纤维改用 s = (x − c)² 后根 s = D 是精确的
        """
        if self.absorbed or any(r.value.tail is not None for r in self.roots):
            return None
        surds = [r for r in self.roots if not r.is_exact() and r.value.is_real()]
        if len(surds) != 2:
            return None
        first, second = (r.value for r in surds)
        if first.rational != second.rational or first.k != -second.k:
            return None
        square = (first.spread * first.spread).scale(first.radicand).scale(first.k * first.k)
        return first.rational, square, surds[0].multiplicity

    def real_shifts(self) -> List[SurdSeries]:
        """各近根实部中互不相同的非零者"""
        shifts: List[SurdSeries] = []
        for root in self.roots:
            re = root.value.real_part()
            if not re.is_zero() and re not in shifts:
                shifts.append(re)
        return shifts

    def factored(self, shift: Optional[SurdSeries] = None) -> FactoredRootData:
        """
        y_{n+1} → y_{n+1} + shift 之后的因式分解数据
        x_{n+1}^{β_{n+1}} 看作 β_{n+1} 重零根一起平移
        """
        zero = SurdSeries(PuiseuxSeries(self.nvars, {}))
        values = [(r.value, r.multiplicity) for r in self.roots]
        if self.beta_last:
            values.append((zero, self.beta_last))
        beta_last = 0
        grouped: Dict[Exponent, List] = {}
        for value, multiplicity in values:
            try:
                moved = value - shift if shift is not None else value
            except IrrationalJetError as e:
                raise Unresolved(f"区域 {self.label} 上平移后的根超出已知精度: {e}", {"region": self.label}) from e
            if moved.is_zero():
                beta_last += multiplicity
                continue
            if not moved.is_fnc():
                raise Unresolved(f"区域 {self.label} 上平移后的根不是 FNC", {"root": moved.format()})
            gamma, coeff, _ = moved.leading()
            if not any(gamma):
                continue
            grouped.setdefault(gamma, []).extend([coeff] * multiplicity)
        groups = [RootGroup(alpha, len(leading), tuple(leading)) for alpha, leading in grouped.items()]
        try:
            return FactoredRootData(self.beta, beta_last, tuple(groups))
        except Incomparable as e:
            raise Unresolved(f"区域 {self.label} 上平移后根的首指数不可比", {"region": self.label}) from e

    def to_dict(self) -> Dict:
        names = [f"y{j + 1}" for j in range(self.nvars)]
        return {
            "label": self.label,
            "chain": self.chain.to_dict(),
            "beta_last": self.beta_last,
            "beta": [str(b) for b in self.beta],
            "lead": self.lead.format(names),
            "method": self.method,
            "absorbed": [[str(a) for a in alpha] for alpha in self.absorbed],
            "roots": [r.to_dict(names) for r in self.roots],
        }


def _chain_of(region) -> Tuple[CoordChain, str]:
    if isinstance(region, CoordChain):
        return region, "V"
    return region.chain, getattr(region, "label", "V")


def _composed_coefficients(f: MultiPoly, chain: CoordChain, order: Fraction) -> Dict[int, PuiseuxSeries]:
    """F 关于最后一个变量的系数复合上 φ，零系数去掉"""
    n = f.nvars - 1
    if chain.nvars != n:
        raise ValueError(f"坐标链维数 {chain.nvars} 与底空间维数 {n} 不一致")
    composed = {}
    for k, coeff in PolyInLast(f).coefficients.items():
        if coeff.is_zero():
            continue
        series = chain.compose_poly(coeff.drop_variable(n), order)
        if series.is_zero():
            raise Unresolved(f"x{n + 1}^{k} 的系数在截断阶 {order} 内复合为零",
                             {"power": k, "order": str(order)})
        composed[k] = series
    return composed


def _quadratic_roots(coeffs: Dict[int, PuiseuxSeries], order: Fraction) -> Optional[List[LiftedRoot]]:
    """
    a X^2 + b X + c 的根 −b/(2a) ± √disc/(2a)，a 为非零常数
    disc = d0 y^γ U，√disc = √d0 · y^{γ/2} U^{1/2}；√d0 不在 Q(i) 中时保留根式
    返回 None 表示求根公式在截断阶内无法给出可分离的根
    """
    a = coeffs[2].constant_term()
    nvars = coeffs[2].nvars
    b = coeffs.get(1, PuiseuxSeries(nvars, {}))
    c = coeffs[0]
    centre = b.scale(-ONE / (2 * a))
    disc = b * b - (c * coeffs[2]).scale(4)
    real_input = all(s.is_real() for s in coeffs.values())
    if disc.is_zero():
        if not disc.is_exact():
            return None
        return [LiftedRoot(SurdSeries(centre), 2, centre.is_real())]
    if not disc.is_fnc():
        return None
    d0, gamma, unit = disc.split_fnc()
    spread = power_series(unit, Fraction(1, 2), order).multiply_monomial(scale(gamma, Fraction(1, 2)))
    spread = spread.scale(ONE / (2 * a))
    try:
        root = gauss_sqrt(d0)
        values = [SurdSeries(centre + spread.scale(root)), SurdSeries(centre - spread.scale(root))]
    except IrrationalJetError:
        logger.debug(f"判别式首项系数 {d0} 的平方根不在 Q(i) 中，保留根式")
        values = [SurdSeries(centre, d0, Fraction(1), spread), SurdSeries(centre, d0, Fraction(-1), spread)]
    roots = []
    for value in values:
        if value.is_zero() or not value.is_fnc():
            return None
        roots.append(LiftedRoot(value, 1, real_input and value.is_real()))
    return roots


def _monic(coeffs: Dict[int, PuiseuxSeries], order: Fraction) -> Dict[int, PuiseuxSeries]:
    """首项系数为单位时除掉它"""
    degree = max(coeffs)
    lead = coeffs[degree]
    if lead.is_exact() and len(lead.terms) == 1 and not any(next(iter(lead.terms))):
        factor = ONE / lead.constant_term()
        monic = {k: s.scale(factor) for k, s in coeffs.items()}
    else:
        inverse = invert_series(lead, order)
        monic = {k: s * inverse for k, s in coeffs.items()}
    monic[degree] = PuiseuxSeries.constant(lead.nvars, 1)
    return monic


def _divide_root(coeffs: Dict[int, PuiseuxSeries],
                 root: PuiseuxSeries) -> Tuple[Dict[int, PuiseuxSeries], PuiseuxSeries]:
    """综合除法 Σ c_k X^k = (X − r) Σ q_k X^k + 余项"""
    zero = PuiseuxSeries(root.nvars, {})
    quotient: Dict[int, PuiseuxSeries] = {}
    carry = zero
    for k in range(max(coeffs), 0, -1):
        carry = coeffs.get(k, zero) + carry * root
        quotient[k - 1] = carry
    return quotient, coeffs.get(0, zero) + carry * root


def _surd_cofactor(coeffs: Dict[int, PuiseuxSeries], exact: Sequence[LiftedRoot],
                   order: Fraction) -> Optional[List[LiftedRoot]]:
    """
    除掉全部精确根后剩下首一二次因子时用求根公式
    例如 x^3 − y 的两个复根 y^{1/3}(−1 ± √−3)/2
    """
    if coeffs[max(coeffs)].constant_term().is_zero():
        return None
    cofactor = _monic(coeffs, order)
    for root in exact:
        for _ in range(root.multiplicity):
            cofactor, remainder = _divide_root(cofactor, root.value.exact_series())
            if not remainder.is_zero():
                logger.debug(f"除掉精确根后余项非零: {remainder.format()}")
                return None
    if max(cofactor) != 2:
        return None
    return _quadratic_roots(cofactor, order)


def _newton_roots(coeffs: Dict[int, PuiseuxSeries], order: Fraction,
                  label: str) -> Tuple[List[LiftedRoot], List[Exponent]]:
    try:
        found = puiseux_roots(coeffs, order)
    except (Incomparable, TruncationExhausted, NotFNC) as e:
        logger.error(f"{label}: Newton–Puiseux 提升失败: {e}")
        raise Unresolved(f"区域 {label} 上的根在截断阶 {order} 内无法分离",
                         {"region": label, "order": str(order), "reason": str(e)}) from e
    near: List[LiftedRoot] = []
    absorbed: List[Exponent] = []
    inexact: List[PuiseuxRoot] = []
    for root in found:
        if root.place != RootPlace.NEAR:
            absorbed.extend([root.leading_exponent] * root.multiplicity)
            continue
        if not root.is_exact():
            inexact.append(root)
            continue
        value = SurdSeries(root.series)
        if not value.is_fnc():
            raise Unresolved(f"区域 {label} 上的根在截断阶 {order} 内不是 FNC",
                             {"region": label, "root": root.series.format()})
        near.append(LiftedRoot(value, root.multiplicity, root.is_real()))
    if inexact:
        surds = None if absorbed else _surd_cofactor(coeffs, near, order)
        if surds is not None:
            logger.debug(f"{label}: 除掉 {len(near)} 个精确根后由二次因子得到根式根")
            near.extend(surds)
        else:
            # 只保留数值首项；后续只用到首项数据，首项相消时报 Unresolved
            logger.info(f"{label}: {len(inexact)} 个根的首项系数不在 Q(i) 中，按数值尾项处理")
            for root in inexact:
                value = SurdSeries.numeric(root.series, root.tail)
                near.append(LiftedRoot(value, root.multiplicity, root.is_real()))
    return near, absorbed


def _check_separation(roots: Sequence[LiftedRoot], label: str) -> None:
    """首指数全序，两两之差为零或 FNC"""
    alphas = sorted({r.leading_exponent for r in roots})
    try:
        order_exponents(alphas)
    except Incomparable as e:
        raise Unresolved(f"区域 {label} 上根的首指数不可比", {"region": label, **e.details}) from e
    for i, a in enumerate(roots):
        for b in roots[i + 1:]:
            try:
                diff = a.value - b.value
            except IrrationalJetError as e:
                raise Unresolved(f"区域 {label} 上的根差无法精确表示", {"region": label}) from e
            if not diff.is_zero() and not diff.is_fnc():
                raise Unresolved(f"区域 {label} 上两根之差不是 FNC",
                                 {"region": label, "difference": diff.format()})


def lift_roots(f: MultiPoly, region, order: Optional[Fraction] = None) -> RegionRoots:
    """
    把 F 关于 x_{n+1} 的根提升到底区域的坐标 y 上
    region 为带 chain 的区域或 CoordChain 本身；Λ∘φ 应已是 FNC
    """
    order = Fraction(order) if order is not None else TRUNCATION_CONFIG["default_order"]
    chain, label = _chain_of(region)
    composed = _composed_coefficients(f, chain, order)
    beta_last = min(composed)
    coeffs = {k - beta_last: s for k, s in composed.items()}
    degree = max(coeffs)
    lead = coeffs[degree]
    if not lead.is_fnc():
        raise Unresolved(f"区域 {label} 上首项系数不是 FNC", {"region": label, "lead": lead.format()})
    beta = lead.fnc_exponent()
    absorbed: List[Exponent] = []
    # 首项系数为单位时一次、二次直接用公式（先除掉单位）
    unit_lead = beta == zero_exponent(chain.nvars)
    if degree == 0:
        roots, method = [], "none"
    elif degree == 1 and unit_lead:
        value = SurdSeries(-_monic(coeffs, order)[0])
        roots, method = [LiftedRoot(value, 1, value.is_real())], "linear"
    else:
        roots = None
        if degree == 2 and unit_lead:
            roots = _quadratic_roots(_monic(coeffs, order), order)
        if roots is not None:
            method = "quadratic"
        else:
            roots, absorbed = _newton_roots(coeffs, order, label)
            method = "newton-puiseux"
    # 远根因子 (x_{n+1} − r) ≈ −r，并入单位
    near = []
    for root in roots:
        if not root.value.is_fnc():
            raise Unresolved(f"区域 {label} 上的根在截断阶 {order} 内不是 FNC",
                             {"region": label, "root": root.value.format()})
        alpha = root.leading_exponent
        if is_nonnegative(alpha) and any(alpha):
            near.append(root)
        else:
            absorbed.extend([alpha] * root.multiplicity)
    for alpha in absorbed:
        beta = tuple(b + a for b, a in zip(beta, alpha))
    _check_separation(near, label)
    logger.debug(f"{label}: {method} 得到 {len(near)} 个近根，{len(absorbed)} 个并入单位，β_(n+1)={beta_last}")
    return RegionRoots(label, chain, beta_last, lead, beta, tuple(near), tuple(absorbed), method, order)
