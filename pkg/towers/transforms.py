# transforms.py
from abc import ABC, abstractmethod
from dataclasses import dataclass
from fractions import Fraction
import logging
from typing import ClassVar, Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from algebra.exceptions import IrrationalJetError, NotAUnit, NotFNC, VariableMismatch
from algebra.exponents import Exponent, add, as_exponent, format_exponent, scale, zero_exponent
from algebra.scalars import GaussRational, ONE, as_gauss, gauss_rational_power
from algebra.series import PuiseuxSeries
from algebra.units import FNCForm, poly_compose, power_series, series_compose, unit_certify
from .exceptions import IllegalComposition

logger = logging.getLogger(__name__)


def _names(nvars: int, prefix: str) -> List[str]:
    return [f"{prefix}{j + 1}" for j in range(nvars)]


def _monomial_text(coeff, exponent: Sequence, names: Sequence[str]) -> str:
    factors = [n if e == 1 else f"{n}^({e})" for n, e in zip(names, exponent) if e != 0]
    coeff = as_gauss(coeff)
    if not factors:
        return str(coeff)
    head = "" if coeff == ONE else f"{coeff}*"
    return head + "*".join(factors)


def _fraction_det(matrix: Sequence[Sequence[Fraction]]) -> Fraction:
    """有理矩阵行列式（高斯消元）"""
    rows = [[Fraction(x) for x in row] for row in matrix]
    n = len(rows)
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if rows[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            rows[col], rows[pivot] = rows[pivot], rows[col]
            det = -det
        det *= rows[col][col]
        for r in range(col + 1, n):
            factor = rows[r][col] / rows[col][col]
            if factor:
                rows[r] = [a - factor * b for a, b in zip(rows[r], rows[col])]
    return det


# ---------------------------------------------------------------------------
# Jacobian
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class JacobianForm:
    """
    Jacobian 行列式 coefficient · Π b^q · y^exponent · unit(y)
    unit 常数项为 1；归一化幂映射之前 exponent 可以有负分量
    radicals 记录不在 Q(i) 中的正常数因子 b^q（b 为正有理数）
    """
    coefficient: GaussRational
    exponent: Exponent
    unit: PuiseuxSeries
    radicals: Tuple[Tuple[Fraction, Fraction], ...] = ()

    @classmethod
    def one(cls, nvars: int) -> "JacobianForm":
        return cls(ONE, zero_exponent(nvars), PuiseuxSeries.constant(nvars, 1))

    @classmethod
    def from_series(cls, series: PuiseuxSeries) -> "JacobianForm":
        coeff, gamma, unit = series.split_fnc()
        return cls(coeff, gamma, unit)

    @property
    def nvars(self) -> int:
        return len(self.exponent)

    @property
    def radical_value(self) -> float:
        return float(np.prod([float(b) ** float(q) for b, q in self.radicals])) if self.radicals else 1.0

    def is_unit(self) -> bool:
        return all(e == 0 for e in self.exponent)

    def __mul__(self, other: "JacobianForm") -> "JacobianForm":
        if not isinstance(other, JacobianForm):
            return NotImplemented
        return JacobianForm(self.coefficient * other.coefficient,
                            add(self.exponent, other.exponent), self.unit * other.unit,
                            self.radicals + other.radicals)

    def compose(self, images: Sequence[PuiseuxSeries], order=None) -> "JacobianForm":
        """代入坐标像；指数非零的变量要求其像为 FNC"""
        target = images[0].nvars
        coefficient = self.coefficient
        radicals = list(self.radicals)
        exponent = zero_exponent(target)
        unit = series_compose(self.unit, images, order)
        for j, g in enumerate(self.exponent):
            if g == 0:
                continue
            c_j, e_j, u_j = images[j].split_fnc()
            try:
                coefficient = coefficient * gauss_rational_power(c_j, g)
            except IrrationalJetError:
                if not (c_j.is_real() and c_j.re > 0):
                    raise
                radicals.append((c_j.re, Fraction(g)))
            exponent = add(exponent, scale(e_j, g))
            if not (u_j.is_exact() and len(u_j.terms) == 1):
                unit = unit * power_series(u_j, g, order)
        c0 = unit.constant_term()
        if c0 != ONE:
            coefficient = coefficient * c0
            unit = unit.scale(ONE / c0)
        return JacobianForm(coefficient, exponent, unit, tuple(radicals))

    def evaluate_numpy(self, points: np.ndarray) -> np.ndarray:
        points = np.atleast_2d(np.asarray(points, dtype=float))
        monomial = np.ones(points.shape[0])
        for j, e in enumerate(self.exponent):
            if e:
                monomial = monomial * np.power(points[:, j], float(e))
        return complex(self.coefficient) * self.radical_value * monomial * self.unit.evaluate_numpy(points)

    def to_fnc(self, eps=None, fixed: Iterable[int] = ()) -> FNCForm:
        """正常数因子 radicals 不影响单位性，认证时略去"""
        if any(e < 0 for e in self.exponent):
            raise NotFNC(f"Jacobian 指数含负分量: {format_exponent(self.exponent)}")
        unit = unit_certify(self.unit.scale(self.coefficient), eps=eps, fixed=fixed)
        return FNCForm(unit=unit, exponent=self.exponent)

    def format(self, names: Optional[Sequence[str]] = None) -> str:
        names = names or _names(self.nvars, "y")
        mono = _monomial_text(self.coefficient, self.exponent, names)
        if self.radicals:
            mono = "*".join(f"{b}^({q})" for b, q in self.radicals) + "*" + mono
        if len(self.unit.terms) == 1:
            return mono
        return f"{mono} * ({self.unit.format(names)})"


# ---------------------------------------------------------------------------
# 初等变换
# ---------------------------------------------------------------------------

class ElementaryTransform(ABC):
    """x = T(y)：给出坐标像、Jacobian、数值正反映射"""
    kind: ClassVar[str] = "elementary"

    @property
    @abstractmethod
    def nvars(self) -> int:
        ...

    @abstractmethod
    def images(self) -> Tuple[PuiseuxSeries, ...]:
        ...

    @abstractmethod
    def jacobian(self) -> JacobianForm:
        ...

    @abstractmethod
    def forward(self, points: np.ndarray) -> np.ndarray:
        ...

    @abstractmethod
    def inverse(self, points: np.ndarray) -> np.ndarray:
        ...

    @abstractmethod
    def describe(self) -> str:
        ...

    def to_dict(self) -> Dict:
        return {"kind": self.kind, "map": self.describe()}


@dataclass(frozen=True)
class MonomialMap(ElementaryTransform):
    """
    x_i = c_i · Π_j y_j^{E_ij}
    幂变换（对角 E）与 blow-down 都是它的特例
    """
    matrix: Tuple[Tuple[Fraction, ...], ...]
    coefficients: Tuple[Fraction, ...]
    label: str = "monomial"

    kind: ClassVar[str] = "monomial"

    def __post_init__(self):
        matrix = tuple(as_exponent(row) for row in self.matrix)
        if any(len(row) != len(matrix) for row in matrix):
            raise ValueError("单项式映射的指数矩阵必须是方阵")
        if any(x < 0 for row in matrix for x in row):
            raise ValueError("单项式映射的指数必须非负")
        coefficients = tuple(Fraction(c) for c in self.coefficients)
        if len(coefficients) != len(matrix) or any(c <= 0 for c in coefficients):
            raise ValueError("单项式映射的系数必须是正有理数")
        if _fraction_det(matrix) == 0:
            raise ValueError("单项式映射的指数矩阵不可逆")
        object.__setattr__(self, "matrix", matrix)
        object.__setattr__(self, "coefficients", coefficients)

    @property
    def nvars(self) -> int:
        return len(self.matrix)

    def images(self) -> Tuple[PuiseuxSeries, ...]:
        return tuple(PuiseuxSeries.monomial(row, c) for row, c in zip(self.matrix, self.coefficients))

    def jacobian(self) -> JacobianForm:
        coefficient = _fraction_det(self.matrix)
        for c in self.coefficients:
            coefficient *= c
        n = self.nvars
        exponent = tuple(sum((self.matrix[i][j] for i in range(n)), Fraction(0)) - 1 for j in range(n))
        return JacobianForm(as_gauss(coefficient), exponent, PuiseuxSeries.constant(n, 1))

    def _arrays(self) -> Tuple[np.ndarray, np.ndarray]:
        exps = np.array([[float(x) for x in row] for row in self.matrix])
        logs = np.log(np.array([float(c) for c in self.coefficients]))
        return exps, logs

    def forward(self, points: np.ndarray) -> np.ndarray:
        points = np.atleast_2d(np.asarray(points, dtype=float))
        exps, logs = self._arrays()
        with np.errstate(divide="ignore", invalid="ignore"):
            return np.exp(np.log(points) @ exps.T + logs)

    def inverse(self, points: np.ndarray) -> np.ndarray:
        points = np.atleast_2d(np.asarray(points, dtype=float))
        exps, logs = self._arrays()
        with np.errstate(divide="ignore", invalid="ignore"):
            rhs = np.log(points) - logs
            solved = np.linalg.solve(exps, rhs.T).T
            return np.exp(solved)

    def describe(self) -> str:
        names = _names(self.nvars, "y")
        parts = [f"x{i + 1} = {_monomial_text(c, row, names)}"
                 for i, (row, c) in enumerate(zip(self.matrix, self.coefficients))]
        return f"{self.label}: " + ", ".join(parts)

    def to_dict(self) -> Dict:
        return {"kind": self.label, "map": self.describe()}


def power_transform(exponents: Sequence) -> MonomialMap:
    """x_j = y_j^{r_j}，Jacobian Π r_j y_j^{r_j − 1}"""
    r = as_exponent(exponents)
    if any(x <= 0 for x in r):
        raise ValueError(f"幂变换指数必须为正: {format_exponent(r)}")
    n = len(r)
    matrix = tuple(tuple(r[i] if i == j else Fraction(0) for j in range(n)) for i in range(n))
    return MonomialMap(matrix, (Fraction(1),) * n, label="power")


def blow_down(k: int, nvars: int) -> MonomialMap:
    """σ(y) = (y_1, …, y_k, y_{k+1} y_n, …, y_{n−1} y_n, y_n)，Jacobian y_n^{n−k−1}"""
    if not 0 <= k < nvars:
        raise ValueError(f"blow-down 参数 k={k} 超出范围")
    rows = []
    for i in range(nvars):
        row = [Fraction(0)] * nvars
        row[i] = Fraction(1)
        if k <= i < nvars - 1:
            row[nvars - 1] = Fraction(1)
        rows.append(tuple(row))
    return MonomialMap(tuple(rows), (Fraction(1),) * nvars, label="blow-down")


def _independent(series: PuiseuxSeries, index: int, what: str) -> None:
    if any(e[index] != 0 for e in series.terms):
        raise ValueError(f"{what} 不能依赖被变换的变量 y{index + 1}")


@dataclass(frozen=True)
class UnitScaling(ElementaryTransform):
    """x_index = factor(y′) · y_index，factor 与 y_index 无关（单位或 FNC 单项式）"""
    index: int
    factor: PuiseuxSeries

    kind: ClassVar[str] = "unit-scaling"

    def __post_init__(self):
        _independent(self.factor, self.index, "缩放因子")
        if not self.factor.is_real():
            raise ValueError("缩放因子必须是实系数级数")

    @property
    def nvars(self) -> int:
        return self.factor.nvars

    def images(self) -> Tuple[PuiseuxSeries, ...]:
        result = []
        for j in range(self.nvars):
            y = PuiseuxSeries.variable(self.nvars, j)
            result.append(self.factor * y if j == self.index else y)
        return tuple(result)

    def jacobian(self) -> JacobianForm:
        return JacobianForm.from_series(self.factor)

    def forward(self, points: np.ndarray) -> np.ndarray:
        points = np.array(np.atleast_2d(points), dtype=float)
        points[:, self.index] *= self.factor.evaluate_numpy(points).real
        return points

    def inverse(self, points: np.ndarray) -> np.ndarray:
        points = np.array(np.atleast_2d(points), dtype=float)
        with np.errstate(divide="ignore", invalid="ignore"):
            points[:, self.index] /= self.factor.evaluate_numpy(points).real
        return points

    def describe(self) -> str:
        j = self.index + 1
        return f"x{j} = ({self.factor.format()}) * y{j}"


@dataclass(frozen=True)
class Shift(ElementaryTransform):
    """x_index = y_index + offset(y′)，Jacobian 为 1"""
    index: int
    offset: PuiseuxSeries

    kind: ClassVar[str] = "shift"

    def __post_init__(self):
        _independent(self.offset, self.index, "平移量")
        if not self.offset.is_real():
            raise ValueError("平移量必须是实系数级数")

    @property
    def nvars(self) -> int:
        return self.offset.nvars

    def images(self) -> Tuple[PuiseuxSeries, ...]:
        result = []
        for j in range(self.nvars):
            y = PuiseuxSeries.variable(self.nvars, j)
            result.append(y + self.offset if j == self.index else y)
        return tuple(result)

    def jacobian(self) -> JacobianForm:
        return JacobianForm.one(self.nvars)

    def forward(self, points: np.ndarray) -> np.ndarray:
        points = np.array(np.atleast_2d(points), dtype=float)
        points[:, self.index] += self.offset.evaluate_numpy(points).real
        return points

    def inverse(self, points: np.ndarray) -> np.ndarray:
        points = np.array(np.atleast_2d(points), dtype=float)
        points[:, self.index] -= self.offset.evaluate_numpy(points).real
        return points

    def describe(self) -> str:
        j = self.index + 1
        return f"x{j} = y{j} + ({self.offset.format()})"


@dataclass(frozen=True)
class PowerCoordinates(ElementaryTransform):
    """
    x_j = w_j^{1/k_j}：链的像写的是 w = x^k 而不是 x
    只能放在链的最外层；被代入的多项式要先 deflate
    """
    powers: Tuple[int, ...]

    kind: ClassVar[str] = "power-coordinates"

    def __post_init__(self):
        powers = tuple(int(k) for k in self.powers)
        if any(k < 1 for k in powers):
            raise ValueError(f"幂坐标的次数必须为正整数: {powers}")
        object.__setattr__(self, "powers", powers)

    @property
    def nvars(self) -> int:
        return len(self.powers)

    def images(self) -> Tuple[PuiseuxSeries, ...]:
        return tuple(PuiseuxSeries.variable(self.nvars, j) for j in range(self.nvars))

    def jacobian(self) -> JacobianForm:
        coefficient = Fraction(1)
        for k in self.powers:
            coefficient /= k
        exponent = tuple(Fraction(1, k) - 1 for k in self.powers)
        return JacobianForm(as_gauss(coefficient), exponent, PuiseuxSeries.constant(self.nvars, 1))

    def forward(self, points: np.ndarray) -> np.ndarray:
        points = np.array(np.atleast_2d(points), dtype=float)
        with np.errstate(invalid="ignore"):
            return np.power(points, 1.0 / np.array(self.powers, dtype=float))

    def inverse(self, points: np.ndarray) -> np.ndarray:
        points = np.array(np.atleast_2d(points), dtype=float)
        powers = np.array(self.powers, dtype=float)
        # 偶次幂会把负半轴折到正半轴
        return np.where((points < 0) & (powers > 1), np.nan, np.power(points, powers))

    def describe(self) -> str:
        parts = [f"x{j + 1} = w{j + 1}^(1/{k})" for j, k in enumerate(self.powers) if k != 1]
        return "power-coordinates: " + ", ".join(parts)


def _pad(series: PuiseuxSeries, nvars: int) -> PuiseuxSeries:
    extra = (Fraction(0),) * (nvars - series.nvars)
    return PuiseuxSeries(nvars, {e + extra: c for e, c in series.terms.items()},
                         order=series.order, eps=series.eps)


@dataclass(frozen=True)
class BaseLift(ElementaryTransform):
    """底坐标链作用在前 m 个变量上，其余变量不动"""
    chain: "CoordChain"
    total: int

    kind: ClassVar[str] = "base"

    @property
    def nvars(self) -> int:
        return self.total

    def images(self) -> Tuple[PuiseuxSeries, ...]:
        lifted = [_pad(img, self.total) for img in self.chain.images]
        lifted += [PuiseuxSeries.variable(self.total, j) for j in range(self.chain.nvars, self.total)]
        return tuple(lifted)

    def jacobian(self) -> JacobianForm:
        jac = self.chain.jacobian
        extra = (Fraction(0),) * (self.total - jac.nvars)
        return JacobianForm(jac.coefficient, jac.exponent + extra, _pad(jac.unit, self.total), jac.radicals)

    def forward(self, points: np.ndarray) -> np.ndarray:
        points = np.array(np.atleast_2d(points), dtype=float)
        m = self.chain.nvars
        points[:, :m] = self.chain.forward(points[:, :m])
        return points

    def inverse(self, points: np.ndarray) -> np.ndarray:
        points = np.array(np.atleast_2d(points), dtype=float)
        m = self.chain.nvars
        points[:, :m] = self.chain.inverse(points[:, :m])
        return points

    def describe(self) -> str:
        return "base[" + "; ".join(t.describe() for t in self.chain.transforms) + "]"


# ---------------------------------------------------------------------------
# 坐标链
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CoordChain:
    """
    x = T_1 ∘ T_2 ∘ … ∘ T_k (y)
    images 为原坐标关于链坐标的级数，jacobian 随复合逐步相乘
    fixed 中的坐标取满 (0, 1)，单位认证时不缩小
    """
    nvars: int
    transforms: Tuple[ElementaryTransform, ...]
    images: Tuple[PuiseuxSeries, ...]
    jacobian: JacobianForm
    fixed: FrozenSet[int] = frozenset()

    @classmethod
    def identity(cls, nvars: int, fixed: Iterable[int] = ()) -> "CoordChain":
        images = tuple(PuiseuxSeries.variable(nvars, j) for j in range(nvars))
        return cls(nvars, (), images, JacobianForm.one(nvars), frozenset(fixed))

    @classmethod
    def from_transform(cls, t: ElementaryTransform, fixed: Iterable[int] = ()) -> "CoordChain":
        return cls(t.nvars, (t,), t.images(), t.jacobian(), frozenset(fixed))

    def is_coordinate_system(self) -> bool:
        return self.jacobian.is_unit()

    @property
    def powers(self) -> Tuple[int, ...]:
        """像所表示的是 x_j^{k_j}（最外层为 PowerCoordinates 时 k 非平凡）"""
        if self.transforms:
            head = self.transforms[0]
            if isinstance(head, PowerCoordinates):
                return head.powers
            if isinstance(head, BaseLift):
                return head.chain.powers + (1,) * (head.total - head.chain.nvars)
        return (1,) * self.nvars

    def compose_poly(self, poly, order=None) -> PuiseuxSeries:
        """poly∘φ；幂坐标下先把 poly 改写成 w = x^k 的多项式"""
        try:
            deflated = poly.deflate(self.powers)
        except ValueError as e:
            raise IllegalComposition(f"多项式不是 x^{self.powers} 的多项式，无法在幂坐标上复合", e) from e
        return poly_compose(deflated, list(self.images), order)

    def with_fixed(self, fixed: Iterable[int]) -> "CoordChain":
        return CoordChain(self.nvars, self.transforms, self.images, self.jacobian, frozenset(fixed))

    def forward(self, points: np.ndarray) -> np.ndarray:
        points = np.array(np.atleast_2d(points), dtype=float)
        for t in reversed(self.transforms):
            points = t.forward(points)
        return points

    def inverse(self, points: np.ndarray) -> np.ndarray:
        points = np.array(np.atleast_2d(points), dtype=float)
        for t in self.transforms:
            points = t.inverse(points)
        return points

    def contains(self, points: np.ndarray) -> np.ndarray:
        """原坐标点是否落在链的像 φ((0,1)^n) 中"""
        y = self.inverse(points)
        with np.errstate(invalid="ignore"):
            return np.all(np.isfinite(y) & (y > 0) & (y < 1), axis=1)

    def jacobian_fnc(self, eps=None) -> FNCForm:
        return self.jacobian.to_fnc(eps=eps, fixed=self.fixed)

    def format_images(self) -> List[str]:
        return [f"x{j + 1} = {img.format()}" for j, img in enumerate(self.images)]

    def to_dict(self) -> Dict:
        return {
            "transforms": [t.to_dict() for t in self.transforms],
            "images": self.format_images(),
            "jacobian": self.jacobian.format(),
            "coordinate_system": self.is_coordinate_system(),
            "fixed": sorted(j + 1 for j in self.fixed),
        }


def compose_chains(outer: CoordChain, inner: CoordChain, order=None) -> CoordChain:
    """
    outer ∘ inner：像逐个复合，Jacobian 为 J_outer(inner) · J_inner
    分数指数遇到非 FNC 的像时说明缺少格对齐的幂映射
    """
    if outer.nvars != inner.nvars:
        raise VariableMismatch(outer.nvars, inner.nvars)
    if any(k != 1 for k in inner.powers):
        raise IllegalComposition(f"幂坐标 {inner.powers} 只能作为链的最外层")
    try:
        images = tuple(series_compose(img, inner.images, order) for img in outer.images)
        jacobian = outer.jacobian.compose(inner.images, order) * inner.jacobian
    except (NotFNC, NotAUnit) as e:
        logger.error(f"坐标链复合失败: {e}")
        raise IllegalComposition("级数接级数的复合需要先做幂映射把指数抬到公共格上", e) from e
    return CoordChain(outer.nvars, outer.transforms + inner.transforms, images, jacobian, inner.fixed)


def compose(chain: CoordChain, t: ElementaryTransform, order=None) -> CoordChain:
    """在链的最内层再接一个初等变换"""
    return compose_chains(chain, CoordChain.from_transform(t, chain.fixed), order)


def normalize_jacobian(chain: CoordChain, order=None) -> CoordChain:
    """
    追加幂映射 y_j = z_j^{1/(γ_j+1)} 使 Jacobian 成为单位
    Jacobian 的单项式部分在幂映射下变为 z^0
    """
    if chain.is_coordinate_system():
        return chain
    gamma = chain.jacobian.exponent
    if any(g <= -1 for g in gamma):
        raise IllegalComposition(f"Jacobian 指数 {format_exponent(gamma)} 无法用幂映射归一化")
    r = tuple(Fraction(1) / (g + 1) for g in gamma)
    normalized = compose(chain, power_transform(r), order)
    logger.debug(f"Jacobian 归一化幂映射: {format_exponent(r)}")
    return normalized
