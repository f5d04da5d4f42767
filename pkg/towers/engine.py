# engine.py
from dataclasses import dataclass, field
from fractions import Fraction
import logging
from typing import TYPE_CHECKING, Dict, List, Optional, Sequence, Tuple

from algebra.exceptions import Incomparable, IrrationalJetError, NotFNC, TruncationExhausted
from algebra.exponents import Exponent, format_exponent, leq, lt, order_exponents, sub, zero_exponent
from algebra.polynomial import MultiPoly
from algebra.scalars import modulus_bounds, rational_power_ceiling
from algebra.series import PuiseuxSeries
from algebra.units import fnc_certify
from config import BAND_CONFIG
from .exceptions import NeedsRefinement
from .horns import Horn, TowerRegion, adjacent_horn, preferred_coords, split_distant_horn
from .transforms import CoordChain, ElementaryTransform

if TYPE_CHECKING:
    from puiseux.newton_puiseux import PuiseuxRoot


@dataclass(frozen=True)
class BandNode:
    """节点区域 {0 < σ(x − centre) < width · w^scale}"""
    centre: PuiseuxSeries
    sign: int
    scale: Exponent
    width: Fraction
    depth: int = 0
    path: str = ""


@dataclass
class ScaleBand:
    """同一尺度 e 上的根：t = σ(x − centre)/w^e 落在 [low, high]"""
    exponent: Exponent
    low: Fraction
    high: Fraction
    taus: List[Fraction] = field(default_factory=list)
    widths: List[Tuple[Fraction, Fraction]] = field(default_factory=list)
    representatives: List["PuiseuxRoot"] = field(default_factory=list)


def _lower_rational(value: float) -> Fraction:
    """不超过 value 的 2 的负幂"""
    bound = Fraction(1)
    while bound > value:
        bound /= 2
    return bound


def distant_ratio(a_min: Fraction, mu: Exponent) -> Fraction:
    """
    远离带常数 a >= max(a_min, 1)，且 a^{1/μ_k} 为有理数（k 为 μ 的第一个非零分量）
    μ_k = p/q 时取 a = t^p
    """
    k = next(j for j, m in enumerate(mu) if m != 0)
    p = mu[k].numerator
    t = rational_power_ceiling(max(Fraction(a_min), Fraction(1)), p)
    return t ** p


class BandEngine:
    """
    一维纤维上的分带引擎
    给定底坐标（底链 ψ 的坐标 w）上的根级数，把 {0 < σ x < C0} 分成相邻角与远离角，
    每块配首选坐标并认证目标多项式在其上的 FNC 形式
    fibre 非空时根与分带都在变换后的纤维坐标中
    """

    def __init__(
        self,
        target: MultiPoly,
        roots: Sequence["PuiseuxRoot"],
        base_chain: Optional[CoordChain] = None,
        signs: Sequence[int] = (1,),
        order=None,
        label: str = "R",
        names: Optional[Sequence[str]] = None,
        fibre: Sequence[ElementaryTransform] = ()
    ):
        self.logger = logging.getLogger(__name__)
        self.target = target
        self.base_nvars = target.nvars - 1
        self.roots = [r for r in roots if r.is_near() and r.series is not None]
        self.far_roots = [r for r in roots if r.place == "far"]
        self.base_chain = base_chain
        self.signs = tuple(signs)
        self.order = order
        self.label = label
        self.names = tuple(names) if names else ()
        self.fibre = tuple(fibre)
        self.lower_factor = BAND_CONFIG["lower_factor"]
        self.upper_factor = BAND_CONFIG["upper_factor"]
        self.child_fraction = BAND_CONFIG["child_fraction"]
        self.max_depth = BAND_CONFIG["max_depth"]
        self.base_radius = 1.0

    # ---- 顶层 ----
    def top_width(self) -> Fraction:
        """C0：小于远根首项模长的一半"""
        if not self.far_roots:
            return Fraction(1)
        smallest = min(r.leading_modulus() for r in self.far_roots)
        return _lower_rational(smallest / 2)

    def run(self) -> List[TowerRegion]:
        width = self.top_width()
        zero = PuiseuxSeries(self.base_nvars, {})
        regions: List[TowerRegion] = []
        for sign in self.signs:
            node = BandNode(zero, sign, zero_exponent(self.base_nvars), width,
                            path="+" if sign > 0 else "-")
            regions.extend(self._process(node))
        self.logger.info(f"{self.label}: 分带完成，共 {len(regions)} 块区域")
        return regions

    # ---- 节点 ----
    def _classify(self, node: BandNode) -> Tuple[int, Dict[Exponent, list]]:
        centre_count = 0
        near: Dict[Exponent, list] = {}
        for root in self.roots:
            try:
                diff = root.difference(node.centre)
            except (NotFNC, Incomparable) as e:
                raise NeedsRefinement(
                    f"根与中心之差不是 FNC，需要细分底区域: {e}",
                    {"centre": node.centre.format(), "root": root.series.format()}
                ) from e
            if diff is None:
                centre_count += root.multiplicity
                continue
            gamma, coeff, exact = diff
            if lt(node.scale, gamma):
                near.setdefault(gamma, []).append((coeff, exact, root))
            elif not leq(gamma, node.scale):
                raise NeedsRefinement(
                    f"根的尺度 {format_exponent(gamma)} 与节点尺度 {format_exponent(node.scale)} 不可比较",
                    {"centre": node.centre.format()}
                )
        return centre_count, near

    def _scale_band(self, node: BandNode, exponent: Exponent, entries: list) -> ScaleBand:
        positives: Dict[Fraction, "PuiseuxRoot"] = {}
        moduli: List[Fraction] = []
        for coeff, exact, root in entries:
            if exact:
                signed = coeff * node.sign
                if signed.is_real() and signed.re > 0:
                    positives.setdefault(signed.re, root)
                else:
                    moduli.append(modulus_bounds(signed)[0])
                continue
            z = complex(coeff) * node.sign
            if abs(z.imag) <= 1e-9 * abs(z) and z.real > 0:
                raise IrrationalJetError(
                    f"尺度 {format_exponent(exponent)} 上的实根系数 {z.real:.6g} 不在 Q 中，无法精确放置分带边界")
            moduli.append(_lower_rational(abs(z) * 0.99))
        if positives:
            taus = sorted(positives)
            low = self.lower_factor * taus[0]
            high = self.upper_factor * taus[-1]
        else:
            taus = []
            low = high = min([Fraction(1)] + [m for m in moduli if m > 0])
        band = ScaleBand(exponent, low, high, taus=taus)
        band.representatives = [positives[tau] for tau in taus]
        return band

    def _child_widths(self, band: ScaleBand) -> None:
        """相邻根之间以中点为界，两端以 low/high 为界；子节点两侧宽度分开记"""
        edges = [band.low] + [(a + b) / 2 for a, b in zip(band.taus, band.taus[1:])] + [band.high]
        band.widths = [(self.child_fraction * (tau - edges[i]), self.child_fraction * (edges[i + 1] - tau))
                       for i, tau in enumerate(band.taus)]

    def _process(self, node: BandNode) -> List[TowerRegion]:
        if node.depth > self.max_depth:
            raise TruncationExhausted(f"分带递归超过 {self.max_depth} 层仍未分离全部根")
        centre_count, near = self._classify(node)
        exponents = list(near)
        try:
            ordering = order_exponents(exponents)
        except Incomparable as e:
            raise NeedsRefinement(f"节点 {node.path} 上根的尺度不是全序: {e}", e.details) from e
        bands = [self._scale_band(node, exponents[i], near[exponents[i]]) for i in ordering]
        self.logger.debug(
            f"节点 {node.path}: 中心根 {centre_count} 个，尺度 "
            + ", ".join(format_exponent(b.exponent) for b in bands))

        horns: List[Tuple[str, Horn]] = []
        m = self.base_nvars
        # 远离带：上一层边界与本层之间，常数向外调整使 a^{1/μ} 为有理数
        upper_const, upper_exp = node.width, node.scale
        for k, band in enumerate(bands):
            mu = sub(band.exponent, upper_exp)
            a = distant_ratio(band.high / upper_const, mu)
            if k == 0:
                band.high = a * upper_const
            else:
                bands[k - 1].low = band.high / a
                upper_const = bands[k - 1].low
            lower = PuiseuxSeries.monomial(band.exponent, band.high)
            upper = PuiseuxSeries.monomial(upper_exp, upper_const)
            for h in split_distant_horn(node.centre, node.sign, lower, upper, first_ratio=a):
                # 远离角要求 a·w_k^μ < 1
                self.base_radius = min(self.base_radius, float(h.ratio) ** (-1 / float(h.power)))
                horns.append(("distant", h))
            upper_const, upper_exp = band.low, band.exponent
        for band in bands:
            self._child_widths(band)

        # 各尺度上的 t 区间去掉子节点后的相邻角
        for band in bands:
            cuts = [band.low]
            for tau, (left, right) in zip(band.taus, band.widths):
                cuts.extend([tau - left, tau + right])
            cuts.append(band.high)
            for ta, tb in zip(cuts[0::2], cuts[1::2]):
                if tb <= ta:
                    continue
                offset = PuiseuxSeries.monomial(band.exponent, ta * node.sign)
                span = PuiseuxSeries.monomial(band.exponent, tb - ta)
                horns.append(("band", adjacent_horn(node.centre + offset, node.sign, span)))

        # 最底层的下扇形
        if bands:
            bottom = PuiseuxSeries.monomial(bands[-1].exponent, bands[-1].low)
        else:
            bottom = PuiseuxSeries.monomial(node.scale, node.width)
        horns.append(("lower", adjacent_horn(node.centre, node.sign, bottom)))

        regions = [self._emit(horn, kind, f"{node.path}.{kind}{i}")
                   for i, (kind, horn) in enumerate(horns)]

        for band in bands:
            for i, (tau, widths, root) in enumerate(zip(band.taus, band.widths, band.representatives)):
                centre = root.real_part()
                if centre.nvars != m:
                    raise ValueError(f"根级数维数 {centre.nvars} 与底维数 {m} 不一致")
                # t 方向左侧的子节点在 x 方向取 −σ
                for side, width in zip((-1, 1), widths):
                    sign = side * node.sign
                    child = BandNode(centre, sign, band.exponent, width, node.depth + 1,
                                     f"{node.path}.{i}{'+' if sign > 0 else '-'}")
                    regions.extend(self._process(child))
        return regions

    # ---- 区域 ----
    def _emit(self, horn: Horn, kind: str, path: str) -> TowerRegion:
        chain = preferred_coords(horn, self.base_chain, self.order, self.fibre)
        composed = chain.compose_poly(self.target, self.order)
        if composed.is_zero():
            raise TruncationExhausted(f"区域 {path} 上目标多项式的复合在截断阶内为零")
        try:
            fnc = fnc_certify(composed, fixed=chain.fixed)
        except NotFNC as e:
            if not composed.is_exact():
                raise TruncationExhausted(f"区域 {path} 上截断后的复合不是 FNC: {e}") from e
            raise NeedsRefinement(f"区域 {path} 上目标多项式不是 FNC: {e}",
                                  {"series": composed.format()}) from e
        return TowerRegion(label=f"{self.label}{path}", kind=kind, horn=horn, chain=chain, fnc=fnc,
                           names=self.names)
