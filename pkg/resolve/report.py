# report.py
from dataclasses import dataclass, field
import logging
import math
from typing import Dict, List, Optional, Tuple

from algebra.polynomial import MultiPoly
from newton.adaptedness import AdaptednessReport, adaptedness_check
from newton.mep import Delta0Table, FactoredRootData, mep_from_factored
from newton.polyhedron import Extended, format_extended
from towers.horns import TowerRegion
from towers.transforms import CoordChain
from .lifting import RegionRoots, SurdSeries

logger = logging.getLogger(__name__)

SUFFICIENT = "sufficient condition holds"
INCONCLUSIVE = "condition fails (inconclusive)"


def _signs_tag(signs: Tuple[int, ...]) -> str:
    return "".join("+" if s > 0 else "-" for s in signs)


@dataclass(frozen=True)
class CoordClassEntry:
    """
    坐标 Φ：(x, x_{n+1}) = (φ(y), y_{n+1} + r(y))，φ 为区域的坐标链
    shift 为 None 表示 r ≡ 0；provenance 说明 r 来自哪个根的实部
    """
    label: str
    orthant: Tuple[int, ...]
    chain: Optional[CoordChain]
    shift: Optional[SurdSeries]
    provenance: str
    delta0: Extended
    factored: Optional[FactoredRootData] = None
    table: Optional[Delta0Table] = None
    recomputed: Optional[Extended] = None

    def describe(self) -> str:
        shift = "0" if self.shift is None else self.shift.format()
        return f"{self.label} [{_signs_tag(self.orthant)}], r = {shift}"

    def to_dict(self) -> Dict:
        data = {
            "label": self.label,
            "orthant": list(self.orthant),
            "shift": self.shift.format() if self.shift is not None else None,
            "shift_exact": self.shift.is_exact() if self.shift is not None else True,
            "provenance": self.provenance,
            "delta0": format_extended(self.delta0),
            "recomputed_delta0": format_extended(self.recomputed) if self.recomputed is not None else None,
        }
        if self.chain is not None:
            data["chain"] = self.chain.to_dict()
        if self.factored is not None:
            data["mep"] = mep_from_factored(self.factored).to_dict()
            data["beta"] = [str(b) for b in self.factored.beta]
            data["beta_last"] = self.factored.beta_last
        if self.table is not None:
            data["delta0_table"] = self.table.to_dict()
        return data


@dataclass(frozen=True)
class RegionReport:
    lifted: RegionRoots
    entries: Tuple[CoordClassEntry, ...]
    inequalities: Tuple[str, ...] = ()
    towers: Tuple[TowerRegion, ...] = ()
    notes: Tuple[str, ...] = ()

    @property
    def label(self) -> str:
        return self.lifted.label

    @property
    def mu0(self) -> Extended:
        return min((e.delta0 for e in self.entries), default=math.inf)

    def to_dict(self) -> Dict:
        return {
            "label": self.label,
            "inequalities": list(self.inequalities),
            "roots": self.lifted.to_dict(),
            "C0": [e.to_dict() for e in self.entries],
            "towers": [t.to_dict() for t in self.towers],
            "notes": list(self.notes),
        }


@dataclass(frozen=True)
class OrthantReport:
    signs: Tuple[int, ...]
    regions: Tuple[RegionReport, ...]

    @property
    def mu0(self) -> Extended:
        return min((r.mu0 for r in self.regions), default=math.inf)

    def to_dict(self) -> Dict:
        return {
            "orthant": list(self.signs),
            "mu0": format_extended(self.mu0),
            "regions": [r.to_dict() for r in self.regions],
        }


@dataclass(frozen=True)
class ResolutionReport:
    """μ0 = 所有列出坐标上 δ0 的最小值；certificate 为取到最小值的第一个坐标"""
    input: str
    nvars: int
    entries: Tuple[CoordClassEntry, ...]
    mu0: Extended
    certificate: CoordClassEntry
    orthants: Tuple[OrthantReport, ...] = ()
    diagnostics: Dict = field(default_factory=dict)

    def rho0(self) -> Dict:
        return rho0_note(self.mu0)

    def to_dict(self) -> Dict:
        return {
            "input": self.input,
            "nvars": self.nvars,
            "mu0": format_extended(self.mu0),
            "certificate": self.certificate.to_dict(),
            "orthants": [o.to_dict() for o in self.orthants],
            "entries": [e.to_dict() for e in self.entries],
            "oscillation": self.rho0(),
            "diagnostics": self.diagnostics,
        }


def best_entry(entries: List[CoordClassEntry]) -> CoordClassEntry:
    """最小 δ0；并列时保留先出现者（r ≡ 0 排在前面）"""
    if not entries:
        raise ValueError("坐标类为空")
    return min(entries, key=lambda e: e.delta0)


def rho0_note(delta0: Extended) -> Dict:
    """振荡指数 ρ0 = δ0，δ0 为奇整数时该结论不成立，只做标记"""
    if delta0 == math.inf:
        return {"rho0": "inf", "caveat": None}
    odd = delta0.denominator == 1 and delta0.numerator % 2 == 1
    return {
        "rho0": None if odd else format_extended(delta0),
        "caveat": "δ0 为奇整数，ρ0 = δ0 不一定成立" if odd else None,
    }


@dataclass(frozen=True)
class AdaptedVerdict:
    entry: str
    verdict: str
    check: AdaptednessReport

    def to_dict(self) -> Dict:
        data = self.check.to_dict()
        data.update({"entry": self.entry, "verdict": self.verdict})
        return data


def adapted_report(f: MultiPoly, entry: CoordClassEntry) -> AdaptedVerdict:
    """
    对坐标 Φ 检验充分条件 κ_ℓ <= min_j δ_ℓ(j)^{-1}
    条件只是充分的，不成立时结论为不确定
    """
    if entry.factored is None:
        raise ValueError(f"坐标 {entry.label} 没有因式分解数据，无法检验适配性")
    check = adaptedness_check(entry.factored)
    verdict = SUFFICIENT if check.adapted else INCONCLUSIVE
    failing = [e.edge for e in check.edges if not e.satisfied]
    if failing:
        logger.info(f"{f.format()} 在 {entry.describe()} 上: 边 {failing} 不满足 κ 条件")
    return AdaptedVerdict(entry.describe(), verdict, check)
