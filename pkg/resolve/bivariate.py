# bivariate.py
import logging
from fractions import Fraction
from typing import Optional

from algebra.exceptions import IrrationalJetError
from algebra.polynomial import MultiPoly
from puiseux.mu0 import Mu0Candidate, mu0_bivariate
from towers.transforms import CoordChain
from .exceptions import Unresolved
from .lifting import SurdSeries, lift_roots
from .report import CoordClassEntry, ResolutionReport

logger = logging.getLogger(__name__)


def _entry(f: MultiPoly, candidate: Mu0Candidate, order: Fraction) -> CoordClassEntry:
    shift = SurdSeries(candidate.shift) if candidate.shift is not None else None
    factored = None
    if candidate.axis == "y":
        # y 方向的平移可以直接给出根的因式分解数据
        flipped = f.flip_signs((candidate.sign, 1))
        if flipped.degree(1) > 0:
            try:
                factored = lift_roots(flipped, CoordChain.identity(1), order).factored(shift)
            except (Unresolved, IrrationalJetError) as e:
                logger.warning(f"{candidate.describe()}: 无法给出因式分解数据: {e}")
    return CoordClassEntry(
        label=candidate.describe(),
        orthant=(candidate.sign,),
        chain=None,
        shift=shift,
        provenance="identity" if candidate.shift is None else f"Re(root) along {candidate.axis}",
        delta0=candidate.delta0,
        factored=factored,
    )


def resolve_bivariate(f: MultiPoly, order: Optional[Fraction] = None) -> ResolutionReport:
    """
    二元情形：μ0 由原坐标与按根实部平移的坐标给出（两种变量次序）
    y 方向的坐标附带因式分解数据，供适配性检验使用
    """
    result = mu0_bivariate(f, order)
    entries = tuple(_entry(f, c, result.order) for c in result.candidates)
    certificate = entries[result.candidates.index(result.certificate)]
    diagnostics = {"truncation_order": str(result.order), "candidates": len(entries)}
    logger.info(f"二元分解完成: {len(entries)} 个候选坐标")
    return ResolutionReport(f.format(), 2, entries, result.mu0, certificate, (), diagnostics)
