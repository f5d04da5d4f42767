# -*- coding: utf-8 -*-
# resolve 包初始化文件

from .exceptions import Unresolved, ResolutionError
from .lifting import SurdSeries, LiftedRoot, RegionRoots, lift_roots
from .refine import describe_failures, failing_values, real_part_values, refine_real_parts
from .report import (
    CoordClassEntry, RegionReport, OrthantReport, ResolutionReport, AdaptedVerdict,
    adapted_report, rho0_note, best_entry, SUFFICIENT, INCONCLUSIVE
)
from .bivariate import resolve_bivariate
from .trivariate import coordinate_class, recompute_delta0, resolve_trivariate

__all__ = [
    'Unresolved', 'ResolutionError',
    'SurdSeries', 'LiftedRoot', 'RegionRoots', 'lift_roots',
    'real_part_values', 'failing_values', 'describe_failures', 'refine_real_parts',
    'CoordClassEntry', 'RegionReport', 'OrthantReport', 'ResolutionReport', 'AdaptedVerdict',
    'adapted_report', 'rho0_note', 'best_entry', 'SUFFICIENT', 'INCONCLUSIVE',
    'resolve_bivariate',
    'coordinate_class', 'recompute_delta0', 'resolve_trivariate'
]
