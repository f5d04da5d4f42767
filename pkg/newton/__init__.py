# -*- coding: utf-8 -*-
# newton 包初始化文件

from .simplex import LPResult, LPStatus, ExactSimplex, linprog_exact
from .polyhedron import (
    NewtonPolyhedron, np_from_terms, newton_distance_exponent, projected_exponent,
    generalized_exponent, hull_contains, extended_inverse, format_extended
)
from .mep import (
    MonotoneEdgePath, RootGroup, FactoredRootData, Delta0Table, Delta0Term,
    mep_from_factored, np_from_mep, mep_slice, is_mep_defined, delta0_formula
)
from .adaptedness import AdaptednessReport, EdgeAdaptedness, adaptedness_check, kappa

__all__ = [
    'LPResult', 'LPStatus', 'ExactSimplex', 'linprog_exact',
    'NewtonPolyhedron', 'np_from_terms', 'newton_distance_exponent', 'projected_exponent',
    'generalized_exponent', 'hull_contains', 'extended_inverse', 'format_extended',
    'MonotoneEdgePath', 'RootGroup', 'FactoredRootData', 'Delta0Table', 'Delta0Term',
    'mep_from_factored', 'np_from_mep', 'mep_slice', 'is_mep_defined', 'delta0_formula',
    'AdaptednessReport', 'EdgeAdaptedness', 'adaptedness_check', 'kappa'
]
