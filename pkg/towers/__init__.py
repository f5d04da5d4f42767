# -*- coding: utf-8 -*-
# towers 包初始化文件

from .exceptions import IllegalComposition, NeedsRefinement
from .transforms import (
    JacobianForm, ElementaryTransform, MonomialMap, UnitScaling, Shift, BaseLift, CoordChain,
    PowerCoordinates, power_transform, blow_down, compose, compose_chains, normalize_jacobian
)
from .horns import HornKind, Horn, TowerRegion, adjacent_horn, split_distant_horn, preferred_coords
from .engine import BandEngine, BandNode, distant_ratio
from .block2 import RootClasses, ShiftedBand, block2_decompose, classify_roots, shifted_bands
from .checks import (
    CoverageResult, coverage, fiber_points, finite_difference_jacobian, jacobian_relative_error,
    fnc_ratio, fnc_ratio_within, fnc_transport, interior_points
)

__all__ = [
    'IllegalComposition', 'NeedsRefinement',
    'JacobianForm', 'ElementaryTransform', 'MonomialMap', 'UnitScaling', 'Shift', 'BaseLift', 'CoordChain',
    'PowerCoordinates', 'power_transform', 'blow_down', 'compose', 'compose_chains', 'normalize_jacobian',
    'HornKind', 'Horn', 'TowerRegion', 'adjacent_horn', 'split_distant_horn', 'preferred_coords',
    'BandEngine', 'BandNode', 'distant_ratio',
    'RootClasses', 'ShiftedBand', 'block2_decompose', 'classify_roots', 'shifted_bands',
    'CoverageResult', 'coverage', 'fiber_points', 'finite_difference_jacobian', 'jacobian_relative_error',
    'fnc_ratio', 'fnc_ratio_within', 'fnc_transport', 'interior_points'
]
