# -*- coding: utf-8 -*-
# puiseux 包初始化文件

from .newton_puiseux import (
    Reality, RootPlace, InexactTail, PuiseuxRoot, CharacteristicRoot,
    characteristic_roots, newton_polygon_edges, puiseux_roots, newton_puiseux, root_multiset
)
from .sectors import SectorRegion, QUADRANTS, monomialize_bivariate, jet_curves
from .mu0 import Mu0Candidate, Mu0Result, mu0_bivariate

__all__ = [
    'Reality', 'RootPlace', 'InexactTail', 'PuiseuxRoot', 'CharacteristicRoot',
    'characteristic_roots', 'newton_polygon_edges', 'puiseux_roots', 'newton_puiseux', 'root_multiset',
    'SectorRegion', 'QUADRANTS', 'monomialize_bivariate', 'jet_curves',
    'Mu0Candidate', 'Mu0Result', 'mu0_bivariate'
]
