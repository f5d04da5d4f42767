# -*- coding: utf-8 -*-
# verify 包初始化文件

from .exceptions import Inconclusive, OracleError
from .sampling import StratifiedSampler, StratifiedEstimate, shell_streams, centered_box
from .base_oracle import BaseOracle, SlopeFit, fit_loglog, dyadic_schedule
from .sublevel import SublevelOracle, sublevel_volume
from .scan import IntegrabilityScan, ScanResult, ScanVerdict, integrability_scan
from .oscillatory import OscillatoryOracle, QuadratureValue, bump, separable_parts, oscillatory_decay
from .lp_bound import LPBound, CubeCheck, minimal_exponents, lp_lower_bound, cube_corners_check

__all__ = [
    'Inconclusive', 'OracleError',
    'StratifiedSampler', 'StratifiedEstimate', 'shell_streams', 'centered_box',
    'BaseOracle', 'SlopeFit', 'fit_loglog', 'dyadic_schedule',
    'SublevelOracle', 'sublevel_volume',
    'IntegrabilityScan', 'ScanResult', 'ScanVerdict', 'integrability_scan',
    'OscillatoryOracle', 'QuadratureValue', 'bump', 'separable_parts', 'oscillatory_decay',
    'LPBound', 'CubeCheck', 'minimal_exponents', 'lp_lower_bound', 'cube_corners_check'
]
