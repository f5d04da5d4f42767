# -*- coding: utf-8 -*-
# algebra 包初始化文件

from .exceptions import (
    ToolkitError, VariableMismatch, NotAUnit, UncertifiableUnit, NotFNC,
    BranchCutError, Incomparable, IrrationalJetError, TruncationExhausted
)
from .scalars import GaussRational, as_gauss, format_gauss, ZERO, ONE, I_UNIT
from .exponents import Exponent, as_exponent, order_exponents, minimal_elements, leq, lt
from .polynomial import MultiPoly, poly_arith, variables
from .series import PuiseuxSeries, series_arith
from .units import (
    UnitSeries, FNCForm, unit_certify, fnc_certify, series_inverse, series_sqrt,
    series_power, series_compose, poly_compose, power_series, invert_series, fnc_power
)

__all__ = [
    'ToolkitError', 'VariableMismatch', 'NotAUnit', 'UncertifiableUnit', 'NotFNC',
    'BranchCutError', 'Incomparable', 'IrrationalJetError', 'TruncationExhausted',
    'GaussRational', 'as_gauss', 'format_gauss', 'ZERO', 'ONE', 'I_UNIT',
    'Exponent', 'as_exponent', 'order_exponents', 'minimal_elements', 'leq', 'lt',
    'MultiPoly', 'poly_arith', 'variables',
    'PuiseuxSeries', 'series_arith',
    'UnitSeries', 'FNCForm', 'unit_certify', 'fnc_certify', 'series_inverse', 'series_sqrt',
    'series_power', 'series_compose', 'poly_compose', 'power_series', 'invert_series', 'fnc_power'
]
