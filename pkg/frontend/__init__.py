# -*- coding: utf-8 -*-
# frontend 包初始化文件

from .exceptions import ExprSyntaxError, UnknownVariable
from .parser import Expr, NodeKind, parse_expr, parse_polynomial, parse_variables, to_poly, unparse
from .schemas import (
    RunConfig, RationalModel, NewtonReportModel, ResolutionReportModel, SlopeFitModel,
    LPBoundModel, ErrorReportModel
)
from .writers import jsonable, dumps_report, write_json, write_csv
from .plots import plot_projections, lower_boundary
from .cli import build_parser, main

__all__ = [
    'ExprSyntaxError', 'UnknownVariable',
    'Expr', 'NodeKind', 'parse_expr', 'parse_polynomial', 'parse_variables', 'to_poly', 'unparse',
    'RunConfig', 'RationalModel', 'NewtonReportModel', 'ResolutionReportModel', 'SlopeFitModel',
    'LPBoundModel', 'ErrorReportModel',
    'jsonable', 'dumps_report', 'write_json', 'write_csv',
    'plot_projections', 'lower_boundary',
    'build_parser', 'main'
]
