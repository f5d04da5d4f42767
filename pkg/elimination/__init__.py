# -*- coding: utf-8 -*-
# elimination 包初始化文件

from .exceptions import NeedsRotation, InexactDivision
from .gcd import poly_gcd, exact_divide, pseudo_remainder, content, primitive_part
from .resultant import PolyInLast, sylvester_matrix, bareiss_determinant, sylvester_resultant, discriminant
from .squarefree import SquarefreeDecomposition, squarefree_part, yun_decomposition
from .lambda_data import LambdaData, lambda_construct, make_primitive, random_rotation

__all__ = [
    'NeedsRotation', 'InexactDivision',
    'poly_gcd', 'exact_divide', 'pseudo_remainder', 'content', 'primitive_part',
    'PolyInLast', 'sylvester_matrix', 'bareiss_determinant', 'sylvester_resultant', 'discriminant',
    'SquarefreeDecomposition', 'squarefree_part', 'yun_decomposition',
    'LambdaData', 'lambda_construct', 'make_primitive', 'random_rotation'
]
