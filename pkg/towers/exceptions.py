# exceptions.py
from typing import Optional

from algebra.exceptions import ToolkitError


class IllegalComposition(ToolkitError):
    """级数接级数的复合缺少把指数抬到公共格上的幂映射"""
    code = "illegal_composition"

    def __init__(self, message: str, original_error: Optional[Exception] = None):
        super().__init__(message, {"original_error": str(original_error) if original_error else None})
        self.original_error = original_error


class NeedsRefinement(ToolkitError):
    """根或实部差不是 FNC，需要先细分底区域"""
    code = "needs_refinement"
    exit_code = 2

    def __init__(self, message: str, details: Optional[dict] = None):
        super().__init__(message, details)
