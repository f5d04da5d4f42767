# exceptions.py
from typing import Optional

from algebra.exceptions import ToolkitError


class Inconclusive(ToolkitError):
    """数值证据不足以下结论（尺度不够、比值接近 1）"""
    code = "inconclusive"
    exit_code = 2

    def __init__(self, message: str, details: Optional[dict] = None):
        super().__init__(message, details)


class OracleError(ToolkitError):
    """数值预言机内部失败"""
    code = "oracle_error"

    def __init__(self, message: str, original_error: Optional[Exception] = None):
        super().__init__(message, {"original_error": str(original_error) if original_error else None})
        self.original_error = original_error
