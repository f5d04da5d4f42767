# exceptions.py
from typing import Optional

from algebra.exceptions import ToolkitError


class Unresolved(ToolkitError):
    """截断阶内无法分离根或认证 FNC；如实报告，不做猜测"""
    code = "unresolved"
    exit_code = 2

    def __init__(self, message: str, diagnostics: Optional[dict] = None):
        super().__init__(message, diagnostics)
        self.diagnostics = self.details


class ResolutionError(ToolkitError):
    """分解流程中的意外失败"""
    code = "resolution_error"

    def __init__(self, message: str, original_error: Optional[Exception] = None):
        super().__init__(message, {"original_error": str(original_error) if original_error else None})
        self.original_error = original_error
