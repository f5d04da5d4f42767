# exceptions.py
from typing import Any, Optional, Tuple


class ToolkitError(Exception):
    """工具包异常基类（exit_code 供命令行使用）"""
    exit_code = 1
    code = "toolkit_error"

    def __init__(self, message: str, details: Optional[dict] = None):
        super().__init__(message)
        self.details = details or {}


class VariableMismatch(ToolkitError):
    """变量个数不一致"""
    code = "variable_mismatch"

    def __init__(self, left: int, right: int):
        super().__init__(f"变量个数不一致: {left} 与 {right}")
        self.left = left
        self.right = right


class NotAUnit(ToolkitError):
    """常数项为零，不是单位"""
    code = "not_a_unit"


class UncertifiableUnit(ToolkitError):
    """缩小定义域后仍无法给出正下界"""
    code = "uncertifiable_unit"

    def __init__(self, message: str, eps: Any = None):
        super().__init__(message, {"eps": str(eps)})
        self.eps = eps


class NotFNC(ToolkitError):
    """级数不是分数正规交叉形式（最小指数不唯一）"""
    code = "not_fnc"


class BranchCutError(ToolkitError):
    """平方根常数项落在割线上"""
    code = "branch_cut"


class Incomparable(ToolkitError):
    """指数向量不可比较，需要进一步分解"""
    code = "incomparable"
    exit_code = 2

    def __init__(self, pair: Tuple[Any, Any]):
        left, right = pair
        super().__init__(
            f"指数向量不可比较: {_fmt(left)} 与 {_fmt(right)}",
            {"pair": [_fmt(left), _fmt(right)]}
        )
        self.pair = pair


class IrrationalJetError(ToolkitError):
    """首项系数不在 Q(i) 中，无法精确表示"""
    code = "irrational_jet"
    exit_code = 2


class TruncationExhausted(ToolkitError):
    """截断阶数已达上限仍无法分离"""
    code = "truncation_exhausted"
    exit_code = 2


def _fmt(vector: Any) -> str:
    try:
        return "(" + ", ".join(str(v) for v in vector) + ")"
    except TypeError:
        return str(vector)
