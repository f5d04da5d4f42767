# exceptions.py
from typing import Optional, Sequence

from algebra.exceptions import ToolkitError


class ExprSyntaxError(ToolkitError):
    """表达式语法错误（消息带位置标注）"""
    code = "syntax_error"

    def __init__(self, message: str, position: int, text: Optional[str] = None):
        annotated = f"{message}（位置 {position}）"
        if text is not None:
            annotated += f"\n  {text}\n  {' ' * position}^"
        super().__init__(annotated, {"position": position})
        self.position = position


class UnknownVariable(ToolkitError):
    """表达式中出现未声明的变量"""
    code = "unknown_variable"

    def __init__(self, name: str, declared: Sequence[str], position: Optional[int] = None):
        super().__init__(
            f"未声明的变量 {name}，可用变量: {', '.join(declared)}",
            {"name": name, "declared": list(declared), "position": position},
        )
        self.name = name
