# exceptions.py
from algebra.exceptions import ToolkitError


class NeedsRotation(ToolkitError):
    """F 在 x_{n+1} 轴上恒为零，需要先做线性坐标变换"""
    code = "needs_rotation"

    def __init__(self, message: str = ""):
        super().__init__(
            message or "F(0, …, 0, x_{n+1}) 恒为零。请使用 --rotate SEED 做一次可逆线性变换后重试"
        )


class InexactDivision(ToolkitError):
    """理论上应整除的多项式除法出现余项（实现错误）"""
    code = "inexact_division"

    def __init__(self, dividend, divisor):
        super().__init__(
            f"多项式除法不整除: ({dividend.format()}) / ({divisor.format()})",
            {"dividend": dividend.format(), "divisor": divisor.format()}
        )
