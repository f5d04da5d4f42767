# parser.py
"""
多项式表达式的 Pratt 解析器
优先级：^（右结合） > 一元负号 > * / > + −
字面量为精确有理数（3/4、0.25），i 为虚数单位；指数必须是非负整数，除数必须是非零常数
"""
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
import logging
from typing import Dict, List, Optional, Sequence, Tuple

from algebra.polynomial import MultiPoly
from algebra.scalars import GaussRational, I_UNIT
from .exceptions import ExprSyntaxError, UnknownVariable

logger = logging.getLogger(__name__)

OPERATORS = "+-*/^()"
# (左结合力, 右结合力)
INFIX_POWER = {"+": (10, 11), "-": (10, 11), "*": (20, 21), "/": (20, 21), "^": (41, 40)}
PREFIX_POWER = 30
ALIASES = ("x", "y", "z")


class NodeKind(str, Enum):
    VAR = "var"
    NUM = "num"
    IMAG = "imag"
    ADD = "add"
    SUB = "sub"
    MUL = "mul"
    DIV = "div"
    NEG = "neg"
    POW = "pow"


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    position: int


@dataclass(frozen=True)
class Expr:
    kind: NodeKind
    args: Tuple["Expr", ...] = ()
    value: Optional[Fraction] = None
    name: Optional[str] = None
    index: Optional[int] = None
    position: int = 0


def tokenize(text: str) -> List[Token]:
    tokens: List[Token] = []
    pos = 0
    while pos < len(text):
        c = text[pos]
        if c.isspace():
            pos += 1
            continue
        start = pos
        if c.isdigit() or (c == "." and pos + 1 < len(text) and text[pos + 1].isdigit()):
            while pos < len(text) and (text[pos].isdigit() or text[pos] == "."):
                pos += 1
            literal = text[start:pos]
            if literal.count(".") > 1:
                raise ExprSyntaxError(f"无法识别的数字 {literal}", start, text)
            tokens.append(Token("num", literal, start))
        elif c.isalpha():
            while pos < len(text) and (text[pos].isalnum() or text[pos] == "_"):
                pos += 1
            tokens.append(Token("name", text[start:pos], start))
        elif c in OPERATORS:
            pos += 1
            tokens.append(Token("op", c, start))
        else:
            raise ExprSyntaxError(f"无法识别的字符 {c!r}", start, text)
    tokens.append(Token("end", "", len(text)))
    return tokens


def variable_lookup(variables: Sequence[str]) -> Dict[str, int]:
    """声明的变量名加别名：x,y,z ↔ 前三个变量，xk ↔ 第 k 个变量（与声明名不冲突时）"""
    lookup = {name: j for j, name in enumerate(variables)}
    for j, name in enumerate(variables):
        if j < len(ALIASES):
            lookup.setdefault(ALIASES[j], j)
        lookup.setdefault(f"x{j + 1}", j)
    return lookup


class Parser:
    def __init__(self, text: str, variables: Sequence[str]):
        self.text = text
        self.variables = list(variables)
        if len(set(self.variables)) != len(self.variables):
            raise ValueError(f"变量名重复: {self.variables}")
        self.lookup = variable_lookup(self.variables)
        self.tokens = tokenize(text)
        self.pos = 0

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        token = self.tokens[self.pos]
        self.pos += 1
        return token

    def error(self, message: str, token: Token) -> ExprSyntaxError:
        return ExprSyntaxError(message, token.position, self.text)

    def parse(self) -> Expr:
        if self.peek().kind == "end":
            raise self.error("表达式为空", self.peek())
        expr = self.expression(0)
        token = self.peek()
        if token.kind != "end":
            raise self.error(f"多余的符号 {token.text!r}", token)
        return expr

    def expression(self, min_power: int) -> Expr:
        lhs = self.prefix()
        while True:
            token = self.peek()
            if token.kind != "op" or token.text not in INFIX_POWER:
                break
            left, right = INFIX_POWER[token.text]
            if left < min_power:
                break
            self.advance()
            rhs = self.expression(right)
            kind = {"+": NodeKind.ADD, "-": NodeKind.SUB, "*": NodeKind.MUL,
                    "/": NodeKind.DIV, "^": NodeKind.POW}[token.text]
            lhs = Expr(kind, (lhs, rhs), position=token.position)
        return lhs

    def prefix(self) -> Expr:
        token = self.advance()
        if token.kind == "num":
            return Expr(NodeKind.NUM, value=Fraction(token.text), position=token.position)
        if token.kind == "name":
            if token.text in self.lookup:
                index = self.lookup[token.text]
                return Expr(NodeKind.VAR, name=self.variables[index], index=index, position=token.position)
            if token.text == "i":
                return Expr(NodeKind.IMAG, position=token.position)
            raise UnknownVariable(token.text, self.variables, token.position)
        if token.kind == "op" and token.text == "(":
            inner = self.expression(0)
            closing = self.advance()
            if closing.kind != "op" or closing.text != ")":
                raise self.error("缺少右括号", closing)
            return inner
        if token.kind == "op" and token.text in "+-":
            operand = self.expression(PREFIX_POWER)
            if token.text == "+":
                return operand
            return Expr(NodeKind.NEG, (operand,), position=token.position)
        if token.kind == "end":
            raise self.error("表达式意外结束", token)
        raise self.error(f"此处不应出现 {token.text!r}", token)


def parse_expr(text: str, variables: Sequence[str]) -> Expr:
    return Parser(text, variables).parse()


def _exponent(node: Expr, nvars: int, text: Optional[str]) -> int:
    value = to_poly(node, nvars, text)
    if not value.is_constant():
        raise ExprSyntaxError("指数必须是常数", node.position, text)
    c = value.constant_term()
    if not c.is_real() or c.re.denominator != 1:
        raise ExprSyntaxError(f"指数必须是整数，收到 {c}", node.position, text)
    if c.re < 0:
        raise ExprSyntaxError(f"指数不能为负，收到 {c}", node.position, text)
    return int(c.re)


def to_poly(node: Expr, nvars: int, text: Optional[str] = None) -> MultiPoly:
    """语法树求值为 MultiPoly"""
    kind = node.kind
    if kind == NodeKind.NUM:
        return MultiPoly.constant(nvars, node.value)
    if kind == NodeKind.IMAG:
        return MultiPoly.constant(nvars, I_UNIT)
    if kind == NodeKind.VAR:
        return MultiPoly.variable(nvars, node.index)
    if kind == NodeKind.NEG:
        return -to_poly(node.args[0], nvars, text)
    if kind == NodeKind.POW:
        return to_poly(node.args[0], nvars, text) ** _exponent(node.args[1], nvars, text)
    lhs = to_poly(node.args[0], nvars, text)
    rhs = to_poly(node.args[1], nvars, text)
    if kind == NodeKind.ADD:
        return lhs + rhs
    if kind == NodeKind.SUB:
        return lhs - rhs
    if kind == NodeKind.MUL:
        return lhs * rhs
    # 除法
    if not rhs.is_constant() or rhs.is_zero():
        raise ExprSyntaxError("只能除以非零常数", node.position, text)
    c = rhs.constant_term()
    return lhs.scale(GaussRational(1) / c)


def parse_polynomial(text: str, variables: Sequence[str]) -> MultiPoly:
    poly = to_poly(parse_expr(text, variables), len(variables), text)
    logger.debug(f"解析 {text!r} → {poly.format(list(variables))}")
    return poly


_PRECEDENCE = {
    NodeKind.ADD: 10, NodeKind.SUB: 10, NodeKind.MUL: 20, NodeKind.DIV: 20,
    NodeKind.NEG: 30, NodeKind.POW: 40,
}


def _precedence(node: Expr) -> int:
    if node.kind == NodeKind.NUM and node.value.denominator != 1:
        return 20
    return _PRECEDENCE.get(node.kind, 50)


def unparse(node: Expr, required: int = 0) -> str:
    """最少括号地还原表达式；unparse 的结果重新解析得到相同的多项式"""
    kind = node.kind
    if kind == NodeKind.NUM:
        text = str(node.value)
    elif kind == NodeKind.IMAG:
        text = "i"
    elif kind == NodeKind.VAR:
        text = node.name
    elif kind == NodeKind.NEG:
        text = "-" + unparse(node.args[0], PREFIX_POWER)
    elif kind == NodeKind.POW:
        text = f"{unparse(node.args[0], 41)}^{unparse(node.args[1], 40)}"
    else:
        symbol = {NodeKind.ADD: "+", NodeKind.SUB: "-", NodeKind.MUL: "*", NodeKind.DIV: "/"}[kind]
        own = _PRECEDENCE[kind]
        spaced = f" {symbol} " if own == 10 else symbol
        text = f"{unparse(node.args[0], own)}{spaced}{unparse(node.args[1], own + 1)}"
    if _precedence(node) < required:
        return f"({text})"
    return text


def parse_variables(text: str) -> List[str]:
    names = [v.strip() for v in text.split(",") if v.strip()]
    if not names:
        raise ValueError("变量列表为空")
    return names
