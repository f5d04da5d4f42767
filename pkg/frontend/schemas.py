# schemas.py
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple

from pydantic import BaseModel, Field, field_validator

from config import LP_CONFIG, OUTPUT_CONFIG, TRUNCATION_CONFIG, VERIFY_CONFIG

COMMANDS = ("newton", "mu0", "resolve", "adapted", "verify-sublevel", "verify-osc", "verify-lp", "scan")


class RationalModel(BaseModel):
    """精确有理数以字符串分子分母输出，避免浮点损失"""
    num: str = Field(..., pattern=r"^-?\d+$")
    den: str = Field(..., pattern=r"^[1-9]\d*$")

    @classmethod
    def from_fraction(cls, value: Fraction) -> "RationalModel":
        value = Fraction(value)
        return cls(num=str(value.numerator), den=str(value.denominator))

    def to_fraction(self) -> Fraction:
        return Fraction(int(self.num), int(self.den))


class RunConfig(BaseModel):
    """一次运行的完整配置，写入每份报告以便复现"""
    command: str = Field(..., pattern=r"^(newton|mu0|resolve|adapted|verify-sublevel|verify-osc|verify-lp|scan)$")
    expression: str
    variables: List[str] = Field(..., min_length=1)
    truncation: int = Field(default=int(TRUNCATION_CONFIG["default_order"]), ge=1,
                            le=int(TRUNCATION_CONFIG["max_order"]))
    max_lattice: int = Field(default=TRUNCATION_CONFIG["max_lattice"], ge=1)
    seed: int = Field(default=0, ge=0)
    samples: int = Field(default=VERIFY_CONFIG["samples"], ge=1000)
    strata_per_dim: int = Field(default=VERIFY_CONFIG["strata_per_dim"], ge=1)
    eps_schedule: Tuple[int, int] = VERIFY_CONFIG["eps_schedule"]
    lambda_schedule: Tuple[int, int] = VERIFY_CONFIG["lambda_schedule"]
    orthants: Optional[List[str]] = None
    rotate: Optional[int] = Field(default=None, ge=0)
    towers: bool = False
    delta: Optional[str] = None
    reference: Optional[str] = None
    log_parameter: str = str(LP_CONFIG["log_parameter"])
    out: Optional[str] = None
    svg: Optional[str] = None
    csv: Optional[str] = None
    indent: int = Field(default=OUTPUT_CONFIG["indent"], ge=0)

    @field_validator("eps_schedule", "lambda_schedule")
    @classmethod
    def _check_schedule(cls, value: Tuple[int, int]) -> Tuple[int, int]:
        first, last = value
        if first < 0 or last <= first:
            raise ValueError(f"尺度区间 {first}:{last} 无效，需要 0 <= a < b")
        return value

    @field_validator("orthants")
    @classmethod
    def _check_orthants(cls, value: Optional[List[str]]) -> Optional[List[str]]:
        if value is None:
            return value
        for mask in value:
            if not mask or any(c not in "+-" for c in mask):
                raise ValueError(f"卦限掩码 {mask!r} 只能由 + 和 - 组成")
        return value

    @field_validator("delta", "reference", "log_parameter")
    @classmethod
    def _check_rational(cls, value: Optional[str]) -> Optional[str]:
        if value is not None:
            Fraction(value)
        return value

    def orthant_signs(self) -> Optional[List[Tuple[int, ...]]]:
        if self.orthants is None:
            return None
        return [tuple(1 if c == "+" else -1 for c in mask) for mask in self.orthants]


class NewtonReportModel(BaseModel):
    input: str
    nvars: int = Field(..., ge=1)
    generators: List[List[str]]
    extreme_generators: List[List[str]]
    newton_distance: str
    delta0: str
    projected_exponents: List[str] = Field(default_factory=list)
    generalized_exponent: Optional[str] = None
    mep: Optional[Dict[str, Any]] = None
    config: Dict[str, Any]


class ResolutionReportModel(BaseModel):
    input: str
    nvars: int = Field(..., ge=2, le=3)
    mu0: str
    certificate: Dict[str, Any]
    orthants: List[Dict[str, Any]] = Field(default_factory=list)
    entries: List[Dict[str, Any]] = Field(default_factory=list)
    oscillation: Dict[str, Any]
    diagnostics: Dict[str, Any] = Field(default_factory=dict)
    adaptedness: Optional[Dict[str, Any]] = None
    config: Dict[str, Any]


class SlopeFitModel(BaseModel):
    kind: str = Field(..., pattern=r"^(sublevel|oscillatory|scan)$")
    exponent: float
    slope: float
    intercept: float
    band: List[float]
    residual: float = Field(..., ge=0)
    log_flag: bool
    points: List[Dict[str, float]]
    used: List[float]
    dropped: List[Any] = Field(default_factory=list)
    seed: Optional[int] = None
    notes: List[str] = Field(default_factory=list)
    scan: Optional[Dict[str, Any]] = None
    reference: Optional[Dict[str, Any]] = None
    config: Dict[str, Any]


class LPBoundModel(BaseModel):
    minimal_exponents: List[str]
    omega: List[str]
    M_one: Any
    optimizer: List[Any]
    dual_beta: List[Any]
    dual_sum: Any
    equality_sup: Optional[Any] = None
    delta0: str
    holds: bool
    implied_exponent: Any
    constant_C: Any
    cube: Dict[str, Any]
    config: Dict[str, Any]


class ErrorReportModel(BaseModel):
    code: str
    message: str
    exit_code: int = Field(..., ge=1, le=2)
    details: Dict[str, Any] = Field(default_factory=dict)
    config: Optional[Dict[str, Any]] = None
