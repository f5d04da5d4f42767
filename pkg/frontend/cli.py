# cli.py
"""
命令行入口：newton / mu0 / resolve / adapted / verify-sublevel / verify-osc / verify-lp / scan
退出码 0 成功，2 如实的无结论（Unresolved、Inconclusive 等），1 错误
"""
import argparse
from dataclasses import dataclass, field
from fractions import Fraction
import json
import logging
import sys
from typing import Callable, Dict, List, Optional, Sequence, TextIO, Tuple

from pydantic import BaseModel

from algebra.exceptions import ToolkitError
from algebra.polynomial import MultiPoly
from config import VERIFY_CONFIG
from newton.mep import is_mep_defined
from newton.polyhedron import (
    format_extended, generalized_exponent, newton_distance_exponent, np_from_terms, projected_exponent
)
from resolve import Unresolved, adapted_report, resolve_bivariate, resolve_trivariate, rho0_note
from resolve.report import ResolutionReport
from verify import (
    OscillatoryOracle, ScanVerdict, SublevelOracle, IntegrabilityScan, lp_lower_bound
)
from verify.base_oracle import SlopeFit
from .parser import parse_polynomial, parse_variables
from .plots import plot_projections
from .schemas import (
    COMMANDS, ErrorReportModel, LPBoundModel, NewtonReportModel, ResolutionReportModel,
    RunConfig, SlopeFitModel
)
from .writers import jsonable, write_csv, write_json

logger = logging.getLogger(__name__)

# 数值结果与闭式 δ0 比较时的容差
REFERENCE_TOLERANCE = 0.1


@dataclass
class CommandResult:
    report: BaseModel
    summary: List[str] = field(default_factory=list)
    exit_code: int = 0


def _schedule(text: str) -> Tuple[int, int]:
    try:
        first, last = (int(part) for part in text.split(":"))
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"尺度区间应写成 a:b，收到 {text!r}") from e
    return first, last


def _identity_delta0(f: MultiPoly) -> Optional[Fraction]:
    """原坐标上的牛顿指数；F(0) != 0 时没有意义，返回 None"""
    if f.is_zero() or not f.constant_term().is_zero():
        return None
    return newton_distance_exponent(np_from_terms(f))[1]


def _resolve(f: MultiPoly, config: RunConfig) -> ResolutionReport:
    signs = config.orthant_signs()
    if signs is not None and any(len(s) != f.nvars - 1 for s in signs):
        raise ValueError(f"卦限掩码长度必须为 {f.nvars - 1}: {config.orthants}")
    order = Fraction(config.truncation)
    if f.nvars == 2:
        return resolve_bivariate(f, order)
    if f.nvars == 3:
        return resolve_trivariate(f, order, signs, towers=config.towers, rotate=config.rotate)
    raise ValueError(f"分解只支持二元或三元多项式，收到 {f.nvars} 元")


def run_newton(f: MultiPoly, config: RunConfig) -> CommandResult:
    np_ = np_from_terms(f)
    d0, delta0 = newton_distance_exponent(np_)
    projected = [format_extended(projected_exponent(np_, j)) for j in range(1, f.nvars)]
    mep = is_mep_defined(np_)
    if config.svg and f.nvars >= 2:
        plot_projections(np_, config.svg, mep, config.variables)
    report = NewtonReportModel(
        input=f.format(config.variables),
        nvars=f.nvars,
        generators=np_.to_dict()["generators"],
        extreme_generators=[[str(x) for x in g] for g in np_.extreme_generators()],
        newton_distance=str(d0),
        delta0=format_extended(delta0),
        projected_exponents=projected,
        generalized_exponent=format_extended(generalized_exponent(np_)) if f.nvars > 1 else None,
        mep=mep.to_dict() if mep is not None else None,
        config=config.model_dump(),
    )
    return CommandResult(report, [f"d0 = {d0}", f"δ0 = {format_extended(delta0)}"])


def _resolution_model(resolution: ResolutionReport, config: RunConfig, full: bool,
                      adaptedness: Optional[Dict] = None) -> ResolutionReportModel:
    data = resolution.to_dict()
    if not full:
        data.pop("orthants")
        data.pop("entries")
    return ResolutionReportModel(**data, adaptedness=adaptedness, config=config.model_dump())


def run_mu0(f: MultiPoly, config: RunConfig) -> CommandResult:
    resolution = _resolve(f, config)
    summary = [f"μ0 = {format_extended(resolution.mu0)}", f"证书: {resolution.certificate.describe()}"]
    return CommandResult(_resolution_model(resolution, config, full=False), summary)


def run_resolve(f: MultiPoly, config: RunConfig) -> CommandResult:
    resolution = _resolve(f, config)
    summary = [f"μ0 = {format_extended(resolution.mu0)}"]
    for orthant in resolution.orthants:
        summary.append(f"卦限 {orthant.signs}: {len(orthant.regions)} 块区域，μ0 = {format_extended(orthant.mu0)}")
    return CommandResult(_resolution_model(resolution, config, full=True), summary)


def run_adapted(f: MultiPoly, config: RunConfig) -> CommandResult:
    resolution = _resolve(f, config)
    checkable = [e for e in resolution.entries if e.factored is not None]
    if not checkable:
        raise Unresolved("没有带因式分解数据的坐标，无法检验适配性", {"entries": len(resolution.entries)})
    verdicts = [adapted_report(f, entry).to_dict() for entry in checkable]
    summary = [f"{v['entry']}: {v['verdict']}" for v in verdicts]
    model = _resolution_model(resolution, config, full=False, adaptedness={"verdicts": verdicts})
    return CommandResult(model, summary)


def _slope_model(fit: SlopeFit, config: RunConfig, scan: Optional[Dict] = None,
                 reference: Optional[Dict] = None) -> SlopeFitModel:
    if config.csv:
        write_csv(fit, config.csv)
    return SlopeFitModel(**fit.to_dict(), scan=scan, reference=reference, config=config.model_dump())


def _verify_config(config: RunConfig) -> Dict:
    return {**VERIFY_CONFIG, "samples": config.samples, "strata_per_dim": config.strata_per_dim}


def run_verify_sublevel(f: MultiPoly, config: RunConfig) -> CommandResult:
    fit = SublevelOracle(config.seed, _verify_config(config)).run(f, eps_schedule=config.eps_schedule)
    delta0 = Fraction(config.reference) if config.reference is not None else _identity_delta0(f)
    reference = None
    if delta0 is not None:
        reference = {
            "delta0": format_extended(delta0),
            "within_bound": bool(fit.exponent <= float(delta0) + REFERENCE_TOLERANCE),
        }
    summary = [f"ν̂0 = {fit.exponent:.4f}，区间 [{fit.band[0]:.4f}, {fit.band[1]:.4f}]"]
    return CommandResult(_slope_model(fit, config, reference=reference), summary)


def run_verify_osc(f: MultiPoly, config: RunConfig) -> CommandResult:
    fit = OscillatoryOracle(config.seed, _verify_config(config)).run(f, lambda_schedule=config.lambda_schedule)
    delta0 = Fraction(config.reference) if config.reference is not None else _identity_delta0(f)
    reference = None
    if delta0 is not None:
        reference = {"delta0": format_extended(delta0), **rho0_note(delta0)}
    summary = [f"ρ̂0 = {fit.exponent:.4f}，区间 [{fit.band[0]:.4f}, {fit.band[1]:.4f}]"]
    return CommandResult(_slope_model(fit, config, reference=reference), summary)


def run_scan(f: MultiPoly, config: RunConfig) -> CommandResult:
    if config.delta is None:
        raise ValueError("scan 需要 --delta")
    result = IntegrabilityScan(config.seed, _verify_config(config)).run(
        f, delta=float(Fraction(config.delta)), shells=config.eps_schedule
    )
    exit_code = 2 if result.verdict == ScanVerdict.INCONCLUSIVE else 0
    summary = [f"δ = {config.delta}: {result.verdict.value}（比值 {result.ratio:.4f}）"]
    return CommandResult(_slope_model(result.fit, config, scan=result.to_dict()), summary, exit_code)


def run_verify_lp(f: MultiPoly, config: RunConfig) -> CommandResult:
    bound = lp_lower_bound(f, Fraction(config.log_parameter))
    report = LPBoundModel(**bound.to_dict(), config=config.model_dump())
    summary = [f"M(1) = {bound.m_one}", f"δ0 = {format_extended(bound.delta0)}",
               f"立方体角点检验: {'通过' if bound.cube.passed else '失败'}"]
    return CommandResult(report, summary)


HANDLERS: Dict[str, Callable[[MultiPoly, RunConfig], CommandResult]] = {
    "newton": run_newton,
    "mu0": run_mu0,
    "resolve": run_resolve,
    "adapted": run_adapted,
    "verify-sublevel": run_verify_sublevel,
    "verify-osc": run_verify_osc,
    "verify-lp": run_verify_lp,
    "scan": run_scan,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="critindex", description="多项式奇点的精确分解与临界可积性指数 μ0")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("expression", nargs="?", help="多项式表达式，例如 \"x3^2 - x1^2 - x2^2\"")
        p.add_argument("--vars", default="x1,x2,x3", help="变量列表，最后一个为特殊变量（默认 x1,x2,x3）")
        p.add_argument("--trunc", type=int, default=None, help="截断阶 K")
        p.add_argument("--seed", type=int, default=None, help="随机种子")
        p.add_argument("--json", action="store_true", help="在标准输出打印 JSON 报告")
        p.add_argument("--out", default=None, help="报告文件路径")
        p.add_argument("--config", default=None, help="从报告或配置 JSON 重放运行")
        if name == "newton":
            p.add_argument("--svg", default=None, help="NP 二维投影 SVG 路径")
        if name in ("mu0", "resolve", "adapted"):
            p.add_argument("--orthant", action="append", default=None, help="卦限掩码，如 ++ 或 +-，可重复")
            p.add_argument("--rotate", type=int, default=None, help="F(0,…,0,x_last) ≡ 0 时随机线性变换的种子")
            p.add_argument("--towers", action="store_true", help="输出纤维方向的塔分解")
        if name in ("verify-sublevel", "verify-osc", "scan"):
            p.add_argument("--samples", type=int, default=None, help="蒙特卡洛样本数")
            p.add_argument("--csv", default=None, help="斜率拟合数据 CSV 路径")
            p.add_argument("--reference", default=None, help="用于比较的 δ0（有理数）")
        if name in ("verify-sublevel", "scan"):
            p.add_argument("--eps", type=_schedule, default=None, help="ε = 2^-a … 2^-b，写成 a:b")
        if name == "verify-osc":
            p.add_argument("--lambda", dest="lambda_schedule", type=_schedule, default=None,
                           help="λ = 2^a … 2^b，写成 a:b")
        if name == "scan":
            p.add_argument("--delta", default=None, help="被检验的指数 δ（有理数）")
        if name == "verify-lp":
            p.add_argument("--log-parameter", dest="log_parameter", default=None,
                           help="立方体引理中 log(Cd/ε) 的有理替代值")
    return parser


_FLAG_FIELDS = {
    "trunc": "truncation", "seed": "seed", "out": "out", "svg": "svg", "orthant": "orthants",
    "rotate": "rotate", "samples": "samples", "csv": "csv", "reference": "reference",
    "eps": "eps_schedule", "lambda_schedule": "lambda_schedule", "delta": "delta",
    "log_parameter": "log_parameter",
}


def run_config(args: argparse.Namespace) -> RunConfig:
    """命令行参数 -> RunConfig；--config 给出时以文件中的配置为准"""
    if args.config:
        try:
            with open(args.config, "r", encoding="utf-8") as f:
                data = json.load(f)
        except (OSError, json.JSONDecodeError) as e:
            logger.error(f"读取配置 {args.config} 失败: {e}")
            raise ValueError(f"无法读取配置文件 {args.config}: {e}") from e
        config = RunConfig.model_validate(data.get("config", data))
        if config.command != args.command:
            raise ValueError(f"配置文件属于 {config.command}，与子命令 {args.command} 不符")
        return config
    if not args.expression:
        raise ValueError("缺少多项式表达式")
    values = {"command": args.command, "expression": args.expression,
              "variables": parse_variables(args.vars), "towers": getattr(args, "towers", False)}
    for flag, name in _FLAG_FIELDS.items():
        value = getattr(args, flag, None)
        if value is not None:
            values[name] = value
    return RunConfig(**values)


def _emit(report: BaseModel, summary: Sequence[str], config: Optional[RunConfig], as_json: bool,
          stream: TextIO) -> None:
    indent = config.indent if config is not None else 2
    out = config.out if config is not None else None
    write_json(report, out, indent, stream if as_json else None)
    if not as_json:
        for line in summary:
            stream.write(line + "\n")


def main(argv: Optional[Sequence[str]] = None, stream: Optional[TextIO] = None) -> int:
    stream = stream or sys.stdout
    args = build_parser().parse_args(argv)
    config: Optional[RunConfig] = None
    try:
        config = run_config(args)
        f = parse_polynomial(config.expression, config.variables)
        logger.info(f"{config.command}: {f.format(config.variables)}")
        result = HANDLERS[config.command](f, config)
    except ToolkitError as e:
        logger.error(f"{args.command} 失败 [{e.code}]: {e}")
        error = ErrorReportModel(code=e.code, message=str(e), exit_code=e.exit_code,
                                 details=jsonable(e.details),
                                 config=config.model_dump() if config is not None else None)
        _emit(error, [f"错误 [{e.code}]: {e}"], config, args.json, stream)
        return e.exit_code
    except ValueError as e:
        logger.error(f"{args.command} 输入无效: {e}")
        error = ErrorReportModel(code="invalid_input", message=str(e), exit_code=1,
                                 config=config.model_dump() if config is not None else None)
        _emit(error, [f"错误 [invalid_input]: {e}"], config, args.json, stream)
        return 1
    _emit(result.report, result.summary, config, args.json, stream)
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
