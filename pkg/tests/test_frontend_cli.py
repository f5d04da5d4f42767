# test_frontend_cli.py
import io
import json

import pandas as pd
import pytest

from frontend import RunConfig, main

CONE = "x3^2 - x1^2 - x2^2"


def run(argv):
    stream = io.StringIO()
    code = main(argv, stream)
    return code, stream.getvalue()


def run_json(argv):
    code, text = run(argv + ["--json"])
    return code, json.loads(text)


def test_newton_cone():
    code, report = run_json(["newton", CONE, "--vars", "x1,x2,x3"])
    assert code == 0
    assert report["delta0"] == "3/2"
    assert report["newton_distance"] == "2/3"
    assert report["config"]["command"] == "newton"
    assert report["config"]["variables"] == ["x1", "x2", "x3"]


def test_newton_writes_svg(tmp_path):
    svg = tmp_path / "np.svg"
    code, _ = run(["newton", "(x3^2 - x1)*(x3^3 - x2)", "--svg", str(svg)])
    assert code == 0
    assert "<svg" in svg.read_text(encoding="utf-8")


def test_svg_legend_is_ascii(tmp_path):
    svg = tmp_path / "np.svg"
    code, _ = run(["newton", CONE, "--svg", str(svg)])
    assert code == 0
    text = svg.read_text(encoding="utf-8")
    assert "NP boundary" in text
    assert "diagonal" in text
    assert not any("\u4e00" <= ch <= "\u9fff" for ch in text)


def test_mu0_cone():
    code, report = run_json(["mu0", CONE, "--vars", "x1,x2,x3"])
    assert code == 0
    assert report["mu0"] == "1"
    assert report["certificate"]["delta0"] == "1"
    assert report["oscillation"]["rho0"] is None


def test_verify_lp_product():
    code, report = run_json(["verify-lp", "x1*x2", "--vars", "x1,x2"])
    assert code == 0
    assert report["M_one"] == {"num": "-1", "den": "1"}
    assert report["cube"]["passed"]


def test_text_summary():
    code, text = run(["verify-lp", "x1*x2", "--vars", "x1,x2"])
    assert code == 0
    assert "M(1) = -1" in text


@pytest.mark.parametrize("argv, code, error", [
    (["newton", "x1^(1/2)"], 1, "syntax_error"),
    (["newton", "x1 + w"], 1, "unknown_variable"),
    (["newton", "1 + x1"], 1, "invalid_input"),
    (["mu0", "x1*x3 + x2^2"], 1, "needs_rotation"),
    (["mu0", CONE, "--orthant", "+*"], 1, "invalid_input"),
    (["verify-sublevel", "x1", "--vars", "x1", "--eps", "2:5", "--samples", "1000"], 2, "inconclusive"),
])
def test_error_reports(argv, code, error):
    exit_code, report = run_json(argv)
    assert exit_code == code
    assert report["code"] == error
    assert report["exit_code"] == code
    assert report["message"]


def test_sublevel_csv(tmp_path):
    csv = tmp_path / "fit.csv"
    code, report = run_json(["verify-sublevel", "x1", "--vars", "x1", "--eps", "2:8",
                             "--samples", "20000", "--seed", "3", "--csv", str(csv)])
    assert code == 0
    frame = pd.read_csv(csv)
    assert list(frame.columns) == ["scale", "value", "stderr"]
    assert len(frame) == 7
    assert report["reference"]["delta0"] == "1"
    assert report["config"]["seed"] == 3


def test_replay_is_byte_identical(tmp_path):
    out = tmp_path / "report.json"
    assert main(["newton", CONE, "--out", str(out)], io.StringIO()) == 0
    first = out.read_text(encoding="utf-8")
    assert main(["newton", "--config", str(out)], io.StringIO()) == 0
    assert out.read_text(encoding="utf-8") == first


def test_run_config_validation():
    with pytest.raises(ValueError):
        RunConfig(command="newton", expression="x1", variables=["x1"], eps_schedule=(5, 2))
    with pytest.raises(ValueError):
        RunConfig(command="plot", expression="x1", variables=["x1"])
    config = RunConfig(command="mu0", expression=CONE, variables=["x1", "x2", "x3"], orthants=["+-"])
    assert config.orthant_signs() == [(1, -1)]
