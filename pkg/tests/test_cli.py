import json
import os
from dataclasses import replace

import pytest

from spsubgraphs.cli import main
from spsubgraphs.config import ConfigError, RunConfig, parse_tolerances
from spsubgraphs.systems import SystemSpec, build_triangle_network_system
from spsubgraphs.systems.expr import const
from spsubgraphs.verify import Context, check_exact_series


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_solve_order_zero(capsys):
    code, out, _ = run(capsys, "solve", "--class", "triangle", "--order", "0")
    assert code == 0
    doc = json.loads(out)
    assert doc["series"]["D"]["terms"] == [[0, 1, 0, "1/1"]]


def test_girth4_matches_triangle_free(capsys):
    _, a, _ = run(capsys, "solve", "--class", "girth", "--k", "4", "--order", "6")
    _, b, _ = run(capsys, "solve", "--class", "triangle", "--order", "6", "--u", "0")
    assert json.loads(a)["series"]["G"]["terms"] == json.loads(b)["series"]["G"]["terms"]


def test_usage_errors_exit_2(capsys):
    code, _, err = run(capsys, "solve", "--class", "girth", "--order", "3")
    assert code == 2 and json.loads(err)["exit_code"] == 2
    code, _, _ = run(capsys, "solve", "--class", "girth", "--k", "5", "--y", "1")
    assert code == 2
    code, _, _ = run(capsys, "census", "--n", "3", "--pattern", "4; 1-2,3-4")
    assert code == 2
    code, _, _ = run(capsys, "constants", "--family", "planar")
    assert code == 2
    code, _, _ = run(capsys, "census", "--n", "3", "--tol", "nonsense")
    assert code == 2
    with pytest.raises(SystemExit) as exc:
        main(["solve"])
    assert exc.value.code == 2


def test_numeric_error_exits_3(capsys, monkeypatch):
    import spsubgraphs.cli as cli
    from spsubgraphs.asymptotics import NewtonError

    def diverge(*a, **k):
        raise NewtonError("no convergence")

    monkeypatch.setattr(cli, "family_constants", diverge)
    code, _, err = run(capsys, "constants", "--family", "sp")
    assert code == 3 and json.loads(err)["error"] == "NewtonError"


def test_verify_exit_codes(capsys):
    code, _, _ = run(capsys, "verify", "--fast")
    assert code == 0
    code, _, _ = run(capsys, "verify", "--fast", "--tol", "growth_sp=-1")
    assert code == 2


def test_census_csv(capsys):
    code, out, _ = run(capsys, "census", "--n", "3", "--format", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) >= 2 and "," in lines[0]


def test_output_is_byte_stable(capsys, tmp_path):
    argv = ["solve", "--class", "c4", "--order", "5", "--u", "1"]
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    assert first == second
    target = tmp_path / "out.json"
    assert main([*argv, "--output", str(target)]) == 0
    assert target.read_text() == first
    assert os.listdir(tmp_path) == ["out.json"]


def test_precision_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("SPSUBGRAPHS_PRECISION", "40")
    assert RunConfig().precision_digits == 40
    monkeypatch.setenv("SPSUBGRAPHS_PRECISION", "lots")
    with pytest.raises(ConfigError):
        RunConfig()
    code, _, _ = run(capsys, "census", "--n", "3")
    assert code == 2


def test_system_dump(capsys):
    code, out, _ = run(capsys, "system", "dump", "--class", "triangle")
    assert code == 0
    spec = SystemSpec.from_json(json.loads(out))
    assert spec.unknowns == build_triangle_network_system().unknowns


def test_mutated_system_fails_exact_check():
    spec = build_triangle_network_system()
    name = spec.unknowns[0]
    rhs = dict(spec.rhs)
    rhs[name] = rhs[name] * const(2)
    mutated = SystemSpec(spec.name, spec.class_tag, spec.unknowns, rhs, spec.gain_one_order)
    ctx = Context()
    assert check_exact_series(ctx)[0].passed
    assert not check_exact_series(ctx, spec=mutated)[0].passed


def test_run_config_validation():
    cfg = RunConfig(tolerances={"a": 0.5})
    assert cfg.tolerance("a", 1.0) == 0.5 and cfg.tolerance("b", 1.0) == 1.0
    assert cfg.with_(series_order=10).series_order == 10
    for bad in ({"precision_digits": 10}, {"series_order": 2}, {"oracle_n_cap": 9},
                {"output_format": "xml"}, {"tolerances": {"a": -1}}):
        with pytest.raises(ConfigError):
            RunConfig(**bad)


def test_parse_tolerances():
    assert parse_tolerances(["a=1e-3", "b=2"]) == {"a": 1e-3, "b": 2.0}
    assert parse_tolerances(None) == {}
    for bad in (["a"], ["=1"], ["a=x"]):
        with pytest.raises(ConfigError):
            parse_tolerances(bad)
