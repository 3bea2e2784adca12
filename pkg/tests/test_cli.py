from __future__ import annotations

import json
import os
import subprocess
import sys
from fractions import Fraction
from pathlib import Path

import pytest

from branchcov import fixtures
from branchcov.cli import main
from branchcov.plcov import BranchReport, PLCovering, analyze
from branchcov.report import SCHEMA, ReportEnvelope
from branchcov.svg import render_svg

GOLDEN = Path(__file__).with_name("golden")

# (golden file stem, argv) for every shipped fixture
GOLDEN_RUNS = [
    ("plcov-notbranched-i", ["plcov", "check", "fixtures:notbranched-i"]),
    ("plcov-notbranched-ii-pl", ["plcov", "check", "fixtures:notbranched-ii-pl"]),
    ("plcov-x-cross", ["plcov", "check", "fixtures:x-cross"]),
    ("bezout-n2-regular", ["bezout", "analyze", "--fixture", "bezout-n2-regular"]),
    ("bezout-n3-collapse", ["bezout", "analyze", "--fixture", "bezout-n3-collapse"]),
    ("fintop-finite-x", ["fintop", "analyze", "--instance", "fixtures:finite-x"]),
    ("fintop-finite-x-chain", ["fintop", "analyze", "--instance", "fixtures:finite-x-chain"]),
]


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, (json.loads(out) if out.strip() else None), err


def payload_text(payload) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


@pytest.mark.parametrize("stem,argv", GOLDEN_RUNS)
def test_golden_payloads(stem, argv, capsys):
    code, env, _ = run(argv, capsys)
    assert code == 0
    expected = (GOLDEN / f"{stem}.json").read_text(encoding="utf-8")
    assert payload_text(env["payload"]) == expected


def test_every_fixture_has_a_golden_run():
    covered = {argv[-1].removeprefix("fixtures:") for _, argv in GOLDEN_RUNS}
    assert set(fixtures.names()) == covered
    required = {"notbranched-i", "notbranched-ii-pl", "x-cross", "bezout-n2-regular", "bezout-n3-collapse"}
    assert required <= covered


def test_fixture_expectations_hold(capsys):
    for name in fixtures.names():
        data = fixtures.load(name)
        if data["kind"] == "plcov":
            argv = ["plcov", "check", f"fixtures:{name}"]
        elif data["kind"] == "fintop":
            argv = ["fintop", "analyze", "--instance", f"fixtures:{name}"]
        else:
            argv = ["bezout", "analyze", "--fixture", name]
        code, _, _ = run(argv + ["--expect", data["expect"]], capsys)
        assert code == 0, name


def test_plcov_check_example(capsys):
    code, env, _ = run(["plcov", "check", "fixtures:notbranched-i"], capsys)
    assert code == 0
    p = env["payload"]
    assert p["is_branched"] is False and p["branched_witness"] == {"point": ["0", "3/2"], "L": 1, "R": 2}


def test_bezout_analyze_example(capsys):
    code, env, _ = run(["bezout", "analyze", "--n", "3", "--point", "4,5,2"], capsys)
    assert code == 0
    p = env["payload"]
    assert (p["d"], p["index"], p["collapse"]) == (3, 2, False)
    assert set(p) >= {"hyperbolic", "profile", "fiber", "index", "d", "collapse", "branch"}


def test_fintop_fuzz_zero_trials(capsys):
    code, env, _ = run(["fintop", "fuzz", "--seed", "42", "--trials", "0"], capsys)
    assert code == 0 and env["seed"] == 42
    assert env["payload"]["trials"] == 0 and env["payload"]["failures"] == []


def test_envelope_fields_and_roundtrip(capsys):
    argv = ["fintop", "fuzz", "--seed", "5", "--trials", "3", "--max-points", "4"]
    _, env, _ = run(argv, capsys)
    assert env["schema"] == SCHEMA and env["command"] == argv
    assert isinstance(env["timing"]["seconds"], str)
    back = ReportEnvelope.from_json(json.dumps(env))
    assert back.to_json() == env
    _, again, _ = run(argv, capsys)
    assert again["payload"] == env["payload"]


def test_bezout_subcommands(capsys):
    _, env, _ = run(["bezout", "mu", "--point", "0,-1", "--f", "x1"], capsys)
    assert env["payload"]["mu"] == "0"
    _, env, _ = run(["bezout", "symfun", "--point", "2,1", "--f", "x1", "--k", "2"], capsys)
    assert env["payload"]["symfun"] == "1"
    _, env, _ = run(["bezout", "integral", "--point", "0,-1", "--f", "x1"], capsys)
    assert env["payload"]["coefficients"] == ["-1", "0", "1"] and env["payload"]["residuals"] == ["0", "0"]
    _, env, _ = run(["bezout", "mu", "--point", "0,-2", "--f", "x1^2", "--mode", "interval", "--width", "1/1000000000000"], capsys)
    lo, hi = (Fraction(v) for v in env["payload"]["mu"])
    assert lo <= 2 <= hi
    _, env, _ = run(["bezout", "resultant", "--point", "0,-2"], capsys)
    assert env["payload"]["all_zero"] is True


def test_plcov_svg(tmp_path, capsys):
    out = tmp_path / "x.svg"
    code, _, _ = run(["plcov", "check", "fixtures:x-cross", "--svg", str(out)], capsys)
    assert code == 0
    text = out.read_text()
    assert text.count('class="branch"') == 1 and text.startswith("<svg")


def test_svg_layout():
    nb = PLCovering.from_json(fixtures.load("notbranched-i")["covering"])
    svg = render_svg(nb, analyze(nb))
    assert svg.count("<line x1") == 6 + 2  # six segments, two open fiber-count steps
    assert svg.count('class="branch"') == 2
    assert 'id="base"' in svg and 'id="fiber-counts"' in svg
    pair = PLCovering.from_json({"base": ["0", "1"], "segments": [
        {"x": ["0", "1"], "slope": "0", "intercept": "0"},
        {"x": ["0", "1"], "slope": "0", "intercept": "1"},
    ]})
    assert 'class="branch"' not in render_svg(pair, analyze(pair))


def test_report_json_reparses_exactly(capsys):
    _, env, _ = run(["plcov", "check", "fixtures:notbranched-i"], capsys)
    rep = BranchReport.from_json(env["payload"])
    assert rep == analyze(PLCovering.from_json(fixtures.load("notbranched-i")["covering"]))


@pytest.mark.parametrize(
    "argv,field",
    [
        (["bezout", "analyze", "--point", "1,x"], "--point"),
        (["bezout", "analyze", "--n", "3", "--point", "1,2"], "--n"),
        (["bezout", "analyze", "--fixture", "nope"], "--fixture"),
        (["bezout", "analyze", "--fixture", "x-cross"], "--fixture"),
        (["bezout", "mu", "--point", "0,1", "--f", "x1"], "--point"),
        (["bezout", "mu", "--point", "0,-2", "--f", "x1"], "--mode"),
        (["bezout", "mu", "--point", "0,-1", "--f", "x1 +"], "--f"),
        (["bezout", "mu", "--point", "0,-1", "--f", "x1", "--width", "abc"], "--width"),
        (["bezout", "symfun", "--point", "0,-1", "--f", "x1", "--k", "3"], "--k"),
        (["bezout", "resultant", "--point", "1,2,3,4,5"], "--n"),
        (["plcov", "check", "fixtures:nope"], "source"),
        (["plcov", "check", "fixtures:finite-x"], "source"),
        (["fintop", "check", "--lemma", "bogus", "--instance", "fixtures:finite-x"], "--lemma"),
        (["fintop", "analyze"], "--instance"),
        (["fintop", "sweep", "--max-points", "6"], "--max-points"),
        (["fixtures", "show", "nope"], "name"),
    ],
)
def test_input_errors_exit_2(argv, field, capsys):
    code, env, err = run(argv, capsys)
    assert code == 2 and env is None
    assert f"error: {field}:" in err


def test_malformed_json_and_bad_segments(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, _, err = run(["plcov", "check", str(bad)], capsys)
    assert code == 2 and "malformed JSON" in err
    bad.write_text(json.dumps({"base": ["0", "1"], "segments": [{"x": ["0", "2"], "slope": "0", "intercept": "0"}]}))
    code, _, err = run(["plcov", "check", str(bad)], capsys)
    assert code == 2 and "segments:" in err and "leaves the base" in err
    bad.write_text(json.dumps({"base": ["0", "1/0"], "segments": []}))
    code, _, _ = run(["plcov", "check", str(bad)], capsys)
    assert code == 2
    code, _, err = run(["plcov", "check", str(tmp_path / "missing.json")], capsys)
    assert code == 2 and "cannot read" in err


def test_expect_contradiction_exits_1(capsys):
    code, env, err = run(["plcov", "check", "fixtures:notbranched-i", "--expect", "branched"], capsys)
    assert code == 1 and env["payload"]["is_branched"] is False and "not met" in err
    code, _, _ = run(["bezout", "analyze", "--point", "0,1", "--expect", "hyperbolic"], capsys)
    assert code == 1
    code, _, _ = run(["fintop", "analyze", "--instance", "fixtures:finite-x-chain", "--expect", "quasi"], capsys)
    assert code == 1


def test_unknown_subcommand_exits_2(capsys):
    assert main(["frob"]) == 2
    capsys.readouterr()


def test_fixture_dir_override(tmp_path, monkeypatch, capsys):
    (tmp_path / "tiny.json").write_text(json.dumps({
        "kind": "plcov",
        "description": "one horizontal segment",
        "covering": {"base": ["0", "1"], "segments": [{"x": ["0", "1"], "slope": "0", "intercept": "0"}]},
        "expect": "branched",
    }))
    monkeypatch.setenv(fixtures.ENV_VAR, str(tmp_path))
    code, env, _ = run(["fixtures", "list"], capsys)
    assert code == 0 and [f["name"] for f in env["payload"]["fixtures"]] == ["tiny"]
    code, env, _ = run(["plcov", "check", "fixtures:tiny", "--expect", "branched"], capsys)
    assert code == 0 and env["payload"]["d"] == 1


def test_console_entry_point_module():
    proc = subprocess.run(
        [sys.executable, "-m", "branchcov", "fixtures", "list"], capture_output=True, text=True, env=dict(os.environ), check=False
    )
    assert proc.returncode == 0
    assert "notbranched-i" in proc.stdout
