import json
import subprocess
import sys
from importlib import resources

import jsonschema
import pytest

from cayleyci.cli import EXIT_INFEASIBLE, EXIT_OK, EXIT_USAGE, main

SCHEMA = json.loads(resources.files("cayleyci").joinpath("report.schema.json").read_text())


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def validated(text):
    rep = json.loads(text)
    jsonschema.validate(rep, SCHEMA)
    return rep


def test_ci_ladder(capsys):
    code, out = run(capsys, "ci", "--n", "6", "--set", "a^1,a^5,b*a^0")
    rep = validated(out)
    assert code == EXIT_OK
    assert rep["normal"] is True and rep["ci"] is False and rep["aut_order"] == 24


def test_aut_empty_set(capsys):
    code, out = run(capsys, "aut", "--n", "6", "--set", "")
    assert code == EXIT_OK and validated(out)["aut_order"] == 479001600


@pytest.mark.parametrize("argv", [
    ["ci", "--n", "3", "--set", "a^0"],
    ["ci", "--n", "3", "--set", "a^1,a^1"],
    ["ci", "--n", "3", "--set", "a^3"],
    ["build", "--n", "1", "--set", ""],
    ["holomorph", "--n", "2"],
    ["frobnicate"],
    ["ci", "--set", "a^1"],
])
def test_usage_errors(capsys, argv):
    assert main(argv) == EXIT_USAGE


def test_cap_is_reported_as_infeasible(capsys, monkeypatch):
    monkeypatch.setenv("CAYLEY_CI_CAP", "10")
    code, out = run(capsys, "ci", "--n", "4", "--set", "a^1,a^3,b*a^0")
    rep = validated(out)
    assert code == EXIT_INFEASIBLE and rep["ci"] is None


def test_vertex_cap_is_infeasible(capsys):
    assert main(["aut", "--n", "25", "--set", "a^1"]) == EXIT_INFEASIBLE


@pytest.mark.parametrize("argv", [
    ["build", "--n", "4", "--set", "a^1,b*a^2"],
    ["normal", "--n", "4", "--set", "a^1,a^3,b*a^0"],
    ["wreath", "--n", "9", "--set", ""],
    ["ladder", "--n", "8"],
    ["d8"],
    ["holomorph", "--n", "9"],
    ["orbits", "--n", "3", "--mode", "graph"],
])
def test_reports_validate(capsys, argv):
    code, out = run(capsys, *argv)
    assert code == EXIT_OK
    rep = validated(out)
    assert rep["command"] == argv[0]


def test_ladder_reports_witness(capsys):
    _, out = run(capsys, "ladder", "--n", "10")
    rep = validated(out)
    assert rep["normal"] and rep["ci"] is False and rep["witness_in_aut"] is True


def test_out_and_export(tmp_path, capsys):
    out = tmp_path / "r.json"
    dot = tmp_path / "g.dot"
    code = main(["normal", "--n", "5", "--set", "a^1,a^4", "--out", str(out),
                 "--export-graph", str(dot)])
    assert code == EXIT_OK
    validated(out.read_text())
    assert dot.read_text().count("->") == 20


def test_verify_theorem_writes_census(tmp_path, monkeypatch, capsys):
    monkeypatch.chdir(tmp_path)
    code, out = run(capsys, "verify-theorem", "--n", "5", "--mode", "digraph", "--exhaustive")
    assert code == EXIT_OK
    assert "MATCH" in out
    lines = (tmp_path / "census-n5-digraph.jsonl").read_text().splitlines()
    assert len(lines) == 513
    for line in lines:
        validated(line)
    assert json.loads(lines[-1])["summary"]["claim_matches_prediction"] is True


def test_verify_theorem_budget_is_infeasible(tmp_path, capsys):
    path = tmp_path / "c.jsonl"
    code = main(["verify-theorem", "--n", "4", "--exhaustive", "--budget", "10", "--out", str(path)])
    assert code == EXIT_INFEASIBLE
    assert json.loads(path.read_text().splitlines()[-1])["summary"]["complete"] is False


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "cayleyci", "normal", "--n", "6", "--set",
                          "a^1,a^5,b*a^0"], capture_output=True, text=True)
    assert res.returncode == 0
    assert json.loads(res.stdout)["normal"] is True
