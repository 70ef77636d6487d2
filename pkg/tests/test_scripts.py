import runpy
import sys
from pathlib import Path

SCRIPTS = Path(__file__).resolve().parent.parent / "scripts"


def _run(name, argv, monkeypatch):
    monkeypatch.setattr(sys, "argv", [name, *argv])
    try:
        runpy.run_path(str(SCRIPTS / name), run_name="__main__")
    except SystemExit as e:
        return e.code
    return 0


def test_reproduce_classification(tmp_path, monkeypatch, capsys):
    code = _run("reproduce_classification.py",
                ["--max-n", "4", "--graph-max-n", "4", "--outdir", str(tmp_path)], monkeypatch)
    out = capsys.readouterr().out
    assert code == 0 and out.count("MATCH") == 6
    assert (tmp_path / "census-n4-graph.jsonl").exists()


def test_ladder_family(monkeypatch, capsys):
    _run("ladder_family.py", ["6"], monkeypatch)
    out = capsys.readouterr().out
    assert "    24   True False" in out and '"passed": true' in out
