from __future__ import annotations

import json
import subprocess
import sys

import pytest

from wsinglet.cli import EXIT_BUDGET, EXIT_PASS, main, run


@pytest.mark.parametrize("argv", [
    ["dyson", "--p", "2"],
    ["dyson", "--p", "1", "--n-max", "3"],
    ["singular", "--p", "3"],
    ["characters", "--p", "2", "--max-degree", "6"],
    ["zhu", "--p", "3"],
    ["jordan", "--p", "2", "--max-degree", "4"],
    ["intertwine", "--p", "2", "--depth", "1"],
])
def test_commands_pass(argv):
    code, text = run(argv + ["--format", "json"])
    doc = json.loads(text)
    assert code == EXIT_PASS
    assert set(doc) == {"command", "config", "results", "pass"}
    assert doc["pass"] is True
    assert all({"name", "pass"} <= set(r) for r in doc["results"])


def test_dyson_values():
    doc = json.loads(run(["dyson", "--p", "2", "--format", "json"])[1])
    assert [r["closed"] for r in doc["results"]] == [6, 2520]
    assert doc["config"] == {"p": 2, "max_degree": 8, "budget": doc["config"]["budget"],
                             "output_format": "json"}


def test_json_is_deterministic():
    argv = ["characters", "--p", "3", "--max-degree", "5", "--format", "json"]
    assert run(argv)[1] == run(argv)[1]


def test_tsv_and_text():
    tsv = run(["zhu", "--p", "2", "--format", "tsv"])[1].splitlines()
    assert tsv[0].split("\t")[:2] == ["name", "pass"]
    assert all(line.split("\t")[1] == "true" for line in tsv[1:])
    text = run(["zhu", "--p", "2"])[1]
    assert text.rstrip().endswith("overall: PASS")


def test_out_file(tmp_path):
    target = tmp_path / "report.json"
    code, text = run(["dyson", "--p", "3", "--n-max", "1", "--format", "json", "--out", str(target)])
    assert code == EXIT_PASS and text == ""
    assert json.loads(target.read_text())["results"][0]["closed"] == -20


def test_budget_exit(capsys):
    assert main(["dyson", "--p", "2", "--n-max", "2", "--budget", "5"]) == EXIT_BUDGET
    assert "budget exceeded" in capsys.readouterr().err


def test_bad_p():
    with pytest.raises(SystemExit):
        run(["zhu", "--p", "1"])


def test_unknown_command():
    with pytest.raises(SystemExit) as exc:
        run(["frobnicate"])
    assert exc.value.code == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "wsinglet", "dyson", "--p", "2", "--n-max", "1",
                           "--format", "json"], capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["results"][0]["closed"] == 6
