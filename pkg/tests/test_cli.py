import json
import subprocess
import sys

import pytest

from monovar.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_monoid_build_json(capsys):
    code, out = run(capsys, "monoid", "build", "x y x", "--json")
    assert code == 0
    data = json.loads(out)
    assert len(data["elements"]) == 7
    assert len(data["table"]) == 7


def test_check_sat_pass(capsys):
    code, out = run(capsys, "check", "sat", "x y x", "x x = x x x")
    assert code == 0
    assert "PASS" in out


def test_check_sat_fail_exit_1(capsys):
    code, out = run(capsys, "check", "sat", "x y x", "x y x = x x y", "--json")
    assert code == 1
    assert json.loads(out)["status"] == "FAIL"


def test_perm_enum(capsys):
    code, out = run(capsys, "perm", "enum", "2", "2")
    assert code == 0
    lines = out.splitlines()
    assert lines[-1] == "8 permutations"
    assert len(lines[:-1]) == 8


def test_isoterm_json_fields(capsys):
    code, out = run(capsys, "check", "isoterm", "x x", "x y x", "--json")
    assert code == 1
    data = json.loads(out)
    assert data["status"] == "NotIsoterm"
    assert {"witness", "bounds", "elapsed_ms"} <= set(data)


def test_join_member(capsys):
    code, out = run(capsys, "check", "join", "x y x t y", "y x x t y", "x x y t y",
                    "--max-len", "6", "--occ-cap", "3", "--json")
    assert code == 0
    assert json.loads(out)["status"] == "MemberWithinBounds"


def test_prove(capsys):
    code, out = run(capsys, "prove", "x x x = x x x x", "--rules", "phi2", "--depth", "3")
    assert code == 0


def test_gen_presentation(capsys):
    code, out = run(capsys, "gen", "presentation", "P", "--n", "2", "--bound", "2")
    assert code == 0
    assert "x x = x x x" in out


@pytest.mark.parametrize("argv", [
    ["check", "sat", "x y x", "x x x x"],
    ["check", "sat", "x (", "x = x"],
    ["verify", "paper", "--select", "nothing.*"],
    ["perm", "enum", "2"],
    ["gen", "presentation", "Z"],
    ["--bound", "0", "gen", "psi1"],
])
def test_usage_errors_exit_2(capsys, argv):
    assert main(argv) == 2


def test_budget_exit_3(capsys):
    code = main(["--budget", "10", "check", "isoterm", "x y t x", "x y x"])
    assert code == 3


def test_verify_and_replay(tmp_path, capsys):
    out = tmp_path / "report.json"
    code = main(["verify", "paper", "--select", "P4.3.join.*", "--out", str(out)])
    assert code == 1  # claim 2 fails
    data = json.loads(out.read_text())
    reports = data["reports"] if isinstance(data, dict) else data
    assert [r["id"] for r in reports] == [f"P4.3.join.{i}" for i in range(1, 5)]
    capsys.readouterr()
    assert main(["replay", str(out)]) == 1


def test_verify_passing_selection_exit_0(capsys):
    assert main(["verify", "paper", "--select", "P4.1.subst.a*"]) == 0


def test_config_file(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"budget": 10}))
    assert main(["--config", str(cfg), "check", "isoterm", "x y t x", "x y x"]) == 3
    cfg.write_text("{not json")
    assert main(["--config", str(cfg), "perm", "enum", "1", "1"]) == 2


def test_console_script():
    res = subprocess.run([sys.executable, "-m", "monovar.cli", "perm", "enum", "1", "1"],
                         capture_output=True, text=True)
    assert res.returncode == 0
    assert len(res.stdout.split("\n")) >= 2
