"""Command-line interface: output formats, exit codes, determinism."""

import json
import subprocess
import sys

import pytest

from uquery.cli import main


def run(capsys, *argv):
    rc = main(list(argv))
    captured = capsys.readouterr()
    return rc, captured.out, captured.err


def test_gen(capsys):
    rc, out, _ = run(capsys, "gen", "or:2")
    assert rc == 0
    assert out == (
        "spec = table:7:2\n"
        "family = or\n"
        "params = {\"n\": 2}\n"
        "arity = 2\n"
        "table = 0111\n"
    )


def test_gen_json(capsys, tmp_path):
    path = tmp_path / "f.json"
    rc, _, _ = run(capsys, "gen", "mind:2", "--out", str(path))
    assert rc == 0
    data = json.loads(path.read_text())
    assert data["spec"] == "table:035f:4"
    assert data["family"] == "mind"
    assert data["arity"] == 4


def test_gen_is_deterministic(capsys):
    first = run(capsys, "gen", "random:3:9")
    second = run(capsys, "gen", "random:3:9")
    assert first == second


def test_eval(capsys):
    assert run(capsys, "eval", "or:2", "0u")[1] == "u\n"
    assert run(capsys, "eval", "or:2", "00")[1] == "0\n"
    assert run(capsys, "eval", "or:2", "u1")[1] == "1\n"


def test_eval_bad_input(capsys):
    rc, _, err = run(capsys, "eval", "or:2", "0x")
    assert rc == 2
    assert err.startswith("error:")
    rc, _, err = run(capsys, "eval", "or:2", "0uu")
    assert rc == 2


def test_measures(capsys):
    rc, out, _ = run(capsys, "measures", "ind:1")
    assert rc == 0
    assert "function = table:35:3" in out
    assert "arity = 3" in out
    assert "C_u=2" in out and "bs_u=3" in out and "D_u=3" in out


def test_measures_json(capsys, tmp_path):
    path = tmp_path / "m.json"
    rc, _, _ = run(capsys, "measures", "maj:3", "--witnesses",
                   "--json", str(path))
    assert rc == 0
    data = json.loads(path.read_text())
    assert data["bs_u"] == 3 and data["C_u"] == 2
    assert data["witnesses"]["D_u"]["depth"] == 3


def test_solve_default_method(capsys):
    rc, out, _ = run(capsys, "solve", "and:2", "11")
    assert rc == 0
    assert out == (
        "output = 1\n"
        "queries = 2\n"
        "bound = 4\n"
        "transcript = 1:1 2:1\n"
    )


def test_solve_monotone_method(capsys):
    rc, out, _ = run(capsys, "solve", "mind:2", "01u0",
                     "--method", "monotone")
    assert rc == 0
    assert "output = u\n" in out
    assert "queries = 3\n" in out


def test_solve_tree_method(capsys):
    rc, out, _ = run(capsys, "solve", "ind:1", "uuu", "--method", "tree")
    assert rc == 0
    assert "output = u\n" in out


def test_solve_inapplicable_method_exits_2(capsys):
    rc, _, err = run(capsys, "solve", "parity:2", "0u",
                     "--method", "monotone")
    assert rc == 2
    assert "monotone" in err


def test_solve_json(capsys, tmp_path):
    path = tmp_path / "s.json"
    rc, _, _ = run(capsys, "solve", "table:e8:3", "00u", "--json", str(path))
    assert rc == 0
    data = json.loads(path.read_text())
    assert data["output"] == "1"
    assert data["queries"] == 3
    assert data["bound"] == 8


def test_tree_u_model(capsys):
    rc, out, _ = run(capsys, "tree", "or:2", "--model", "u")
    assert rc == 0
    assert "depth = 2\n" in out
    assert '"onU"' in out


def test_tree_binary_model(capsys, tmp_path):
    path = tmp_path / "t.json"
    rc, out, _ = run(capsys, "tree", "ind:1", "--model", "binary",
                     "--out", str(path))
    assert rc == 0
    assert "depth = 2\n" in out
    data = json.loads(path.read_text())
    assert data["depth"] == 2
    assert "onU" not in json.dumps(data["tree"])


def test_bad_spec_exits_2(capsys):
    rc, _, err = run(capsys, "gen", "bogus:1")
    assert rc == 2
    assert err.startswith("error:")


def test_cap_flag(capsys):
    rc, _, err = run(capsys, "measures", "or:5", "--cap", "4")
    assert rc == 2 and "cap" in err
    rc, out, _ = run(capsys, "measures", "or:5", "--cap", "5")
    assert rc == 0 and "D_u=5" in out


def test_cap_env(capsys, monkeypatch):
    monkeypatch.setenv("UQUERY_CAP", "4")
    rc, _, err = run(capsys, "measures", "or:5")
    assert rc == 2 and "cap" in err
    # an explicit flag wins over the environment
    rc, out, _ = run(capsys, "measures", "or:5", "--cap", "5")
    assert rc == 0 and "D_u=5" in out


def test_cap_env_must_be_integer(capsys, monkeypatch):
    monkeypatch.setenv("UQUERY_CAP", "lots")
    rc, _, err = run(capsys, "gen", "or:2")
    assert rc == 2
    assert "UQUERY_CAP" in err


def test_verify_suite(capsys):
    rc, out, _ = run(capsys, "verify", "reduction")
    assert rc == 0
    lines = out.splitlines()
    assert lines[0].startswith("PASS or-via-indexing: 20 cases, 0 failures")
    assert lines[-1] == "suite reduction: PASS (2 checks)"


def test_verify_output_is_deterministic(capsys):
    first = run(capsys, "verify", "core", "--n", "1..2", "--workers", "1")
    second = run(capsys, "verify", "core", "--n", "1..2", "--workers", "2")
    assert first == second


def test_verify_json_report(capsys, tmp_path):
    path = tmp_path / "r.json"
    rc, _, _ = run(capsys, "verify", "closure", "--n", "1..2",
                   "--json", str(path))
    assert rc == 0
    data = json.loads(path.read_text())
    assert data["suite"] == "closure"
    assert data["passed"] is True
    assert data["duration_seconds"] >= 0.0
    assert {r["check"] for r in data["records"]} \
        == {"closure-pointwise", "closure-depth"}


def test_verify_single_n(capsys):
    rc, out, _ = run(capsys, "verify", "algorithm1", "--n", "2")
    assert rc == 0
    assert "PASS solver-correct: 144 cases" in out


def test_verify_bad_range(capsys):
    rc, _, err = run(capsys, "verify", "core", "--n", "3..1")
    assert rc == 2
    rc, _, err = run(capsys, "verify", "core", "--n", "1..9")
    assert rc == 2


def test_entry_point_installed():
    proc = subprocess.run(
        ["uquery", "eval", "maj:3", "0u1"],
        capture_output=True, text=True, timeout=60)
    assert proc.returncode == 0
    assert proc.stdout == "u\n"


def test_module_invocation():
    proc = subprocess.run(
        [sys.executable, "-m", "uquery.cli", "gen", "parity:2"],
        capture_output=True, text=True, timeout=60)
    assert proc.returncode == 0
    assert "spec = table:6:2" in proc.stdout
