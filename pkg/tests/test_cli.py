import json
import subprocess
import sys
from pathlib import Path

import pytest

from hypart.cli import main

DATA = Path(__file__).parent / "data"


def run(argv, capsys):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_gen_then_decompose_then_verify(tmp_path, capsys):
    g = tmp_path / "g.txt"
    assert run(["gen", "--n", 9, "--r", 3, "--p", "0.5", "--seed", 4, "--out", g], capsys)[0] == 0
    p = tmp_path / "p.json"
    code, _, err = run(["decompose", g, "--method", "greedy", "--out", p], capsys)
    assert code == 0 and "blocks=" in err
    code, out, _ = run(["verify", g, p], capsys)
    assert code == 0 and json.loads(out)["valid"] is True


def test_verify_failure_exit_code(tmp_path, capsys):
    g = tmp_path / "g.txt"
    g.write_text("4 3\n1 2 3\n1 2 4\n1 3 4\n2 3 4\n2 3 5\n".replace("2 3 5\n", ""))
    p = tmp_path / "p.json"
    p.write_text('{"n": 4, "r": 3, "source": "external", "valid": null,'
                 ' "blocks": [[[1], [3], [2, 4]]]}')
    code, out, _ = run(["verify", g, p], capsys)
    assert code == 1
    kinds = {v["kind"] for v in json.loads(out)["violations"]}
    assert kinds == {"uncovered"}


def test_parse_error_exit_code(tmp_path, capsys):
    g = tmp_path / "bad.txt"
    g.write_text("3 2\n1 2\n1 2\n")
    code, _, err = run(["exact", g], capsys)
    assert code == 2 and "line 3" in err


def test_config_error_exit_code(capsys):
    code, _, _ = run(["experiment", "--n", 6, "--r", 2, "--p", "0.5", "--trials", 1,
                      "--seed", 0, "--method", "greedy"], capsys)
    assert code == 2


def test_seed_required(capsys):
    with pytest.raises(SystemExit) as info:
        main(["gen", "--n", "5", "--r", "3", "--p", "0.5"])
    assert info.value.code == 2


def test_exact_command(tmp_path, capsys):
    out = tmp_path / "p.json"
    code, text, _ = run(["exact", DATA / "k4_3.txt", "--out", out], capsys)
    summary = json.loads(text)
    assert code == 0 and summary["value"] == 2 and summary["status"] == "optimal"
    assert json.loads(out.read_text())["valid"] is True


def test_exact_nontrivial(tmp_path, capsys):
    g = tmp_path / "k3.txt"
    g.write_text("3 2\n1 2\n1 3\n2 3\n")
    code, text, _ = run(["exact", g, "--nontrivial-only"], capsys)
    assert code == 0 and json.loads(text)["status"] == "infeasible"


def test_turan_command(capsys):
    code, text, _ = run(["turan", "--n", 5, "--uniformity", 2, "--clique", 3], capsys)
    res = json.loads(text)
    assert code == 0 and res["ex"] == 6 and res["exact"]


def test_experiment_csv_identical(tmp_path, capsys):
    args = ["experiment", "--n", 8, "--r", 3, "--p", "0.5", "--trials", 3, "--seed", 7,
            "--method", "greedy", "--zero-runtime"]
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert run(args + ["--out", a], capsys)[0] == 0
    assert run(args + ["--workers", 3, "--out", b], capsys)[0] == 0
    assert a.read_bytes() == b.read_bytes()


def test_check_prefix_bound_command(capsys):
    code, text, _ = run(["check-prefix-bound", "--n", 12, "--r", 3, "--p", "0",
                         "--seed", 1, "--samples", 50], capsys)
    rep = json.loads(text)
    assert code == 0 and rep["violations"] == 0 and rep["samples_drawn"] == 50


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "hypart", "turan", "--n", "4",
                           "--uniformity", "2", "--clique", "3"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["ex"] == 4
