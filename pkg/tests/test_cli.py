from __future__ import annotations

import json
import subprocess
import sys

import pytest

from branchkit.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_constant(capsys):
    code, out, _ = run(capsys, "constant", "--l2", "2", "--l3", "8", "--delta", "0", "--m", "5")
    assert code == 0
    assert out.strip() == '{"parity":-1,"scalar":"3","schema":"branchkit/1"}'


def test_constant_non_critical(capsys):
    code, out, err = run(capsys, "constant", "--l2", "2", "--l3", "8", "--m", "3")
    assert code == 2 and out == "" and "not critical" in err


def test_critical(capsys):
    code, out, _ = run(capsys, "critical", "--l2", "2", "--l3", "8", "--m", "6")
    data = json.loads(out)
    assert code == 0 and data["m"] == [5, 6] and data["agree"]
    assert data["at"]["main"] == {"parity": 1, "scalar": "-3*i"}


def test_branch(capsys):
    code, out, _ = run(capsys, "branch", "--w1p", "1", "--w1m", "1", "--w2", "1")
    data = json.loads(out)
    assert data["xi2"] == [[0, 1], [1, 0], [1, 1], [2, 0]]
    assert data["dimension_audit"] == data["dim_L3"] == 8


def test_gamma(capsys):
    _, out, _ = run(capsys, "gamma", "--l2", "2", "--l3", "8")
    data = json.loads(out)
    assert data["gamma_at_s_minus_3/2"] == "Gamma_C(s - 4) * Gamma_C(s - 2) * Gamma_C(s)"
    assert data["epsilon_exponent"] == 1


def test_matrices(capsys):
    _, out, _ = run(capsys, "pmatrix", "--lambda3", "5")
    rows = json.loads(out)["rows"]
    assert len(rows) == 11 and all(len(r) == 7 for r in rows)
    _, out, _ = run(capsys, "mmatrix", "--lambda", "1", "--cayley", "0,0,0")
    assert json.loads(out)["matrix"] == [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]]
    code, _, _ = run(capsys, "mmatrix", "--lambda", "1", "--cayley", "1,2")
    assert code == 2


def test_iwasawa(capsys):
    _, out, _ = run(capsys, "iwasawa", "--matrix", "2 0 0 0 1 0 0 0 1")
    data = json.loads(out)
    assert data["coords"] == {"y1": 1.0, "y2": 2.0, "x1": 0.0, "x2": 0.0, "x3": 0.0}
    code, _, err = run(capsys, "iwasawa", "--matrix", "0 0 0 0 0 0 0 0 0")
    assert code == 2 and "singular" in err


def test_unknown_suite(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--suite", "nope"])
    assert exc.value.code == 2
    assert "usage" in capsys.readouterr().err


def test_verify_deterministic_and_atomic(capsys, tmp_path):
    path = tmp_path / "report.json"
    code, first, _ = run(capsys, "verify", "--suite", "lfactors", "--seed", "3", "--json", str(path))
    _, second, _ = run(capsys, "verify", "--suite", "lfactors", "--seed", "3")
    assert code == 0 and first == second
    assert path.read_text() == first
    assert [p.name for p in tmp_path.iterdir()] == ["report.json"]
    data = json.loads(first)["reports"][0]
    assert data["passed"] == data["count"] and data["failures"] == []


def test_verify_unwritable(capsys, tmp_path):
    code, _, err = run(capsys, "verify", "--suite", "lfactors", "--json", str(tmp_path / "missing" / "r.json"))
    assert code == 2 and "cannot write" in err


def test_verify_geom_reports_reference_form_failure(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "geom")
    data = json.loads(out)["reports"][0]
    assert code == 1
    assert [f["case"] for f in data["failures"]] == ["iota omega_pm2"]


def test_verify_escoh_includes_closed_forms(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "escoh", "--max-weight", "5")
    assert code == 0
    assert json.loads(out)["reports"][0]["count"] > 0


def test_console_entry_point():
    res = subprocess.run([sys.executable, "-m", "branchkit", "critical", "--l2", "4", "--l3", "6"],
                         capture_output=True, text=True, check=True)
    assert json.loads(res.stdout)["m"] == [5, 6]


def test_escoh_battery_names_the_closed_form_cases():
    from branchkit.checks import run_suite

    names = {c.name for c in run_suite("escoh", 5, 1).cases}
    assert {"B.1 lam=5", "B.2 lam=5", "B.3 lam=5"} <= names
