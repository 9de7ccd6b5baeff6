import json
import math
import subprocess
import sys

import pytest

from rdpell import cli
from rdpell.cli import run
from rdpell.pell import PellSolution


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_solve_fast_path(capsys):
    code, out, _ = call(capsys, "solve", "13")
    assert code == 0
    assert out == "X=649 Y=180 (fast path: T3-odd, reduced: no)\n"


def test_solve_reduced(capsys):
    assert call(capsys, "solve", "21")[1] == "X=55 Y=12 (fast path: T3-odd, reduced: yes)\n"


def test_solve_without_fast_path(capsys):
    assert call(capsys, "solve", "97")[1] == "X=62809633 Y=6377352 (fast path: none, reduced: no)\n"


def test_solve_output_independent_of_fast_path(capsys):
    for D in range(2, 200):
        if math.isqrt(D) ** 2 == D:
            continue
        fast = call(capsys, "solve", str(D))[1]
        slow = call(capsys, "solve", str(D), "--no-fastpath")[1]
        assert fast.split(" (")[0] == slow.split(" (")[0]
        assert call(capsys, "solve", str(D), "--no-verify")[1] == fast


def test_solve_json(capsys):
    doc = json.loads(call(capsys, "solve", "44", "--json")[1])
    assert (doc["X"], doc["Y"], doc["fast_path"], doc["reduced"]) == (199, 30, "T3-even", False)


@pytest.mark.parametrize("argv", [("solve", "4"), ("solve", "1"), ("cf", "9"), ("classify", "16")])
def test_domain_errors(capsys, argv):
    code, out, err = call(capsys, *argv)
    assert code == 3 and out == ""
    assert "perfect square" in err or ">= 2" in err


def test_cf(capsys):
    assert call(capsys, "cf", "7")[1] == "[2; 1,1,1,4]\n"
    doc = json.loads(call(capsys, "cf", "44", "--json")[1])
    assert doc == {"D": 44, "a0": 6, "period": [1, 1, 1, 2, 1, 1, 1, 12], "r": 7}


def test_classify(capsys):
    assert call(capsys, "classify", "97")[1] == "not covered\n"
    assert "f=3 alpha=1 n=1 sign=+ variant=T1" in call(capsys, "classify", "11")[1]
    doc = json.loads(call(capsys, "classify", "13", "--json")[1])
    # m = 4 splits as 2^0*4, 2^1*2, 2^2*1; all three qualify
    assert [(e["alpha"], e["n"]) for e in doc] == [(0, 4), (1, 2), (2, 1)]
    assert all(e["variant"] == "T3-odd" and e["k"] == 1 and e["f"] == 3 for e in doc)


def test_solutions(capsys):
    out = call(capsys, "solutions", "3", "3")[1]
    assert out == "n=1 X=2 Y=1\nn=2 X=7 Y=4\nn=3 X=26 Y=15\n"
    assert call(capsys, "solutions", "3", "0")[0] == 1


def test_huge_numbers_exact(capsys):
    code, out, _ = call(capsys, "solutions", "2", "6000")
    assert code == 0
    last = out.splitlines()[-1]
    x = last.split()[1][2:]
    assert x.isdigit() and len(x) > 4300


def test_family(capsys):
    assert call(capsys, "family", "C1.vi", "n=2", "d=1")[1] == "D=6 p=5 q=2\n"
    assert call(capsys, "family", "C2.i", "d=3", "sign=+")[1] == "D=60 p=31 q=4\n"
    assert call(capsys, "family", "C1.iii", "d=2", "sign=-")[1] == "D=2 p=3 q=2\n"
    listing = call(capsys, "family", "list")[1]
    assert listing.count("\n") == 15


@pytest.mark.parametrize(
    "argv, code",
    [
        (("family", "C9.x", "d=1"), 1),
        (("family", "C1.vi", "n=2"), 1),
        (("family", "C1.vi", "d=one"), 1),
        (("family", "C1.vi", "q=1", "d=1"), 1),
        (("family", "C1.vi", "d"), 1),
        (("family", "C2.i", "d=1", "sign=-"), 3),
    ],
)
def test_family_errors(capsys, argv, code):
    assert call(capsys, *argv)[0] == code


def test_usage_errors(capsys):
    assert call(capsys)[0] == 1
    assert call(capsys, "solve")[0] == 1
    assert call(capsys, "solve", "x")[0] == 1
    assert call(capsys, "survey", "10", "--csv", "--json")[0] == 1


def test_survey_csv(capsys):
    code, out, _ = call(capsys, "survey", "10", "--csv")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "D,squarefree,covered,variants,X1_digits,period_length"
    assert len(lines) == 7


def test_survey_json_and_file(capsys, tmp_path):
    doc = json.loads(call(capsys, "survey", "10", "--json")[1])
    assert len(doc["records"]) == 6
    target = tmp_path / "out.csv"
    code, out, _ = call(capsys, "survey", "100", "--csv", "-o", str(target))
    assert code == 0 and out == ""
    assert target.read_text().startswith("D,squarefree")


def test_survey_summary(capsys):
    out = call(capsys, "survey", "100", "--verify")[1]
    assert "percent=65.00" in out and "percent=71.11" in out


def test_survey_verify_mismatch(capsys, monkeypatch):
    import rdpell.survey as survey

    monkeypatch.setattr(survey, "fundamental_solution", lambda rad: PellSolution(1, 0, rad.D, 0))
    code, _, err = call(capsys, "survey", "20", "--verify")
    assert code == 2 and "mismatch" in err


def test_verify(capsys):
    code, out, _ = call(capsys, "verify", "150")
    assert code == 0 and "mismatches=0" in out


def test_verify_mismatch(capsys, monkeypatch):
    monkeypatch.setattr(cli, "fundamental_solution", lambda D: PellSolution(1, 0, D, 0))
    code, _, err = call(capsys, "verify", "12")
    assert code == 2 and "mismatch D=" in err


def test_iter_cap_env(capsys, monkeypatch):
    monkeypatch.setenv("PELL_ITER_CAP", "2")
    assert call(capsys, "cf", "7")[0] == 3
    monkeypatch.setenv("PELL_ITER_CAP", "lots")
    assert call(capsys, "cf", "7")[0] == 1


def test_module_entry_point():
    res = subprocess.run(
        [sys.executable, "-m", "rdpell", "cf", "44"], capture_output=True, text=True, check=False
    )
    assert res.returncode == 0
    assert res.stdout == "[6; 1,1,1,2,1,1,1,12]\n"
