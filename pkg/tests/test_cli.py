import json
import os
import subprocess
import sys

import pytest

from chargedhh.cli import main

HH_21_GOLDEN = (
    '{"comodule":{"coeffs":["1","3","5","10","15","12","7","6","4","1"],"truncation":9},'
    '"config":{"charge":2,"command":"hh","max_degree":9,"method":"complex","r":1,"s":2},'
    '"convention":"absolute",'
    '"dims":{"0":"1","1":"3","2":"6","3":"13","4":"22","5":"28","6":"34","7":"44","8":"54","9":"60"},'
    '"series":{"coeffs":["1","3","6","13","22","28","34","44","54","60"],"truncation":9},'
    '"warnings":[]}\n'
)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_hh_golden_json(capsys):
    code, out, _ = run(capsys, "hh", "--s", "2", "--r", "1", "--charge", "2", "--max-degree", "9", "--format", "json")
    assert code == 0
    assert out == HH_21_GOLDEN


def test_hh_methods_agree(capsys):
    outs = {}
    for method in ("complex", "formula", "closed-form"):
        code, out, _ = run(capsys, "hh", "--s", "2", "--r", "1", "--method", method, "--format", "json")
        assert code == 0
        data = json.loads(out)
        assert data["config"]["max_degree"] == 8
        outs[method] = (data["dims"], data["comodule"])
    assert outs["complex"] == outs["formula"] == outs["closed-form"]
    assert outs["formula"][1]["coeffs"] == ["1", "3", "5", "10", "15", "12", "7", "6", "4"]


def test_hh_conventions_consistent(capsys):
    from chargedhh.poincare import Series, ps_b2

    _, out, _ = run(capsys, "hh", "--s", "1", "--r", "2", "--max-degree", "7", "--format", "json")
    data = json.loads(out)
    absolute = Series.from_json(data["series"])
    como = Series.from_json(data["comodule"])
    assert como * ps_b2(7) == absolute
    assert data["convention"] == "absolute"


def test_hh_charge_one_table(capsys):
    code, out, _ = run(capsys, "hh", "--s", "1", "--r", "0", "--charge", "1", "--max-degree", "3")
    assert code == 0
    rows = [line for line in out.splitlines() if line.startswith("(d=")]
    assert rows == [f"(d={d},c=1): dim 1" for d in range(4)]
    assert "comodule" not in out


def test_basis_examples(capsys):
    _, out, _ = run(capsys, "basis", "--s", "2", "--max-degree", "2", "--charge", "2")
    assert "(d=2,c=2): dim 2" in out.splitlines()
    _, out, _ = run(capsys, "basis", "--s", "1", "--max-degree", "4", "--charge", "1", "--format", "json")
    assert json.loads(out)["dims"] == {str(d): "1" for d in range(5)}
    _, out, _ = run(capsys, "basis", "--s", "0", "--max-degree", "0", "--charge", "0")
    assert "(d=0,c=0): dim 1" in out.splitlines()


def test_basis_monomials(capsys):
    _, out, _ = run(capsys, "basis", "--s", "2", "--max-degree", "2", "--charge", "2", "--show-basis", "--format", "json")
    data = json.loads(out)
    assert len(data["basis"]["2"]) == 2


def test_poincare_examples(capsys):
    _, out, _ = run(capsys, "poincare", "--target", "hom-u2", "--s", "3", "--r", "1")
    assert out.splitlines()[1] == (
        "1 + 4t + 9t^2 + 20t^3 + 36t^4 + 43t^5 + 40t^6 + 38t^7 + 31t^8 + 16t^9 + 7t^10 + 6t^11 + 4t^12 + t^13"
    )
    _, out, _ = run(capsys, "poincare", "--target", "rep-f2-u2", "--r", "0")
    assert out.splitlines()[1] == "1 + 2t + t^2"
    _, out, _ = run(capsys, "poincare", "--target", "hom-u2", "--s", "0", "--r", "0", "--format", "json")
    data = json.loads(out)
    assert data["series"] == {"coeffs": ["1"], "truncation": 0}
    assert data["convention"] == "comodule"


@pytest.mark.parametrize(
    "argv",
    [
        ["hh", "--s", "1", "--charge", "3"],
        ["hh", "--s", "1", "--charge", "1", "--method", "closed-form"],
        ["hh", "--charge", "2"],
        ["hh", "--s", "-1"],
        ["poincare", "--target", "rep-f2-u2", "--s", "3"],
        ["basis", "--s", "1", "--max-degree", "-2"],
        ["verify", "--suite", "nonsense"],
        ["frobnicate"],
    ],
)
def test_usage_errors_exit_2(capsys, argv):
    try:
        code = main(argv)
    except SystemExit as exc:
        code = exc.code
    assert code == 2


def test_truncation_exit_3(capsys):
    code, _, err = run(capsys, "poincare", "--s", "3", "--r", "1", "--max-degree", "5")
    assert code == 3
    assert "below the polynomial degree" in err


def test_verify_reference_suite(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "paper-examples")
    lines = [line for line in out.splitlines() if line.startswith(("PASS", "FAIL"))]
    assert code == 0
    assert len(lines) == 6 and all(line.startswith("PASS") for line in lines)


def test_verify_failure_exit_1(capsys, monkeypatch):
    from chargedhh import checks

    monkeypatch.setitem(checks.KNOWN_U2_POLYNOMIALS, (2, 1), [1, 3, 5, 10, 15, 12, 7, 6, 4, 2])
    code, out, err = run(capsys, "verify", "--suite", "paper-examples")
    assert code == 1
    assert "FAIL  p_u2(2,1)" in out
    assert "(s=2, r=1, charge=2, degree=9)" in err


@pytest.mark.parametrize(
    "argv",
    [
        ["hh", "--s", "2", "--r", "2", "--max-degree", "6", "--format", "json"],
        ["basis", "--s", "3", "--charge", "2", "--show-basis", "--format", "json"],
        ["poincare", "--target", "rep-f2-u2", "--r", "3", "--format", "json"],
        ["verify", "--suite", "paper-examples", "--format", "json"],
    ],
)
def test_byte_identical_across_processes(argv):
    cmd = [sys.executable, "-m", "chargedhh", *argv]
    # different hash seeds: output must not depend on set/dict iteration order
    runs = [
        subprocess.run(cmd, capture_output=True, env={**os.environ, "PYTHONHASHSEED": seed}) for seed in ("1", "2")
    ]
    assert runs[0].returncode == runs[1].returncode == 0
    assert runs[0].stdout == runs[1].stdout
    assert runs[0].stdout.endswith(b"\n")
