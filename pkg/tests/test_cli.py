import json
import subprocess
import sys

import pytest

from gerstenhaber.cli import main
from gerstenhaber.hopf import taft
from gerstenhaber.scalars import cyclotomic


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_cohomology(capsys):
    code, out, _ = run(capsys, "cohomology", "--algebra", "taft:3", "--maxdeg", "8")
    assert code == 0
    assert json.loads(out)["dims"] == [1, 0, 1, 0, 1, 0, 1, 0, 1]
    code, out, _ = run(capsys, "cohomology", "--algebra", "taft:3", "--maxdeg", "4", "--format", "csv")
    assert out.splitlines() == ["degree,dim", "0,1", "1,0", "2,1", "3,0", "4,1"]


def test_cohomology_prime_field(capsys):
    code, out, _ = run(capsys, "cohomology", "--algebra", "taft:3", "--field", "prime:7", "--maxdeg", "4")
    assert code == 0 and json.loads(out)["dims"] == [1, 0, 1, 0, 1]


def test_bracket(capsys):
    code, out, _ = run(capsys, "bracket", "--algebra", "taft_tensor:2,2", "--maxdeg", "4", "--format", "csv")
    assert code == 0
    rows = out.splitlines()
    assert rows[0] == "i,j,deg_i,deg_j,degree,cocycle,class"
    assert len(rows) > 1 and all(r.endswith(",zero") for r in rows[1:])
    code, out, _ = run(capsys, "bracket", "--algebra", "group_zp:3", "--maxdeg", "4")
    doc = json.loads(out)
    assert code == 0 and doc["all_zero"] and doc["options"]["diagonal"] == "symmetrized"


def test_verify_and_induce(capsys):
    code, out, _ = run(capsys, "verify", "--algebra", "taft:2", "--suite", "all", "--maxdeg", "4")
    doc = json.loads(out)
    assert code == 0 and all(r["passed"] for r in doc["results"])
    suites = {r["suite"] for r in doc["results"]}
    assert {"resolution", "diagonal", "brackets", "functor", "properties"} <= suites
    code, out, _ = run(capsys, "induce", "--algebra", "taft:2", "--maxdeg", "4")
    doc = json.loads(out)
    assert code == 0 and all(e["residual_zero"] for e in doc["transport"])
    assert doc["eckmann_shapiro"]["passed"]


def test_file_algebra(tmp_path, capsys):
    path = tmp_path / "t2.json"
    path.write_text(taft(2, cyclotomic(2)).dumps())
    code, out, _ = run(capsys, "bracket", "--algebra", f"file:{path}", "--maxdeg", "4")
    doc = json.loads(out)
    assert code == 0 and doc["dims"] == [1, 0, 1, 0, 1] and doc["all_zero"]


@pytest.mark.parametrize("argv", [
    ["cohomology", "--algebra", "nonsense:3"],
    ["cohomology", "--algebra", "taft:1"],
    ["cohomology", "--algebra", "taft:3", "--field", "prime:3"],
    ["cohomology", "--algebra", "taft:3", "--field", "cyclotomic:4"],
    ["bracket", "--algebra", "taft:3", "--diagonal", "symmetrized"],
    ["induce", "--algebra", "taft:4"],
    ["cohomology", "--algebra", "file:/nonexistent/algebra.json"],
])
def test_config_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert err.startswith("error:")


def test_output_file(tmp_path, capsys):
    out = tmp_path / "report.json"
    code, stdout, _ = run(capsys, "bracket", "--algebra", "taft:2", "--maxdeg", "4", "--output", str(out))
    assert code == 0 and stdout == ""
    assert json.loads(out.read_text())["all_zero"]


def test_byte_identical_reruns(tmp_path):
    argv = ["bracket", "--algebra", "taft:3", "--maxdeg", "4", "--diagonal", "generic",
            "--lifting", "generic", "--seed", "17"]
    outs = []
    for k in range(2):
        target = tmp_path / f"run{k}.json"
        subprocess.run([sys.executable, "-m", "gerstenhaber.cli", *argv, "--output", str(target)], check=True)
        outs.append(target.read_bytes())
    assert outs[0] == outs[1]
