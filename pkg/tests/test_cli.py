import json

import pytest

from conftest import golden
from kh_finite.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_unknot_homology(capsys):
    code, out, _ = run(capsys, "homology", "--knot", "0_1", "--format", "json")
    assert code == 0
    assert json.loads(out)["0_1"]["entries"] == [[0, -1, 1, []], [0, 1, 1, []]]


def test_hopf_note(capsys):
    code, out, _ = run(capsys, "homology", "--knot", "hopf")
    assert code == 0
    assert "read as Z/2 torsion: DISAGREES" in out
    assert "read as free rank 2: agrees" in out


def test_reduced_trefoil_json(capsys):
    code, out, _ = run(capsys, "homology", "--knot", "3_1r", "--reduced", "--format", "json")
    assert code == 0
    assert json.loads(out)["3_1r"]["entries"] == golden("3_1r_reduced")["entries"]


def test_pd_input(capsys):
    _, a, _ = run(capsys, "homology", "--pd", "X[1,5,2,4] X[3,1,4,6] X[5,3,6,2]", "--format", "json")
    assert json.loads(a)["pd"]["entries"]


@pytest.mark.parametrize("argv", [
    ("homology", "--pd", "X[1,2"),
    ("homology", "--knot", "nope"),
    ("homology", "--max-crossings", "13"),
    ("cone",),
])
def test_bad_input_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert err.startswith("kh: error:")


def test_empty_table_warns(capsys, caplog):
    code, out, _ = run(capsys, "homology", "--table", "/dev/null")
    assert code == 0
    assert out.strip() == ""
    assert "no diagrams selected" in caplog.text


def test_verify_euler_passes(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "euler")
    assert code == 0
    assert out.rstrip().endswith("0 mismatches")


def test_verify_trefoil_third_cone_reports_mismatch(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "prop4", "--knot", "3_1", "--codim", "3")
    assert code == 1
    assert "rank column (1,0,3,0,3,0,1)" in out
    assert "1 checks, 1 mismatches" in out


def test_jones(capsys):
    code, out, _ = run(capsys, "jones", "--knot", "3_1r")
    assert code == 0
    assert "V = t + t^3 - t^4" in out
    assert "agrees" in out


def test_invariants_csv_and_json(capsys):
    code, out, _ = run(capsys, "invariants", "--knot", "3_1r", "--format", "csv")
    assert code == 0
    header, row = out.strip().splitlines()
    assert header.startswith("knot,jones,u0,u1,u2,u3,u4")
    assert row.split(",")[2:7] == ["1", "0", "-3", "-6", "-29/4"]
    _, out, _ = run(capsys, "invariants", "--knot", "3_1r", "--format", "json")
    assert json.loads(out)[0]["u2"] == "-3"


def test_poincare_model(capsys):
    code, out, _ = run(capsys, "poincare", "--codim", "3")
    assert code == 0
    assert out.strip() == "model(3): chains = 1 + 3*t^2 + 3*t^4 + t^6, euler = 8"


def test_jobs_do_not_change_output(capsys):
    outs = [run(capsys, "homology", "--max-crossings", "5", "--jobs", j, "--format", "json")[1]
            for j in ("1", "2")]
    assert outs[0] == outs[1]


def test_out_file(capsys, tmp_path):
    path = tmp_path / "h.json"
    code, out, _ = run(capsys, "homology", "--knot", "0_1", "--format", "json", "--out", str(path))
    assert code == 0 and out == ""
    assert json.loads(path.read_text())["0_1"]
