import csv
import io
import json
import subprocess
import sys

import pytest
from scipy import special

from gjtrig import cli


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_usage_errors_exit_2():
    for argv in ([], ["bogus"], ["verify", "--suite", "nope"], ["eval", "gj", "--u", "1"],
                 ["eval", "gj", "--u", "0.1", "--k1", "0.2", "--k2", "0.5"], ["sample", "--m", "12"]):
        code, out, err = call(*argv)
        assert code == 2, argv
        assert err and not out
    assert "usage" in call("bogus")[2]


def test_eval_gj_origin():
    code, out, _ = call("eval", "gj", "--u", "0", "--k1", "0.8", "--k2", "0.3")
    rec = json.loads(out)
    assert code == 0 and rec["schema"] == 1
    assert (rec["s"], rec["c"], rec["d1"], rec["d2"]) == (0.0, 1.0, 1.0, 1.0)


def test_eval_jacobi_K_F_against_scipy():
    rec = json.loads(call("eval", "jacobi", "--u", "0.7", "--k", "0.8")[1])
    sn, cn, dn, _ = special.ellipj(0.7, 0.64)
    assert (rec["sn"], rec["cn"], rec["dn"]) == pytest.approx((sn, cn, dn), abs=1e-13)
    rec = json.loads(call("eval", "K", "--k", "0.5")[1])
    assert rec["K"] == pytest.approx(special.ellipk(0.25), rel=1e-14)
    rec = json.loads(call("eval", "F", "--phi", "0.9", "--k", "0.5")[1])
    assert rec["F"] == pytest.approx(special.ellipkinc(0.9, 0.25), rel=1e-13)
    assert call("eval", "K", "--k", "1.0")[0] == 2


def test_verify_pass_fail_and_determinism():
    code, a, _ = call("verify", "--suite", "elliptic", "--trials", "20", "--seed", "4")
    assert code == 0
    rec = json.loads(a)
    assert rec["schema"] == 1 and rec["passed"]
    assert "wall_time" not in a
    assert call("verify", "--suite", "elliptic", "--trials", "20", "--seed", "4")[1] == a
    code, out, _ = call("verify", "--suite", "gj", "--trials", "10", "--tol-scale", "1e-9")
    assert code == 1 and not json.loads(out)["passed"]


def test_verify_uniformize_target():
    code, out, _ = call("verify", "uniformize", "--suite", "gj-id", "--trials", "3", "--tol", "1e-8")
    rec = json.loads(out)
    assert code == 0
    assert [s["suite"] for s in rec["suites"]] == ["uniformize-gj-id"]
    assert all(c["tolerance"] == 1e-8 for c in rec["suites"][0]["checks"].values())


def test_simulate_top3_csv(tmp_path):
    path = tmp_path / "top3.csv"
    code, out, _ = call("simulate", "top3", "--t1", "2", "--samples", "5", "--out", str(path))
    assert code == 0 and out == ""
    raw = path.read_bytes()
    assert b"\r" not in raw and raw.endswith(b"\n")
    rows = list(csv.reader(io.StringIO(raw.decode())))
    assert rows[0][:4] == ["t", "M1", "M2", "M3"]
    assert len(rows) == 6
    err_col = rows[0].index("closed_form_error")
    assert max(float(r[err_col]) for r in rows[1:]) < 1e-8
    assert all("," not in c and ";" not in c for r in rows for c in r)


def test_simulate_dell_complex_columns():
    code, out, _ = call("simulate", "dell", "--t1", "1", "--samples", "3")
    header = out.splitlines()[0].split(",")
    assert code == 0
    assert header[1:3] == ["x1_re", "x1_im"]


def test_simulate_params_inline_and_bad():
    code, out, _ = call("simulate", "top3", "--t1", "1", "--samples", "2", "--params", '{"M0": [0.1, 1.0, 1.2]}')
    assert code == 0 and out.splitlines()[1].startswith("0.0,0.1,")
    assert call("simulate", "top3", "--params", "/nonexistent.json")[0] == 2
    assert call("simulate", "top3", "--params", "{not json")[0] == 2


def test_sample():
    one = json.loads(call("sample", "--m", "4", "--seed", "2")[1])
    assert one["m"] == 4 and len(one["cos"]) == 6
    many = json.loads(call("sample", "--m", "3", "--seed", "2", "--count", "3")[1])
    assert isinstance(many, list) and len(many) == 3
    assert call("sample", "--m", "4", "--seed", "2")[1] == call("sample", "--m", "4", "--seed", "2")[1]


def test_console_entry_point():
    p = subprocess.run([sys.executable, "-m", "gjtrig.cli", "eval", "K", "--k", "0"], capture_output=True, text=True)
    if p.returncode != 0 and "No module named" in p.stderr:
        pytest.skip("module is not runnable with -m")
    assert p.returncode == 0
    rec = json.loads(p.stdout)
    assert rec["K"] == pytest.approx(1.5707963267948966)
    assert rec["Kp"] is None
    p = subprocess.run([sys.executable, "-m", "gjtrig.cli", "nope"], capture_output=True, text=True)
    assert p.returncode == 2 and "usage" in p.stderr
