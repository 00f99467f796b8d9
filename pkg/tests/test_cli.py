import csv
import io
import json
import math
import os
import subprocess
import sys

import numpy as np
import pytest

from lipinterp import cli
from lipinterp import construction as cons


def run(args, capsys):
    code = cli.main(args)
    out, err = capsys.readouterr()
    return code, out, err


def rows(text):
    r = list(csv.reader(io.StringIO(text)))
    return r[0], np.array([[float(v) for v in row] for row in r[1:]])


# -- tables ------------------------------------------------------------------------


def test_tables_examples(capsys):
    code, out, _ = run(["tables", "--p", "2", "--N", "3", "--n-table-max", "5"], capsys)
    assert code == 0
    t = json.loads(out)["tables"]
    assert t["m"] == [0, 8, 72, 584, 4680, 37448]
    assert t["h_over_w"][2] == pytest.approx(math.sqrt(2) - 1, rel=1e-12)
    assert all(c["ok"] for c in t["certificates"].values())
    code, out, _ = run(["tables", "--p", "2", "--N", "1"], capsys)
    assert json.loads(out)["tables"]["lambda"][0] == 0.0


def test_tables_overflow_exit_code(capsys):
    code, _, err = run(["tables", "--p", "2", "--n-table-max", "100000"], capsys)
    assert code == 2 and "max feasible" in err


# -- plotdata ----------------------------------------------------------------------


def test_plotdata_e_polygon(capsys):
    code, out, _ = run(["plotdata", "E", "--p", "2", "--N", "2", "--n", "2"], capsys)
    assert code == 0
    head, V = rows(out)
    assert head == ["x", "y"] and V.shape == (5, 2)
    tab = cons.build_tables(2.0, 2)
    assert cons.shoelace_area(V) == pytest.approx(2 * tab.w, rel=1e-12)


def test_plotdata_gamma_increasing(capsys):
    code, out, _ = run(["plotdata", "gamma", "--p", "2", "--N", "2"], capsys)
    head, V = rows(out)
    assert head == ["x", "gamma"]
    assert np.all(np.diff(V[:, 0]) > 0) and np.all(np.diff(V[:, 1]) > 0)


@pytest.mark.parametrize("t", ["λ₂", "lambda2", "lambda_2"])
def test_plotdata_profile_nodes(capsys, t):
    code, out, _ = run(["plotdata", "g", "--p", "2", "--N", "2", "--t", t], capsys)
    assert code == 0
    _, V = rows(out)
    tab = cons.build_tables(2.0, 2)
    np.testing.assert_array_equal(V[:, 0], [0.0, tab.w, tab.w + tab.h[1], tab.w + tab.h[0]])
    assert V[0, 1] == V[1, 1] == tab.lam[2]


def test_plotdata_sn_and_g_polygon(capsys):
    code, out, _ = run(["plotdata", "sN", "--p", "2", "--N", "3"], capsys)
    head, V = rows(out)
    assert head == ["x", "S_N"] and V[-1, 0] == 1.0 and V[-1, 1] == 0.0
    assert V[0, 1] == pytest.approx(cons.build_tables(2.0, 3).lam[3], rel=1e-12)
    code, out, _ = run(["plotdata", "G", "--p", "2", "--N", "2", "--n", "3"], capsys)
    _, V = rows(out)
    assert cons.shoelace_area(V) == pytest.approx(7 * cons.build_tables(2.0, 2).w, rel=1e-12)


def test_plotdata_out_of_range(capsys):
    code, _, err = run(["plotdata", "E", "--t", "1e30"], capsys)
    assert code == 2 and "error" in err


# -- verify ------------------------------------------------------------------------


def test_verify_t3_reports_threshold(capsys):
    code, out, _ = run(["verify", "t3", "--p", "2", "--sample-size", "32"], capsys)
    assert code == 0
    rep = json.loads(out)
    assert rep["schema"] == 1 and rep["all_hard_checks_passed"]
    wit = next(c for c in rep["checks"] if c["check"] == "noncompact_witness")
    assert wit["certificate"]["nu_p"] == 16


def test_verify_t1_q_inf_separation(capsys):
    code, out, _ = run(["verify", "t1", "--p", "2", "--q", "inf", "--sample-size", "16"], capsys)
    assert code == 0
    rep = json.loads(out)
    assert rep["config"]["q"] == "inf"
    wit = next(c for c in rep["checks"] if c["check"] == "noncompact_witness")
    assert wit["certificate"]["required_lorentz_separation"] == 1.0
    assert wit["certificate"]["gamma_p"] == 1.0


def test_verify_is_deterministic(capsys):
    args = ["verify", "t5", "--sample-size", "16", "--seed", "3"]
    _, a, _ = run(args, capsys)
    _, b, _ = run(args, capsys)
    assert a == b


def test_verify_csv_format(capsys):
    code, out, _ = run(["verify", "t4", "--sample-size", "16", "--format", "csv"], capsys)
    assert code == 0
    r = list(csv.reader(io.StringIO(out)))
    assert r[0] == ["check", "operator", "verdict", "margin", "params"]
    assert all(row[2] in ("pass", "info") for row in r[1:])


def test_output_env_var(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv(cli.OUTPUT_ENV, str(tmp_path))
    code, out, _ = run(["tables", "--p", "2", "--N", "2"], capsys)
    assert code == 0 and out == ""
    files = os.listdir(tmp_path)
    assert files == ["tables-p2.0-N2.json"]
    json.loads((tmp_path / files[0]).read_text())


def test_explicit_output_path(tmp_path, capsys):
    dest = tmp_path / "e.csv"
    code, _, _ = run(["plotdata", "E", "--output", str(dest)], capsys)
    assert code == 0 and dest.read_text().startswith("x,y\n")


def test_unwritable_output(tmp_path, capsys):
    code, _, err = run(["tables", "--output", str(tmp_path / "missing" / "x.json")], capsys)
    assert code == 3 and "cannot write" in err


def test_unknown_operator_is_rejected(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["verify", "t9"])
    assert exc.value.code == 2


def test_failed_checks_give_exit_one(monkeypatch, capsys):
    from lipinterp import verify as V

    def failing(*a, **k):
        return V.CheckResult("lipschitz_sweep", {}, {}, -1.0, "fail")

    monkeypatch.setattr(V, "lipschitz_sweep", failing)
    code, out, _ = run(["verify", "t4", "--sample-size", "8"], capsys)
    assert code == 1 and json.loads(out)["all_hard_checks_passed"] is False


def test_module_entry_point():
    res = subprocess.run(
        [sys.executable, "-m", "lipinterp", "plotdata", "gamma", "--N", "1"],
        capture_output=True, text=True, check=True,
    )
    assert res.stdout.startswith("x,gamma\n")
