"""Command line surface: exact output, exit codes, policy resolution."""

import csv
import io
import json
import os
import subprocess
import sys

import pytest

CMD = [sys.executable, "-m", "elemhyp"]


def run(*args, env=None):
    merged = dict(os.environ)
    merged.pop("ELEMHYP_REL_TOL", None)
    if env:
        merged.update(env)
    return subprocess.run(CMD + list(args), capture_output=True, text=True,
                          env=merged)


def test_pinned_closed_form_output():
    r = run("hyp2f1", "--m", "1", "--n", "2", "--p", "3", "--x", "0.5",
            "--method", "closed")
    assert r.returncode == 0
    assert r.stdout == '{"value": 1.5451774444795625}\n'


def test_pinned_moment_output():
    r = run("moment", "--operator", "gmkz", "--n", "2", "--rop", "3",
            "--alpha", "2", "--beta", "1", "--r", "1", "--x", "0.5")
    assert r.returncode == 0
    assert r.stdout == '{"value": 0.625}\n'


def test_pinned_heun_output():
    r = run("heun", "--m", "2", "--n", "-1", "--p", "4", "--x", "0.6")
    assert r.returncode == 0
    assert r.stdout == ('{"value": 0.7, "termination": 1, '
                        '"normalization": 1.0, "terms_used": 1, '
                        '"converged": true}\n')


def test_runs_are_bit_reproducible():
    args = ("verify", "--suite", "heun")
    assert run(*args).stdout == run(*args).stdout


def test_hyp2f1_trivial_argument():
    r = run("hyp2f1", "--m", "1", "--n", "2", "--p", "2", "--x", "0")
    assert r.returncode == 0
    assert r.stdout == '{"value": 1.0}\n'


def test_hyp2f1_compare_route():
    r = run("hyp2f1", "--m", "2", "--n", "-2.5", "--p", "5", "--x", "0.4",
            "--compare")
    assert r.returncode == 0
    doc = json.loads(r.stdout)
    assert set(doc) == {"value", "series", "rel_err"}
    assert doc["rel_err"] < 1e-10


def test_hyp2f1_parameter_error_exits_2():
    r = run("hyp2f1", "--m", "3", "--n", "2", "--p", "2", "--x", "0.5")
    assert r.returncode == 2
    assert r.stdout == ""
    assert "error:" in r.stderr


def test_hyp2f1_variant_requires_closed_method():
    r = run("hyp2f1", "--m", "1", "--n", "2", "--p", "3", "--x", "0.5",
            "--variant", "1")
    assert r.returncode == 2


def test_hyp2f1_variant_must_fit_the_shape():
    r = run("hyp2f1", "--m", "1", "--n", "2", "--p", "3", "--x", "0.5",
            "--method", "closed", "--variant", "A")
    assert r.returncode == 2
    assert "1, 2 or 3" in r.stderr


def test_hyp2f1_closed_rejects_the_origin():
    r = run("hyp2f1", "--m", "1", "--n", "2", "--p", "3", "--x", "0",
            "--method", "closed")
    assert r.returncode == 2


def test_hyp2f1_series_cap_exits_1():
    r = run("hyp2f1", "--m", "1", "--n", "2", "--p", "6", "--x", "0.02",
            "--method", "series", "--max-terms", "3")
    assert r.returncode == 1
    assert "converge" in r.stderr


def test_env_tolerance_is_honored():
    args = ("hyp2f1", "--m", "1", "--n", "3.75", "--p", "3", "--x", "0.9",
            "--method", "series")
    loose = run(*args, env={"ELEMHYP_REL_TOL": "1e-3"})
    tight = run(*args)
    assert loose.returncode == tight.returncode == 0
    assert loose.stdout != tight.stdout


def test_flag_overrides_env_tolerance():
    args = ("hyp2f1", "--m", "1", "--n", "3.75", "--p", "3", "--x", "0.9",
            "--method", "series")
    forced = run(*args, "--rel-tol", "1e-12", env={"ELEMHYP_REL_TOL": "1e-3"})
    default = run(*args)
    assert forced.stdout == default.stdout


def test_malformed_env_tolerance_warns_and_proceeds():
    r = run("hyp2f1", "--m", "1", "--n", "2", "--p", "3", "--x", "0.5",
            env={"ELEMHYP_REL_TOL": "abc"})
    assert r.returncode == 0
    assert r.stdout == '{"value": 1.5451774444795625}\n'
    assert "ELEMHYP_REL_TOL" in r.stderr


def test_bad_tolerance_flag_exits_2():
    r = run("hyp2f1", "--m", "1", "--n", "2", "--p", "3", "--x", "0.5",
            "--rel-tol", "-1")
    assert r.returncode == 2


def test_moment_order_zero():
    r = run("moment", "--operator", "mkz", "--n", "5", "--r", "0",
            "--x", "0.3")
    assert r.returncode == 0
    assert r.stdout == '{"value": 1.0}\n'


def test_moment_both_routes():
    r = run("moment", "--operator", "mkz", "--n", "1", "--r", "2",
            "--x", "0.5", "--route", "both")
    assert r.returncode == 0
    doc = json.loads(r.stdout)
    assert set(doc) == {"closed", "series", "rel_err"}
    assert doc["rel_err"] < 1e-10


def test_moment_log_operator_supports_order_two_only():
    r = run("moment", "--operator", "ln", "--n", "2", "--r", "3", "--x", "0.5")
    assert r.returncode == 2
    r = run("moment", "--operator", "ln", "--n", "2", "--r", "2", "--x", "0.5",
            "--route", "both")
    assert r.returncode == 0
    assert json.loads(r.stdout)["rel_err"] < 1e-9


def test_moment_gmkz_closed_requires_a_known_shape():
    r = run("moment", "--operator", "gmkz", "--n", "2", "--r", "2",
            "--x", "0.4", "--alpha", "1.5", "--beta", "0", "--rop", "2")
    assert r.returncode == 2


def test_fnj_symbolic_document():
    r = run("fnj", "--n", "2", "--j", "2", "--emit-symbolic")
    assert r.returncode == 0
    assert r.stdout == ('{"n": 2, "j": 2, "terms": [{"basis": "pow_ratio", '
                        '"i": 1, "num": "1", "den": "2"}, {"basis": "log", '
                        '"num": "1", "den": "2"}]}\n')


def test_fnj_numeric_route():
    r = run("fnj", "--n", "2", "--j", "2", "--x", "0.5")
    assert r.returncode == 0
    doc = json.loads(r.stdout)
    assert doc["n"] == 2 and doc["j"] == 2
    assert doc["rel_err"] < 1e-10


def test_fnj_validation():
    assert run("fnj", "--n", "1", "--j", "2", "--emit-symbolic").returncode == 2
    assert run("fnj", "--n", "3", "--j", "4").returncode == 2


def test_heun_unconverged_truncation_exits_1():
    r = run("heun", "--m", "1", "--n", "0.5", "--p", "3", "--x", "0.2",
            "--terms", "40")
    assert r.returncode == 1
    doc = json.loads(r.stdout)
    assert doc["termination"] is None
    assert doc["converged"] is False
    assert doc["terms_used"] == 40


def test_heun_normalized_and_residual_routes():
    r = run("heun", "--m", "2", "--n", "-3", "--p", "5", "--x", "0.3",
            "--normalized", "--check-ode")
    assert r.returncode == 0
    doc = json.loads(r.stdout)
    assert doc["termination"] == 2
    assert doc["ode_residual"] < 1e-6
    raw = run("heun", "--m", "2", "--n", "-3", "--p", "5", "--x", "0.3")
    assert json.loads(raw.stdout)["value"] == pytest.approx(
        doc["value"] * doc["normalization"], rel=1e-13)


def test_verify_csv_report():
    r = run("verify", "--suite", "basis", "--format", "csv")
    assert r.returncode == 0
    rows = list(csv.reader(io.StringIO(r.stdout)))
    assert rows[0] == ["operation", "inputs", "result", "oracle", "rel_err",
                       "pass"]
    assert len(rows) > 100
    assert all(row[5] == "true" for row in rows[1:])
    for row in rows[1:]:
        json.loads(row[1])  # inputs column holds a JSON object
        float(row[2]), float(row[3]), float(row[4])


def test_verify_out_file_keeps_stdout_clean(tmp_path):
    out = tmp_path / "report.json"
    r = run("verify", "--suite", "mkz", "--out", str(out))
    assert r.returncode == 0
    assert r.stdout == ""
    doc = json.loads(out.read_text())
    assert doc["summary"]["passed"] == doc["summary"]["total"] > 0


def test_unknown_subcommand_exits_2():
    assert run("frobnicate").returncode == 2
