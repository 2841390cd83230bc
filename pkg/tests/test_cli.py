import json
import subprocess
import sys

import pytest

from qgammalab.cli import main
from qgammalab.report import CSV_COLUMNS, BoundReport


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_eval_qgamma_at_one(capsys):
    code, out, _ = run(capsys, "eval", "qgamma", "--q", "0.5", "--x", "1")
    assert code == 0
    assert "= 1.0\n" in out and "converged=True" in out


def test_eval_q_bracket(capsys):
    code, out, _ = run(capsys, "eval", "q_bracket", "--q", "0.5", "--x", "2")
    assert code == 0 and out.strip().endswith("= 1.5")


def test_eval_pi_q_json(capsys):
    code, out, _ = run(capsys, "eval", "pi_q", "--q", "0.5", "--format", "json")
    assert code == 0
    (row,) = json.loads(out)
    assert row["value"] == pytest.approx(2.4712868909431793779483, rel=1e-14)


def test_eval_lists_are_cartesian(capsys):
    code, out, _ = run(capsys, "eval", "qpsi", "--q", "0.3,0.7", "--x", "1,2,3", "--format", "csv")
    lines = out.strip().splitlines()
    assert code == 0 and len(lines) == 7
    assert lines[0].startswith("function,q,x,backend,value")
    assert [ln.split(",")[1] for ln in lines[1:]] == ["0.3"] * 3 + ["0.7"] * 3


@pytest.mark.parametrize("argv", [
    ["eval", "jackson", "--q", "0.5", "--x", "2"],
    ["eval", "jackson", "--q", "0.5", "--x", "2", "--form", "0inf"],
    ["eval", "qgamma", "--q", "0.5", "--x", "2", "--backend", "integral"],
])
def test_eval_routes_agree(capsys, argv):
    code, out, _ = run(capsys, *argv, "--format", "json")
    assert code == 0
    assert json.loads(out)[0]["value"] == pytest.approx(1.0, rel=1e-13)


def test_eval_q_exp_and_pochhammer(capsys):
    _, out, _ = run(capsys, "eval", "q_exp", "--q", "0.5", "--t", "0", "--format", "json")
    assert json.loads(out)[0]["value"] == 1.0
    _, out, _ = run(capsys, "eval", "pochhammer_inf", "--q", "0.5", "--a", "0.5", "--format", "json")
    assert json.loads(out)[0]["value"] == pytest.approx(0.28878809508660242127889972, rel=1e-13)


def test_output_file(capsys, tmp_path):
    target = tmp_path / "v.json"
    code, out, _ = run(capsys, "eval", "qgamma", "--q", "0.5", "--x", "3", "--format", "json",
                       "--output", str(target))
    assert code == 0 and out == ""
    assert json.loads(target.read_text())[0]["value"] == pytest.approx(1.5, rel=1e-14)


@pytest.mark.parametrize("argv", [
    ["verify", "sandor", "--q", "1.5"],
    ["eval", "nosuch", "--q", "0.5"],
    ["eval", "qgamma", "--q", "0.5"],
    ["eval", "qgamma", "--q", "0.5", "--x", "-1"],
    ["eval", "qgamma", "--q", "abc", "--x", "1"],
    ["scan", "sandor", "--grid", "log:0:1:5"],
    ["scan", "sandor", "--q", "0.3,0.5"],
    ["verify", "wendel", "--q", "0.5", "--s", "1.5"],
    ["eval", "qgamma", "--q", "0.5", "--x", "1", "--rel-tol", "0"],
    [],
])
def test_usage_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert "usage" in err


def test_nonconvergence_exits_3(capsys):
    code, out, err = run(capsys, "eval", "qgamma", "--q", "0.9", "--x", "2", "--max-terms", "5")
    assert code == 3 and out == ""
    assert "non-convergence" in err


def test_overflow_exits_3(capsys):
    code, _, err = run(capsys, "eval", "qgamma", "--q", "0.99", "--x", "300")
    assert code == 3 and "overflow" in err


def test_verify_sandor_passes(capsys):
    code, out, _ = run(capsys, "verify", "sandor", "--q", "0.5")
    assert code == 0
    assert "1/1 checks passed" in out


def test_verify_reports_violation_with_exit_1(capsys):
    # phi(t) ~ -t^2/8 rounds to exactly 0 this close to the origin, breaking strictness
    code, out, _ = run(capsys, "verify", "phi", "--grid", "log:1e-20:1e-18:3")
    assert code == 1
    assert "FAIL" in out


def test_verify_all_small(capsys):
    code, out, _ = run(capsys, "verify", "all", "--q", "0.1,0.5,0.9")
    assert code == 0
    summary = out.strip().splitlines()[-1]
    done, total = summary.split()[0].split("/")
    assert done == total


def test_verify_json_is_report_schema(capsys):
    code, out, _ = run(capsys, "verify", "sandor", "--q", "0.5", "--grid", "log:1:10:5",
                       "--format", "json")
    assert code == 0
    (d,) = json.loads(out)
    rep = BoundReport.from_dict(d)
    assert rep.passed and len(rep.points) == 5


def test_scan_csv_rows(capsys):
    code, out, _ = run(capsys, "scan", "sandor", "--q", "0.5", "--grid", "log:0.01:100:400",
                       "--format", "csv")
    lines = out.splitlines()
    assert code == 0 and len(lines) == 401
    assert lines[0] == ",".join(CSV_COLUMNS)


def test_scan_json_fields(capsys):
    code, out, _ = run(capsys, "scan", "theorem2", "--q", "0.25", "--format", "json")
    rows = json.loads(out)
    assert code == 0 and isinstance(rows, list) and len(rows) == 500
    assert set(rows[0]) == set(CSV_COLUMNS)


def test_scan_is_byte_identical(capsys, tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for target in (a, b):
        assert main(["scan", "sandor", "--q", "0.5", "--output", str(target)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_sharpness_command(capsys):
    code, out, _ = run(capsys, "sharpness", "theorem2", "--q", "0.5")
    assert code == 0 and "PASS" in out
    code, out, _ = run(capsys, "sharpness", "sandor", "--q", "0.5", "--format", "json")
    assert code == 0 and json.loads(out)[0]["pass"] is True


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "qgammalab", "eval", "q_bracket", "--q", "0.25",
                           "--x", "0.5"], capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert float(proc.stdout.split("=")[-1]) == pytest.approx(2 / 3, rel=1e-15)
