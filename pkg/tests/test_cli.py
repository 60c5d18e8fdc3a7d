import json
import subprocess
import sys

import pytest

from uvblab.cli import hint_matches, main, parse_vector, UsageError


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_norm(capsys, tfx):
    assert run(capsys, "norm", "--space", "lp:p=2", "--vec", "3,4")[:2] == (0, "5\n")
    code, out, _ = run(capsys, "norm", "--space", "tsirelson:theta=0.5", "--vec", "1,1,1,1")
    assert float(out) == tfx["lambda"][3]
    code, out, _ = run(capsys, "norm", "--space", "lp:p=3", "--vec", "1,1")
    assert out.strip() == f"{2 ** (1 / 3):.12g}"


@pytest.mark.parametrize(
    "argv,token",
    [
        (["norm", "--space", "lp:p=0", "--vec", "1"], "lp:p=0"),
        (["norm", "--space", "lp:p=2", "--vec", "1,abc"], "abc"),
        (["norm", "--space", "banach", "--vec", "1"], "banach"),
        (["fit-p", "--space", "c0", "--N", "3"], "--N 3"),
    ],
)
def test_errors_name_the_token(capsys, argv, token):
    code, _, err = run(capsys, *argv)
    assert code != 0 and token in err


def test_argparse_rejects_bad_sampler(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["ktest", "--space", "c0", "--sampler", "cauchy"])
    assert exc.value.code != 0
    assert "cauchy" in capsys.readouterr().err


def test_parse_vector():
    assert parse_vector("1, -2.5,3e1") == [1.0, -2.5, 30.0]
    with pytest.raises(UsageError):
        parse_vector("1,,2")


def test_phi_tables(capsys, tfx):
    code, out, _ = run(capsys, "phi", "--space", "lp:p=1", "--N", "8")
    rows = [r.split(",") for r in out.strip().splitlines()[1:]]
    assert [float(r[2]) for r in rows] == list(range(1, 9))
    code, out, _ = run(capsys, "phi", "--space", "c0", "--N", "8", "--format", "json")
    assert [r["phi"] for r in json.loads(out)] == [1.0] * 8
    code, out, _ = run(capsys, "phi", "--space", "tsirelson", "--N", "12", "--format", "json")
    assert [r["phi"] for r in json.loads(out)] == tfx["phi_12"]


def test_fit_p(capsys):
    code, out, _ = run(capsys, "fit-p", "--space", "lp:p=3", "--N", "64")
    p_hat = float(out.splitlines()[0].split()[1])
    assert abs(p_hat - 3) <= 1e-3
    code, out, _ = run(capsys, "fit-p", "--space", "c0", "--N", "16", "--format", "json")
    assert json.loads(out)["p_hat"] == "inf"


def test_ktest(capsys):
    code, out, _ = run(capsys, "ktest", "--space", "lp:p=2", "--trials", "1000", "--seed", "7")
    lines = dict(l.split() for l in out.strip().splitlines())
    assert float(lines["K_upper"]) == pytest.approx(1.0, abs=1e-9)
    assert float(lines["K_lower"]) == pytest.approx(1.0, abs=1e-9)


def test_signavg(capsys):
    code, out, _ = run(capsys, "signavg", "--space", "lp:p=1", "--N", "16")
    rows = [r.split(",") for r in out.strip().splitlines()[1:]]
    assert [float(r[1]) for r in rows] == list(range(1, 17))


def test_hint_matching():
    assert hint_matches("consistent-with-lp(2.000)", "lp")
    assert hint_matches("consistent-with-lp(2.000)", "lp(2)")
    assert not hint_matches("consistent-with-lp(2.000)", "lp(3)")
    assert hint_matches("consistent-with-c0", "c0")
    assert not hint_matches("consistent-with-c0", "lp")
    assert hint_matches("inconsistent-with-(2)", "inconsistent")
    assert hint_matches("inconclusive", "inconclusive")


def test_suite_writes_report_and_csv(tmp_path, capsys):
    out = tmp_path / "r.json"
    code, _, err = run(capsys, "suite", "--space", "lp:p=1.5", "--N", "16", "--trials", "50",
                       "--out", str(out), "--csv-dir", str(tmp_path / "csv"), "--assert-class", "lp")
    assert code == 0 and "consistent-with-lp" in err
    d = json.loads(out.read_text())
    assert d["schema_version"] == 1 and d["space"] == "lp:p=1.5"
    assert d["config"]["trials"] == 50 and d["config"]["seed"] == 0
    assert (tmp_path / "csv" / "lambda_grid.csv").read_text().startswith("m,n,ratio\n")


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "uvblab", "norm", "--space", "c0", "--vec", "1,-7,2"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout == "7\n"
