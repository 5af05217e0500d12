import csv
import json
import math

import pytest

from legheights.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_weil(capsys):
    code, out, _ = run_cli(capsys, "weil", "4", "6")
    assert code == 0
    assert "[2:3]" in out
    assert f"{math.log(3):.6f}"[:8] in out


def test_weil_fraction_coords(capsys):
    code, out, _ = run_cli(capsys, "weil", "1/2", "1/3")
    assert code == 0
    assert "[3:2]" in out


def test_nt(capsys):
    code, out, _ = run_cli(capsys, "nt", "--lambda", "-6", "--point", "2,4")
    assert code == 0
    fields = dict(line.split(None, 1) for line in out.strip().splitlines())
    assert float(fields["nt_height"]) == pytest.approx(0.4965545807, abs=1e-8)
    assert float(fields["error_bound"]) <= 1e-8


def test_nt_invalid_point(capsys):
    code, _, err = run_cli(capsys, "nt", "--lambda", "-6", "--point", "1,1")
    assert code == 2
    assert "error" in err


def test_nt_bad_lambda(capsys):
    code, _, err = run_cli(capsys, "nt", "--lambda", "0", "--point", "0,0")
    assert code == 2


def test_nt_nonconvergence_exit_code(capsys):
    code, _, err = run_cli(
        capsys, "nt", "--lambda", "-6", "--point", "2,4", "--tol", "1e-300"
    )
    assert code == 3
    assert "non-convergence" in err


def test_periods(capsys):
    code, out, _ = run_cli(capsys, "periods", "--lambda", "1/2")
    assert code == 0
    assert "tau" in out and "1j" in out.replace(" ", "")


def test_periods_outside_sigma(capsys):
    code, _, err = run_cli(capsys, "periods", "--lambda", "-6")
    assert code == 2


def test_lambda_check(capsys):
    code, out, _ = run_cli(capsys, "lambda-check", "--grid", "4")
    assert code == 0
    worst = float(out.strip().splitlines()[-1].split()[-1])
    assert worst < 1e-10


def test_monodromy_check(capsys):
    code, out, _ = run_cli(capsys, "monodromy-check", "--samples", "4")
    assert code == 0
    for line in out.strip().splitlines()[1:]:
        assert float(line.split()[-1]) < 1e-8


def test_duppoly_emit(capsys):
    code, out, _ = run_cli(capsys, "duppoly", "--level", "1", "--emit")
    assert code == 0
    assert "component 2" in out
    assert "0 3 1 0 8" in out  # the monomial 8*X1^3*X2


def test_duppoly_verify(capsys):
    code, out, _ = run_cli(capsys, "duppoly", "--level", "2", "--verify", "--points", "8")
    assert code == 0
    assert "verified" in out


def test_torsion(capsys):
    code, out, _ = run_cli(capsys, "torsion", "--lambda", "3/10", "--order", "2")
    assert code == 0
    assert out.count("point") == 4
    assert "infinity" in out


def test_count_roots(capsys):
    code, out, _ = run_cli(
        capsys,
        "count-roots",
        "--center", "1/4,1/4",
        "--eps", "3/20",
        "--xi0", "0,0",
        "--n", "10",
    )
    assert code == 0
    assert "count 4" in out


def test_count_roots_bad_eps(capsys):
    code, _, err = run_cli(
        capsys, "count-roots", "--center", "0,0", "--eps", "2/3", "--xi0", "0,0", "--n", "3"
    )
    assert code == 2


def test_experiment_silverman_tate(tmp_path, capsys):
    code, out, _ = run_cli(
        capsys,
        "experiment", "silverman-tate",
        "--family", "builtin:x2",
        "--samples", "2..9",
        "--out", str(tmp_path),
    )
    assert code == 0
    doc = json.loads((tmp_path / "silverman-tate.json").read_text())
    assert len(doc["records"]) == 8
    with open(tmp_path / "silverman-tate.csv", newline="") as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["t", "lambda", "h_lambda", "nt_height", "total_height", "st_ratio"]


def test_experiment_height_ineq_and_specialization(tmp_path, capsys):
    for kind, diag_key in (
        ("height-ineq", "empirical_c"),
        ("specialization", "limit_estimate"),
    ):
        code, out, _ = run_cli(
            capsys,
            "experiment", kind,
            "--family", "builtin:x2",
            "--samples", "2..8",
            "--out", str(tmp_path),
        )
        assert code == 0
        doc = json.loads((tmp_path / f"{kind}.json").read_text())
        assert diag_key in doc["diagnostics"]


def test_experiment_family_file(tmp_path, capsys):
    fam_doc = {"g": 1, "components": [{"x": "0", "y": "0"}], "lambda": "t"}
    path = tmp_path / "family.json"
    path.write_text(json.dumps(fam_doc))
    code, out, _ = run_cli(
        capsys,
        "experiment", "height-ineq",
        "--family", str(path),
        "--samples", "2..6",
        "--out", str(tmp_path),
    )
    assert code == 0
    assert "degenerate" in out


def test_experiment_bad_samples(capsys, tmp_path):
    code, _, err = run_cli(
        capsys,
        "experiment", "height-ineq",
        "--family", "builtin:x2",
        "--samples", "9..2",
        "--out", str(tmp_path),
    )
    assert code == 2


def test_experiment_missing_family_file(capsys, tmp_path):
    code, _, err = run_cli(
        capsys,
        "experiment", "height-ineq",
        "--family", str(tmp_path / "nope.json"),
        "--samples", "2..4",
        "--out", str(tmp_path),
    )
    assert code == 2
