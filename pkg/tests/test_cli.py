"""Command line entry points, artifact formats, and exit codes."""

import csv
import json
import subprocess
import sys

import pytest

TWO_POLE = {
    "poles": [
        {"re": 0.0, "im": 1.0, "order": 1, "coeffs": [{"re": 0.0,
                                                       "im": -0.5}]},
        {"re": 0.0, "im": -1.0, "order": 1, "coeffs": [{"re": 0.0,
                                                        "im": 0.5}]},
    ]
}

LEMNISCATE = {
    "lemniscate": {
        "polynomials": [[-1.0, 1.0], [1.0, 1.0],
                        [{"re": 0.0, "im": -1.0}, 1.0],
                        [{"re": 0.0, "im": 1.0}, 1.0]],
        "multipliers": [12, 8, 7, 21],
    }
}


def run_cli(*args, cwd=None):
    return subprocess.run([sys.executable, "-m", "voroderiv.cli", *args],
                          capture_output=True, text=True, cwd=cwd)


@pytest.fixture()
def problem(tmp_path):
    p = tmp_path / "problem.json"
    p.write_text(json.dumps(TWO_POLE))
    return p


def test_derive_writes_numerator_csv(problem, tmp_path):
    r = run_cli("derive", "--problem", str(problem), "--n", "6",
                "--out", str(tmp_path))
    assert r.returncode == 0
    rows = list(csv.DictReader(open(tmp_path / "rn_6.csv")))
    assert len(rows) == 7  # degree 6 numerator
    assert {"k", "re", "im"} <= set(rows[0])


def test_roots_csv_has_residuals(problem, tmp_path):
    r = run_cli("roots", "--problem", str(problem), "--n", "6",
                "--out", str(tmp_path))
    assert r.returncode == 0
    rows = list(csv.DictReader(open(tmp_path / "roots_6.csv")))
    assert len(rows) == 6
    for row in rows:
        assert float(row["residual"]) < 1e-10
        assert row["converged"] == "1"


def test_voronoi_json(problem, tmp_path):
    r = run_cli("voronoi", "--problem", str(problem), "--out", str(tmp_path))
    assert r.returncode == 0
    data = json.loads((tmp_path / "voronoi.json").read_text())
    assert len(data["sites"]) == 2
    assert len(data["edges"]) == 1


def test_measure_csv_total_mass(problem, tmp_path):
    r = run_cli("measure", "--problem", str(problem), "--out", str(tmp_path))
    assert r.returncode == 0
    rows = list(csv.DictReader(open(tmp_path / "measure.csv")))
    assert sum(float(row["mass"]) for row in rows) == pytest.approx(1.0)
    assert (tmp_path / "measure_cdf.csv").exists()


def test_compare_report(problem, tmp_path):
    r = run_cli("compare", "--problem", str(problem), "--n", "6,12",
                "--out", str(tmp_path))
    assert r.returncode == 0
    reports = json.loads((tmp_path / "compare.json").read_text())
    assert [rep["n"] for rep in reports] == [6, 12]
    ks = [rep["edges"][0]["ks"] for rep in reports]
    assert ks[1] < ks[0]
    assert (tmp_path / "atoms_6.csv").exists()


def test_potential_csv(problem, tmp_path):
    r = run_cli("potential", "--problem", str(problem), "--n", "6",
                "--out", str(tmp_path))
    assert r.returncode == 0
    rows = list(csv.DictReader(open(tmp_path / "potential_l1.csv")))
    assert float(rows[0]["l1_discrepancy"]) < 1.0


def test_odecheck_residuals_small(problem, tmp_path):
    r = run_cli("odecheck", "--problem", str(problem), "--n", "6",
                "--out", str(tmp_path))
    assert r.returncode == 0
    rows = list(csv.DictReader(open(tmp_path / "odecheck.csv")))
    assert rows
    assert max(float(row["residual"]) for row in rows) < 1e-10


def test_render_svg_artifact(problem, tmp_path):
    r = run_cli("render", "--problem", str(problem), "--n", "6",
                "--out", str(tmp_path))
    assert r.returncode == 0
    svg = (tmp_path / "render_6.svg").read_text()
    assert svg.startswith("<?xml")
    assert "<svg" in svg


def test_lemniscate_subcommand(tmp_path):
    p = tmp_path / "lemn.json"
    p.write_text(json.dumps(LEMNISCATE))
    r = run_cli("lemniscate", "--problem", str(p), "--n", "2,4",
                "--out", str(tmp_path))
    assert r.returncode == 0
    data = json.loads((tmp_path / "lemniscate.json").read_text())
    assert data["compact"] is True
    assert (tmp_path / "lemniscate_roots.csv").exists()
    assert (tmp_path / "lemniscate_4.svg").exists()


def test_determinism(problem, tmp_path):
    a = tmp_path / "a"
    b = tmp_path / "b"
    a.mkdir(), b.mkdir()
    for d in (a, b):
        r = run_cli("compare", "--problem", str(problem), "--n", "8",
                    "--seed", "3", "--out", str(d))
        assert r.returncode == 0
    assert (a / "compare.json").read_bytes() == (b / "compare.json").read_bytes()
    assert (a / "atoms_8.csv").read_bytes() == (b / "atoms_8.csv").read_bytes()


def test_missing_file_exits_1(tmp_path):
    r = run_cli("roots", "--problem", str(tmp_path / "nope.json"))
    assert r.returncode == 1


def test_malformed_json_exits_1(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{"poles": bad}')
    r = run_cli("roots", "--problem", str(p))
    assert r.returncode == 1
    assert "error" in r.stderr.lower()


def test_duplicate_pole_exits_2(tmp_path):
    p = tmp_path / "dup.json"
    pole = {"re": 0.0, "im": 1.0, "order": 1,
            "coeffs": [{"re": 1.0, "im": 0.0}]}
    p.write_text(json.dumps({"poles": [pole, pole]}))
    r = run_cli("voronoi", "--problem", str(p))
    assert r.returncode == 2
