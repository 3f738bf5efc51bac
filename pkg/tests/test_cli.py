import json
import math
import subprocess
import sys

import numpy as np
import pytest

from conftest import line2, line3, triangle3
from owpb import Pattern, serialize_pattern
from owpb.cli import execute
from owpb.dense import dense_positive_branch


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, p in {
        "line2": line2(0.7),
        "line3": line3(0.3, 1.1),
        "tri": triangle3(0.3, 0.0),
        "conn": Pattern(n=1, a=2, edges=[(1, 2), (2, 3), (3, 4)], theta=[0.2, 0.4, 0.6]),
    }.items():
        path = tmp_path / f"{name}.json"
        path.write_text(serialize_pattern(p))
        paths[name] = str(path)
    bad = tmp_path / "bad.json"
    bad.write_text('{"m": 3, "inputs": [1], "outputs": [1], "edges": [], "angles": {}}')
    paths["bad"] = str(bad)
    return paths


def run(*argv):
    result = execute(list(argv))
    assert result.exit_code in (0, 1, 2)
    if result.exit_code == 2:
        assert result.stdout == ""
        assert result.stderr.startswith("owpb: error:")
        assert result.stderr.count("\n") == 1
    return result


def test_matrix(files):
    r = run("matrix", files["line3"], "--method", "dense")
    assert r.exit_code == 0
    doc = json.loads(r.stdout)
    assert (doc["m"], doc["n"], doc["a"], doc["method"], doc["scaling"]) == (3, 1, 1, "dense", "physical")
    mat = np.array([[complex(*z) for z in row] for row in doc["matrix"]])
    np.testing.assert_allclose(mat, dense_positive_branch(line3(0.3, 1.1)), atol=1e-15)


def test_matrix_raw(files):
    doc = json.loads(run("matrix", files["line2"], "--scaling", "raw", "--method", "theorem1").stdout)
    e = complex(math.cos(0.7), -math.sin(0.7))
    assert doc["matrix"][1][1] == pytest.approx([-e.real, -e.imag])


def test_matrix_cap(files):
    r = run("matrix", files["line3"], "--method", "dense", "--cap", "2")
    assert r.exit_code == 2 and "cap" in r.stderr


def test_missing_file():
    r = run("matrix", "missing.json")
    assert r.exit_code == 2
    assert "cannot read pattern file" in r.stderr


def test_invalid_pattern_names_field(files):
    r = run("verify", files["bad"])
    assert r.exit_code == 2
    assert "outputs" in r.stderr


def test_unknown_subcommand():
    assert run("frobnicate").exit_code == 2
    r = run("matrix", "x.json", "--method", "magic")
    assert r.exit_code == 2 and "--method" in r.stderr


def test_verify(files):
    r = run("verify", files["line3"], "--tol", "1e-9")
    assert r.exit_code == 0
    doc = json.loads(r.stdout)
    assert doc["max_deviation"] <= 1e-9 and doc["passed"]


def test_verify_failure_exit_code(files):
    r = run("verify", files["conn"], "--tol", "-1")
    assert r.exit_code == 1
    assert json.loads(r.stdout)["passed"] is False


def test_decompose(files):
    doc = json.loads(run("decompose", files["line3"], "--column", "2").stdout)
    assert doc["gamma"] == 1
    assert doc["omega"] == [1, -1]
    assert doc["b_full"] == [[1, 1], [1, -1]]
    assert run("decompose", files["line3"], "--column", "3").exit_code == 2


def test_signs(files):
    doc = json.loads(run("signs", files["line3"], "--function", "B", "--set", "3", "--against", "aux").stdout)
    assert doc["vector"] == [1, -1]
    doc = json.loads(run("signs", files["tri"], "--function", "P", "--set", "all").stdout)
    assert doc["vector"] == [1, 1, 1, -1, 1, -1, -1, -1]
    assert run("signs", files["tri"], "--function", "B", "--set", "1").exit_code == 2
    assert run("signs", files["tri"], "--function", "P", "--set", "1,9").exit_code == 2
    assert run("signs", files["tri"], "--function", "B", "--set", "1", "--against", "1,2").exit_code == 2


def test_determinism(files):
    r = run("determinism", files["line3"])
    assert r.exit_code == 0
    assert json.loads(r.stdout)["lambda"] == pytest.approx(4.0)
    r = run("determinism", files["tri"], "--uniform", "--samples", "100", "--seed", "42")
    assert r.exit_code == 1
    witness = json.loads(r.stdout)["uniform"]["witness"]
    assert witness[1] == pytest.approx(math.pi / 2)


def test_equal(files, tmp_path):
    same = tmp_path / "same.json"
    same.write_text('{"m": 3, "inputs": [9], "outputs": [2], "edges": [[9, 5], [5, 2]], "angles": {"9": 0.3, "5": 1.1}}')
    r = run("equal", files["line3"], str(same))
    assert r.exit_code == 0 and json.loads(r.stdout)["equal"]
    r = run("equal", files["line3"], files["line2"])
    assert r.exit_code == 1
    two = tmp_path / "two.json"
    two.write_text(serialize_pattern(Pattern(n=2, a=0, edges=[], theta=[0, 0])))
    assert run("equal", files["line3"], str(two)).exit_code == 2


def test_entry_paths(files):
    doc = json.loads(run("entry", files["line3"], "--row", "2", "--col", "2").stdout)
    assert doc["path"] == "fast"
    e1, e2 = complex(math.cos(0.3), -math.sin(0.3)), complex(math.cos(1.1), -math.sin(1.1))
    assert complex(*doc["value"]) == pytest.approx(e1 * (1 + e2))

    doc = json.loads(run("entry", files["conn"], "--row", "1", "--col", "2").stdout)
    assert doc["path"] == "dense"
    expected = dense_positive_branch(Pattern(n=1, a=2, edges=[(1, 2), (2, 3), (3, 4)], theta=[0.2, 0.4, 0.6]))
    assert complex(*doc["value"]) == pytest.approx(expected[0, 1] * 8)

    assert run("entry", files["line3"], "--row", "5", "--col", "1").exit_code == 2


def test_byte_identical_runs(files):
    argv = ["determinism", files["tri"], "--uniform", "--samples", "30"]
    assert execute(argv).stdout == execute(argv).stdout
    argv = ["matrix", files["conn"], "--scaling", "raw"]
    assert execute(argv).stdout == execute(argv).stdout


def test_module_entry_point(files):
    proc = subprocess.run(
        [sys.executable, "-m", "owpb", "verify", files["line2"]], capture_output=True, text=True, check=False
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["passed"]
