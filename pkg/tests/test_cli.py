import csv
import json
import math
import subprocess
import sys

import pytest

from morrey import GridDomain, GridFunction, write_function
from morrey.cli import main
from morrey.io import read_function


@pytest.fixture
def ones(tmp_path):
    path = tmp_path / "one.mgf"
    write_function(GridFunction.constant(GridDomain.unit_cube(1, 512)), path)
    return str(path)


def _run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_norm_constant_fixture(capsys, ones):
    code, out, _ = _run(capsys, "norm", "--in", ones, "--weight", "power:0.5", "--p", "1", "--rho", "0.25")
    assert code == 0
    doc = json.loads(out)
    assert doc["result"]["value"] == pytest.approx(1.0, abs=0.02)
    assert doc["config"]["weight"] == "power:0.5"
    assert doc["config"]["rho"] == 0.25


def test_norm_capped_zero_is_l2(capsys, ones):
    code, out, _ = _run(capsys, "norm", "--in", ones, "--weight", "capped:0", "--p", "2")
    assert code == 0
    assert json.loads(out)["result"]["value"] == 1.0
    assert json.loads(out)["config"]["rho"] == "inf"


def test_oracle_flag_matches(capsys, tmp_path):
    path = tmp_path / "b.mgf"
    assert main(["gen", "--kind", "piecewise", "--size", "64", "--out", str(path)]) == 0
    args = ["norm", "--in", str(path), "--weight", "trunc:0.5:0.3", "--p", "2"]
    _, fast, _ = _run(capsys, *args)
    _, slow, _ = _run(capsys, "--oracle", *args)
    a, b = json.loads(fast)["result"]["value"], json.loads(slow)["result"]["value"]
    assert b == pytest.approx(a, rel=1e-12)


def test_modulus_csv(capsys, ones, tmp_path):
    out_path = tmp_path / "mod.csv"
    code, _, _ = _run(capsys, "modulus", "--in", ones, "--weight", "power:0.5", "--p", "1",
                      "--rho-samples", "0.0625,0.125,0.25", "--out", str(out_path))
    assert code == 0
    lines = out_path.read_text().splitlines()
    assert lines[0].startswith("# config: ")
    rows = list(csv.reader(lines[1:]))
    assert rows[0] == ["rho", "value"]
    for rho, val in rows[1:]:
        assert float(val) == pytest.approx(2 * math.sqrt(float(rho)), abs=0.02)


def test_modulus_zero_function(capsys, tmp_path):
    path = tmp_path / "z.csv"
    assert main(["gen", "--kind", "zero", "--size", "32", "--out", str(path), "--format", "csv"]) == 0
    code, out, _ = _run(capsys, "modulus", "--in", str(path), "--weight", "power:0.5", "--p", "1",
                        "--rho-samples", "0.1,0.2", "--format", "json")
    assert code == 0
    assert [r["value"] for r in json.loads(out)["curve"]] == [0.0, 0.0]


@pytest.mark.parametrize("argv", [
    ["modulus", "--weight", "power:0.5", "--p", "1", "--rho-samples", "0.25,0.125"],
    ["norm", "--weight", "gauss:1", "--p", "1"],
    ["norm", "--weight", "power:0.5", "--p", "0.5"],
    ["norm", "--weight", "power:0.5", "--p", "1", "--rho", "0"],
    ["norm", "--weight", "power:0.5", "--p", "nan"],
    ["mollify", "--weight", "power:0.5", "--p", "2", "--eps", "0.0001"],
    ["mollify", "--weight", "power:0.5", "--p", "2", "--eps", "0.0625,0.125"],
    ["norm", "--weight", "power:0.5"],
])
def test_usage_errors(capsys, ones, argv):
    code, _, err = _run(capsys, *argv[:1], "--in", ones, *argv[1:])
    assert code == 2, err


def test_missing_file_is_data_error(capsys, tmp_path):
    code, _, err = _run(capsys, "norm", "--in", str(tmp_path / "nope.mgf"), "--weight", "power:0", "--p", "1")
    assert code == 3
    assert "data error" in err


def test_corrupt_file_is_data_error(capsys, tmp_path):
    bad = tmp_path / "bad.mgf"
    bad.write_bytes(b"MGF1garbage")
    code, _, _ = _run(capsys, "norm", "--in", str(bad), "--weight", "power:0", "--p", "1")
    assert code == 3


def test_mollify_curve(capsys, tmp_path):
    path = tmp_path / "bump.mgf"
    assert main(["gen", "--kind", "bump", "--size", "256", "--out", str(path)]) == 0
    code, out, _ = _run(capsys, "mollify", "--in", str(path), "--weight", "capped:0.25", "--p", "2",
                        "--eps", "0.125,0.0625,0.03125")
    assert code == 0
    rows = list(csv.reader(out.splitlines()[1:]))
    assert rows[0] == ["eps", "morrey_err", "lp_err"]
    lp = [float(r[2]) for r in rows[1:]]
    assert lp[0] > lp[1] > lp[2]


def test_verify_single_check(capsys):
    code, out, _ = _run(capsys, "verify", "--suite", "mulgm1", "--size", "64")
    assert code == 0
    doc = json.loads(out)
    assert [r["check_id"] for r in doc["reports"]] == ["mulgm1"]


def test_verify_csv(capsys):
    code, out, _ = _run(capsys, "verify", "--suite", "molp,mocolp", "--size", "64", "--format", "csv")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].startswith("# config: ")
    assert lines[1] == "check_id,lhs,rhs,ratio,pass,tol,inputs_digest"
    assert len(lines) == 4


def test_verify_unknown_suite(capsys):
    code, _, err = _run(capsys, "verify", "--suite", "nonsense")
    assert code == 2
    assert "nonsense" in err


def test_gen_is_deterministic(tmp_path):
    a, b = tmp_path / "a.mgf", tmp_path / "b.mgf"
    for p in (a, b):
        assert main(["gen", "--kind", "bump", "--n", "2", "--size", "128", "--out", str(p)]) == 0
    assert a.read_bytes() == b.read_bytes()
    f = read_function(a)
    assert f.domain.shape == (128, 128)


def test_gen_unknown_kind(tmp_path):
    assert main(["gen", "--kind", "spiral", "--out", str(tmp_path / "x")]) == 2


def test_module_entry_point(ones):
    proc = subprocess.run([sys.executable, "-m", "morrey.cli", "norm", "--in", ones, "--weight", "power:0",
                           "--p", "inf"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["result"]["value"] == 1.0
