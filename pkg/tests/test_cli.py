import csv
import io
import json
import math
import subprocess
import sys

import pytest

from ellipvol import cli, verify
from ellipvol.verify import CheckResult


def call(*argv):
    out = io.StringIO()
    code = cli.run(list(argv), stdout=out)
    return code, out.getvalue()


def call_json(*argv):
    code, text = call(*argv)
    assert code == 0, text
    return json.loads(text)


def test_vk_examples():
    rec = call_json("vk", "--semiaxes", "1,1", "--k", "1")
    assert rec["results"][0]["value"] == pytest.approx(math.pi, rel=1e-12)
    rec = call_json("vk", "--semiaxes", "3,2,1", "--k", "3")
    assert rec["results"][0]["value"] == pytest.approx(8 * math.pi, rel=1e-12)
    assert rec["results"][0]["backend"] == "closed_form"
    rec = call_json("vk", "--semiaxes", "2,1", "--k", "0")
    assert rec["results"][0]["value"] == 1.0


def test_vk_all_and_backends():
    base = call_json("vk", "--semiaxes", "3,1,0.5,0.2", "--all")
    assert [r["k"] for r in base["results"]] == [0, 1, 2, 3, 4]
    for b in ("quadrature", "duality", "rfunction"):
        rec = call_json("vk", "--semiaxes", "3,1,0.5,0.2", "--all", "--backend", b)
        for r, r0 in zip(rec["results"], base["results"]):
            assert r["value"] == pytest.approx(r0["value"], rel=1e-10)


@pytest.mark.parametrize("backend", ["sphere-mc", "gram-mc"])
def test_vk_monte_carlo_backends(backend):
    exact = call_json("vk", "--semiaxes", "2,1,0.5", "--k", "2")["results"][0]["value"]
    row = call_json("vk", "--semiaxes", "2,1,0.5", "--k", "2", "--backend", backend,
                    "--samples", "100000", "--seed", "3")["results"][0]
    assert row["error_kind"] == "statistical" and row["samples"] == 100000
    assert abs(row["value"] - exact) <= 4 * row["error"]


def test_json_record_shape_and_round_trip():
    rec = call_json("vk", "--semiaxes", "2,1", "--k", "1")
    assert set(rec) == {"command", "inputs", "results", "versions", "wall_time_ms"}
    assert rec["command"] == ["vk", "--semiaxes", "2,1", "--k", "1"]
    assert {"ellipvol", "numpy", "python"} <= set(rec["versions"])
    # values survive a float -> text -> float round trip exactly
    from ellipvol import Ellipsoid, intrinsic_volume
    assert rec["results"][0]["value"] == intrinsic_volume(Ellipsoid([2, 1]), 1).value


def test_deterministic_except_wall_time():
    args = ("vk", "--semiaxes", "2,1,0.5", "--k", "1", "--backend", "sphere-mc", "--samples", "70000")
    a, b = call_json(*args), call_json(*args)
    a.pop("wall_time_ms"), b.pop("wall_time_ms")
    assert a == b
    c = call_json("--threads", "3", *args)
    c.pop("wall_time_ms")
    assert c["results"] == a["results"]


def test_csv():
    code, text = call("vk", "--semiaxes", "1,1", "--all", "--format", "csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(text)))
    assert list(rows[0]) == cli.CSV_COLUMNS
    assert [int(r["k"]) for r in rows] == [0, 1, 2]
    assert float(rows[1]["value"]) == pytest.approx(math.pi, rel=1e-12)
    assert rows[1]["error_kind"] == "deterministic" and rows[1]["samples"] == "0"


def test_simplex():
    rec = call_json("simplex", "uniform", "--semiaxes", "1,1", "--k", "1")
    assert rec["results"][0]["value"] == pytest.approx(128 / (45 * math.pi), rel=1e-10)
    rec = call_json("simplex", "gaussian", "--eigenvalues", "1", "--k", "1",
                    "--oracle", "--samples", "100000")
    formula, mc = rec["results"]
    assert formula["value"] == pytest.approx(2 / math.sqrt(math.pi), rel=1e-10)
    assert mc["backend"] == "monte_carlo"
    assert abs(mc["value"] - formula["value"]) <= 4 * mc["error"]


def test_steiner():
    rec = call_json("steiner", "--semiaxes", "1,1", "--r", "1")
    assert rec["results"][0]["value"] == pytest.approx(4 * math.pi, rel=1e-12)
    rec = call_json("steiner", "--semiaxes", "2,1", "--r", "0.5", "--oracle", "--samples", "100000")
    poly, mc = rec["results"]
    assert abs(mc["value"] - poly["value"]) <= 4 * mc["error"]


def test_verify_pass():
    rec = call_json("verify", "--suite", "simplex", "--samples", "50000")
    assert rec["passed"] is True
    assert all(r["passed"] for r in rec["results"])


def test_verify_failure_exit_code(monkeypatch):
    bad = lambda seed, n: [CheckResult("forced", False, "z_score", 1.0, 0.0, 99.0)]
    monkeypatch.setitem(verify.SUITES, "ball", bad)
    code, text = call("verify", "--suite", "ball")
    assert code == 1
    assert json.loads(text)["passed"] is False


@pytest.mark.parametrize(
    "argv",
    [
        ["vk", "--semiaxes", "1,0", "--k", "1"],
        ["vk", "--semiaxes", "1,-2", "--k", "1"],
        ["vk", "--semiaxes", "1,nan", "--k", "1"],
        ["vk", "--semiaxes", "1,1", "--k", "3"],
        ["vk", "--semiaxes", "1,1", "--k", "1", "--samples", "1"],
        ["simplex", "uniform", "--semiaxes", "1,1", "--k", "0"],
        ["steiner", "--semiaxes", "1", "--r", "-1"],
        ["verify", "--suite", "nope"],
        ["nope"],
    ],
)
def test_bad_arguments_exit_2(argv, capsys):
    with pytest.raises(SystemExit) as exc:
        cli.run(argv, stdout=io.StringIO())
    assert exc.value.code == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "ellipvol", "vk", "--semiaxes", "1,1", "--k", "1"],
                          capture_output=True, text=True, check=True)
    assert json.loads(proc.stdout)["results"][0]["value"] == pytest.approx(math.pi)
    proc = subprocess.run([sys.executable, "-m", "ellipvol", "vk", "--semiaxes", "1,0", "--k", "1"],
                          capture_output=True, text=True)
    assert proc.returncode == 2 and proc.stdout == ""
