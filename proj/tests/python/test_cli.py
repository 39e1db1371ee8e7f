import json
import os
import subprocess
from pathlib import Path

import pytest

CLI = os.environ.get("KACZEROS_CLI", "kaczeros")
DATA = Path(os.environ.get("KACZEROS_DATA", Path(__file__).parent.parent / "data"))


def run(*args, env=None):
    full_env = dict(os.environ)
    full_env.pop("KACZEROS_THREADS", None)
    if env:
        full_env.update(env)
    return subprocess.run([CLI, *args], capture_output=True, text=True, env=full_env)


def test_sample_json_shape():
    r = run("sample", "--law", "cgauss", "--n", "8", "--seed", "1", "--format", "json")
    assert r.returncode == 0
    values = json.loads(r.stdout)
    assert len(values) == 9
    assert all(len(v) == 2 for v in values)
    assert "sample:" in r.stderr


def test_seed_before_or_after_subcommand():
    a = run("--seed", "4", "sample", "--law", "exp", "--n", "3")
    b = run("sample", "--law", "exp", "--n", "3", "--seed", "4")
    assert a.returncode == 0 and a.stdout == b.stdout


def test_rate_on_unity4():
    r = run("rate", "--ensemble", "C", "--roots-file", str(DATA / "unity4.csv"))
    assert r.returncode == 0
    assert abs(json.loads(r.stdout)["value"]) < 1e-12


def test_usage_errors_exit_2():
    assert run("sample", "--bogus-flag").returncode == 2
    assert run("sample", "--law", "cgauss", "--n", "3").returncode == 2  # missing --seed
    assert run("sample", "--law", "nope", "--n", "3", "--seed", "1").returncode == 2
    assert run().returncode == 2
    assert run("rate", "--roots-file", str(DATA / "missing.csv")).returncode == 2


def test_help_lists_subcommands():
    r = run("--help")
    assert r.returncode == 0
    for sub in ["sample", "roots", "measure", "rate", "density", "verify", "scan"]:
        assert sub in r.stdout


def test_roots_csv_and_expand(tmp_path):
    coeffs = tmp_path / "c.csv"
    coeffs.write_text("re,im\n2,0\n-3,0\n1,0\n")
    out = tmp_path / "roots.csv"
    r = run("roots", "--coeffs-file", str(coeffs), "--format", "csv", "--out", str(out))
    assert r.returncode == 0, r.stderr
    lines = out.read_text().splitlines()
    assert lines[0] == "re,im"
    assert [float(l.split(",")[0]) for l in lines[1:]] == pytest.approx([1.0, 2.0])
    sidecar = json.loads((tmp_path / "roots.json").read_text())
    assert sidecar["degree"] == 2
    e = run("roots", "--expand", "--roots-file", str(out), "--format", "csv")
    assert e.returncode == 0
    assert [float(l.split(",")[0]) for l in e.stdout.splitlines()[1:]] == pytest.approx([2, -3, 1])


def test_measure_density_verify(tmp_path):
    m = run("measure", "--roots-file", str(DATA / "unity4.csv"), "--against", "conjugate")
    assert m.returncode == 0 and json.loads(m.stdout)["dbl"]["value"] == 0
    h = run("measure", "--roots-file", str(DATA / "unity4.csv"), "--angular-hist", "8")
    assert h.returncode == 0 and h.stdout.startswith("lower,upper,count,density")
    d = run("density", "--ensemble", "R", "--roots-file", str(DATA / "unity4.csv"))
    assert d.returncode == 0 and json.loads(d.stdout)["k"] == 1
    g = run("density", "--gamma", "--rho", "4", "--n", "4")
    assert json.loads(g.stdout)["gamma"] == pytest.approx(4 ** -0.25)
    v = run("verify", "--law", "udisk", "--lambda", "1", "2")
    assert v.returncode == 0
    out = json.loads(v.stdout)
    assert out["envelope"]["holds"] if "envelope" in out else True
    assert out["c_lambda"][1]["value"] == pytest.approx(3.141592653589793 ** 3, rel=1e-8)
    o = run("verify", "--law", "cgauss", "--oracle", "--n", "1", "--samples", "2000", "--seed", "3")
    assert o.returncode == 0 and json.loads(o.stdout)["max_abs_z"] < 5


def test_not_conjugation_closed_is_rejected(tmp_path):
    f = tmp_path / "z.csv"
    f.write_text("re,im\n0,1\n")
    assert run("density", "--ensemble", "R", "--roots-file", str(f)).returncode == 2


def test_scan_outputs_are_identical_across_threads(tmp_path):
    args = ["scan", "--kind", "convergence", "--law", "rgauss", "--degrees", "8,32", "--replicas", "4", "--seed", "7"]
    a = run(*args, "--threads", "1", "--out", str(tmp_path / "a"))
    b = run(*args, "--out", str(tmp_path / "b"), env={"KACZEROS_THREADS": "3"})
    assert a.returncode == 0 and b.returncode == 0
    for ext in ["json", "csv"]:
        name = f"convergence-rgauss-7.{ext}"
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()
    ldp = run("scan", "--kind", "ldp", "--law", "udisk", "--degrees", "4,8", "--replicas", "2", "--seed", "1")
    assert ldp.returncode == 0
    assert json.loads(ldp.stdout)["reference"] == "C"
