"""Command line interface tests, run through the real entry point."""

import json
import os
import subprocess
import sys

WORKED = ["x^2", "(x^3 + 1)/(x + 2)"]
RECIPROCAL = ["(x^2 - 1)/x^2", "x^2/(x^2 - 1)"]


def run_cli(args, env_extra=None):
    env = dict(os.environ)
    if env_extra:
        env.update(env_extra)
    proc = subprocess.run(
        [sys.executable, "-m", "ratdec"] + args,
        capture_output=True,
        text=True,
        env=env,
        timeout=180,
    )
    return proc


def test_analyze_worked_pair(tmp_path):
    out = tmp_path / "a"
    proc = run_cli(["analyze", "--out", str(out)] + WORKED)
    assert proc.returncode == 0
    assert "k = 1" in proc.stdout
    payload = json.loads((out / "analyze.json").read_text())
    assert list(payload.keys()) == [
        "grammar",
        "F",
        "G",
        "variant",
        "precision",
        "report",
        "fiber_verification",
    ]
    assert payload["variant"] == "M"
    assert payload["precision"] == 128
    assert payload["report"]["k"] == 1
    assert payload["fiber_verification"]["certified"] is True
    assert payload["fiber_verification"]["q"] == 3
    assert (out / "analyze.txt").exists()


def test_analyze_no_critical_points():
    proc = run_cli(["analyze"] + RECIPROCAL)
    assert proc.returncode == 0
    assert "no critical points" in proc.stdout
    assert "k = 0" in proc.stdout


def test_analyze_strict_variant():
    proc = run_cli(["analyze", "--variant", "M-prime"] + WORKED)
    assert proc.returncode == 0
    assert "k = 1" in proc.stdout


def test_analyze_is_byte_deterministic(tmp_path):
    out1 = tmp_path / "r1"
    out2 = tmp_path / "r2"
    run_cli(["analyze", "--out", str(out1)] + WORKED)
    run_cli(["analyze", "--out", str(out2)] + WORKED)
    assert (out1 / "analyze.json").read_bytes() == (out2 / "analyze.json").read_bytes()
    assert (out1 / "analyze.txt").read_bytes() == (out2 / "analyze.txt").read_bytes()


def test_certify_entire_emits_certificate(tmp_path):
    out = tmp_path / "c"
    proc = run_cli(["certify", "--model", "entire", "--out", str(out)] + WORKED)
    assert proc.returncode == 0
    assert "CERTIFICATE" in proc.stdout
    cert = json.loads((out / "certificate-T1-entire.json").read_text())
    assert cert["theorem"] == "T1-entire"
    assert cert["inequality"] == "k*q = 3 > 2 = bound"
    assert cert["conclusion"] == "no nonconstant entire f, g with F(f) = G(g)"


def test_certify_meromorphic_refuses_worked_pair():
    proc = run_cli(["certify", "--model", "meromorphic"] + WORKED)
    assert proc.returncode == 1
    assert "CERTIFICATE" not in proc.stdout.replace("NO CERTIFICATE", "")


def test_certify_reciprocal_pair_has_no_certificate():
    proc = run_cli(["certify"] + RECIPROCAL)
    assert proc.returncode == 1


def test_certify_symmetric_bundle(tmp_path):
    out = tmp_path / "s"
    proc = run_cli(["certify", "--symmetric", "--out", str(out)] + WORKED)
    assert proc.returncode == 0
    names = sorted(p.name for p in out.glob("certificate-*.json"))
    assert len(names) == 3


def test_certify_format_gating(tmp_path):
    out_json = tmp_path / "j"
    run_cli(["certify", "--model", "entire", "--format", "json", "--out", str(out_json)] + WORKED)
    assert not (out_json / "bounds.txt").exists()
    assert list(out_json.glob("certificate-*.json"))
    out_text = tmp_path / "t"
    run_cli(["certify", "--model", "entire", "--format", "text", "--out", str(out_text)] + WORKED)
    assert (out_text / "bounds.txt").exists()
    assert not list(out_text.glob("certificate-*.json"))


def test_parse_error_exit_code():
    proc = run_cli(["analyze", "x^2 +", "x"])
    assert proc.returncode == 2
    assert "parse error" in proc.stderr
    assert "line 1, column 6" in proc.stderr


def test_precision_flag_and_env(tmp_path):
    out = tmp_path / "p"
    proc = run_cli(["analyze", "--precision", "256", "--out", str(out)] + WORKED)
    assert proc.returncode == 0
    payload = json.loads((out / "analyze.json").read_text())
    assert payload["precision"] == 256

    out_env = tmp_path / "e"
    proc = run_cli(
        ["analyze", "--out", str(out_env)] + WORKED,
        env_extra={"RATDEC_PRECISION": "192"},
    )
    assert proc.returncode == 0
    payload = json.loads((out_env / "analyze.json").read_text())
    assert payload["precision"] == 192

    # the explicit flag wins over the environment
    out_both = tmp_path / "b"
    proc = run_cli(
        ["analyze", "--precision", "256", "--out", str(out_both)] + WORKED,
        env_extra={"RATDEC_PRECISION": "192"},
    )
    payload = json.loads((out_both / "analyze.json").read_text())
    assert payload["precision"] == 256


def test_precision_validation():
    proc = run_cli(["analyze", "--precision", "32"] + WORKED)
    assert proc.returncode == 2
    proc = run_cli(["analyze"] + WORKED, env_extra={"RATDEC_PRECISION": "abc"})
    assert proc.returncode == 2


def test_nev_table_outputs(tmp_path):
    out = tmp_path / "n"
    proc = run_cli(
        ["nev", "--check", "table", "--expr", "tan", "--radii", "1:10:4",
         "--targets", "0", "--out", str(out)]
    )
    assert proc.returncode == 0
    csv = (out / "table.csv").read_text()
    assert csv.splitlines()[0].startswith("# function: tan")
    assert "r,m,N,Nbar,Z[0],Zbar[0],T" in csv
    svg = (out / "T.svg").read_text()
    assert svg.startswith("<svg")


def test_nev_table_byte_deterministic(tmp_path):
    out1 = tmp_path / "n1"
    out2 = tmp_path / "n2"
    args = ["nev", "--check", "table", "--expr", "tan", "--radii", "1:10:4"]
    run_cli(args + ["--out", str(out1)])
    run_cli(args + ["--out", str(out2)])
    assert (out1 / "table.csv").read_bytes() == (out2 / "table.csv").read_bytes()
    assert (out1 / "T.svg").read_bytes() == (out2 / "T.svg").read_bytes()


def test_nev_second_main():
    proc = run_cli(
        ["nev", "--check", "second-main", "--expr", "tan",
         "--targets", "0,1", "--radii", "5:50:9"]
    )
    assert proc.returncode == 0
    assert "PASS" in proc.stdout


def test_nev_growth():
    proc = run_cli(
        ["nev", "--check", "growth", "--outer", "x^2", "--base", "sin",
         "--radii", "2:40:8:log"]
    )
    assert proc.returncode == 0
    assert "PASS" in proc.stdout


def test_nev_identity():
    proc = run_cli(
        ["nev", "--check", "identity", "--F", RECIPROCAL[0], "--G", RECIPROCAL[1],
         "--f", "sin", "--g", "cos", "--samples", "300"]
    )
    assert proc.returncode == 0
    assert "PASS" in proc.stdout


def test_nev_identity_is_seed_deterministic():
    args = ["nev", "--check", "identity", "--F", RECIPROCAL[0], "--G", RECIPROCAL[1],
            "--f", "sin", "--g", "cos", "--samples", "200", "--seed", "7"]
    a = run_cli(args)
    b = run_cli(args)
    assert a.stdout == b.stdout


def test_nev_missing_flags_exit_2():
    proc = run_cli(["nev", "--check", "growth", "--radii", "2:40:8"])
    assert proc.returncode == 2
    proc = run_cli(["nev", "--check", "table", "--expr", "tan"])
    assert proc.returncode == 2
    proc = run_cli(["nev", "--check", "identity", "--F", "x^2"])
    assert proc.returncode == 2


def test_nev_bad_radii_exit_2():
    proc = run_cli(["nev", "--check", "table", "--expr", "tan", "--radii", "5:1:3"])
    assert proc.returncode == 2
    proc = run_cli(["nev", "--check", "table", "--expr", "tan", "--radii", "1:10:4:cubic"])
    assert proc.returncode == 2


def test_nev_pole_collision_exit_2():
    # radius exactly on a pole modulus is a configuration error
    proc = run_cli(
        ["nev", "--check", "table", "--expr", "1/(x - 1)", "--radii",
         "1:2:1"]
    )
    assert proc.returncode == 2
    assert "configuration error" in proc.stderr


def test_nev_quadrature_failure_exit_3():
    # a pole close enough to the circle to exhaust the panel cap, but far
    # enough to clear the collision guard
    proc = run_cli(
        ["nev", "--check", "table", "--expr", "1/(x - 1)", "--radii",
         "1.00001:2:2", "--tol", "1e-12"]
    )
    assert proc.returncode == 3
    assert "quadrature" in proc.stderr.lower()
    assert "worst panel" in proc.stderr


def test_mero_parse_error_exit_2():
    proc = run_cli(["nev", "--check", "table", "--expr", "tan(x)", "--radii", "1:5:3"])
    assert proc.returncode == 2
    assert "parse error" in proc.stderr
