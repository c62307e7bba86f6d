"""End-to-end tests for the command line front end.

Everything runs through entry() in process; one smoke test goes through a
real subprocess to check the module wiring.  Exit codes follow the
contract: 0 checks passed, 1 a check failed, 2 invalid input.
"""

import csv
import io
import json
import math
import subprocess
import sys

import pytest

from privalov.cli import RunConfig, entry

TAU = 2.0 * math.pi


def run_cli(*argv):
    return entry(list(argv))


@pytest.fixture()
def seq_file(tmp_path):
    p = tmp_path / "seq.txt"
    p.write_text("6\n60\n6000\n")
    return str(p)


@pytest.fixture()
def full_circle_file(tmp_path):
    p = tmp_path / "full.json"
    p.write_text(json.dumps({"arcs": [[0.0, TAU]]}))
    return str(p)


# -- config resolution -----------------------------------------------------


def test_default_config_values():
    cfg = RunConfig()
    assert cfg.grid_size == 65536
    assert cfg.mc_samples == 100_000
    assert cfg.delta == 1e-5
    assert cfg.seed == 0
    assert cfg.margin == 2
    assert cfg.depth == 8
    assert cfg.fmt == "json"
    assert cfg.out is None


def test_config_file_merge_and_flag_precedence(tmp_path, seq_file):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"seed": 7, "mc_samples": 5000}))
    out = tmp_path / "a.json"
    code = run_cli("alpha", seq_file, "--config", str(cfg),
                   "--samples", "300", "--out", str(out))
    assert code == 0
    data = json.loads(out.read_text())
    assert data["config"]["seed"] == 7
    assert data["config"]["mc_samples"] == 300
    assert data["config"]["subcommand"] == "alpha"


def test_config_unknown_key_is_rejected(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"samples": 10}))
    assert run_cli("cone", "--config", str(cfg)) == 2


def test_config_invalid_value_is_rejected(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"mc_samples": -5}))
    assert run_cli("cone", "--config", str(cfg)) == 2


def test_corrupt_config_file_is_rejected(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text("not json")
    assert run_cli("verify", "--config", str(cfg)) == 2


def test_bad_flag_value_exits_2(seq_file):
    assert run_cli("alpha", seq_file, "--format", "xml") == 2


def test_missing_input_file_exits_2(tmp_path):
    assert run_cli("alpha", str(tmp_path / "absent.txt")) == 2


# -- alpha -----------------------------------------------------------------


def test_alpha_writes_exact_fractions(tmp_path, seq_file):
    out = tmp_path / "alpha.json"
    assert run_cli("alpha", seq_file, "--out", str(out)) == 0
    data = json.loads(out.read_text())
    assert data["alpha"]["mid"] == "517/1000"
    assert data["alpha"]["q"] == [6, 60, 6000]
    assert all(c["pass"] for c in data["checks"])
    names = {c["name"] for c in data["checks"]}
    assert names == {"integral_multiples", "window", "uniform_bound"}


def test_alpha_ratio_violation_exits_2(tmp_path):
    p = tmp_path / "seq.txt"
    p.write_text("6\n12\n")
    assert run_cli("alpha", str(p)) == 2


def test_alpha_empty_file_exits_2(tmp_path):
    p = tmp_path / "seq.txt"
    p.write_text("")
    assert run_cli("alpha", str(p)) == 2


def test_alpha_stdout_default(seq_file, capsys):
    assert run_cli("alpha", seq_file) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["config"]["out"] is None


# -- cone ------------------------------------------------------------------


def test_cone_passes_and_flags_low_sampling(tmp_path):
    out = tmp_path / "cone.json"
    code = run_cli("cone", "--samples", "300", "--out", str(out))
    assert code == 0
    data = json.loads(out.read_text())
    assert abs(data["kappa"] - 3.0) <= 1e-9
    assert data["kappa_pass"] and data["abel"]["pass"]
    assert data["low_sampling"] is True
    assert data["abel"]["worst_ratio"] <= 3.0


def test_cone_forced_bound_exits_1(tmp_path):
    out = tmp_path / "cone.json"
    code = run_cli("cone", "--samples", "300", "--kappa-bound", "2.9",
                   "--out", str(out))
    assert code == 1
    # the artifact is still written, with the failure recorded
    data = json.loads(out.read_text())
    assert data["kappa_pass"] is False
    assert data["kappa_bound"] == 2.9


# -- hm --------------------------------------------------------------------


def test_hm_full_circle_oracle(tmp_path, full_circle_file):
    out = tmp_path / "hm.json"
    code = run_cli("hm", full_circle_file, "--samples", "20000",
                   "--out", str(out))
    assert code == 0
    data = json.loads(out.read_text())
    assert data["partition_exact"] is True
    assert data["disk_oracle"]["pass"] is True
    assert len(data["disk_oracle"]["bins"]) == 8
    for b in data["disk_oracle"]["bins"]:
        assert b["exact"] == pytest.approx(1 / 8, abs=1e-12)


def test_hm_byte_determinism(tmp_path, full_circle_file):
    out = tmp_path / "hm.json"
    assert run_cli("hm", full_circle_file, "--samples", "5000",
                   "--out", str(out)) == 0
    first = out.read_bytes()
    assert run_cli("hm", full_circle_file, "--samples", "5000",
                   "--out", str(out)) == 0
    assert out.read_bytes() == first


def test_hm_seed_changes_output(tmp_path, full_circle_file):
    out = tmp_path / "hm.json"
    run_cli("hm", full_circle_file, "--samples", "5000", "--out", str(out))
    first = out.read_bytes()
    run_cli("hm", full_circle_file, "--samples", "5000", "--seed", "1",
            "--out", str(out))
    assert out.read_bytes() != first


def test_hm_symmetric_gaps(tmp_path):
    # four gaps of equal length, invariant under quarter turns about 0
    g = 0.4
    arcs = []
    for k in range(4):
        lo = TAU * k / 4 + g / 2
        hi = TAU * (k + 1) / 4 - g / 2
        arcs.append([lo, hi])
    p = tmp_path / "arcs.json"
    p.write_text(json.dumps({"arcs": arcs}))
    out = tmp_path / "hm.json"
    assert run_cli("hm", str(p), "--samples", "20000", "--out", str(out)) == 0
    data = json.loads(out.read_text())
    gaps = [r for r in data["gap_table"] if r["gap"] >= 0]
    assert len(gaps) == 4
    for a in gaps:
        for b in gaps:
            sigma = math.hypot(a["stderr"], b["stderr"])
            assert abs(a["omega"] - b["omega"]) <= 3 * sigma + 1e-12


def test_hm_csv_is_the_gap_table(tmp_path, full_circle_file, capsys):
    assert run_cli("hm", full_circle_file, "--samples", "2000",
                   "--format", "csv") == 0
    text = capsys.readouterr().out
    rows = list(csv.reader(io.StringIO(text)))
    assert rows[0] == ["gap", "length", "omega", "stderr"]
    assert rows[1][0] == "-1"
    assert float(rows[1][2]) == 1.0


# -- build -----------------------------------------------------------------


def test_build_weight_log_table(tmp_path):
    out = tmp_path / "b.json"
    code = run_cli("build", "--variant", "weight", "--omega", "log:1000000",
                   "--depth", "6", "--out", str(out))
    assert code == 0
    data = json.loads(out.read_text())
    assert data["variant"] == "weight"
    assert all(c["pass"] for c in data["checks"])
    assert data["config"]["omega"] == "log:1000000"
    assert data["sequences"]["n"] == [1, 2, 3, 4, 5, 14]


def test_build_lacunary_reports_beta(tmp_path, seq_file):
    p = tmp_path / "seq4.txt"
    p.write_text("6\n60\n6000\n6000000\n")
    out = tmp_path / "b.json"
    code = run_cli("build", "--variant", "lacunary", "--sequence", str(p),
                   "--depth", "4", "--out", str(out))
    assert code == 0
    data = json.loads(out.read_text())
    beta = data["sequences"]["beta"]
    assert TAU / 3 < beta < 2 * TAU / 3
    assert all(c["pass"] for c in data["checks"])


def test_build_couples_identity(tmp_path):
    out = tmp_path / "b.json"
    code = run_cli("build", "--variant", "couples", "--ell", "identity",
                   "--depth", "3", "--out", str(out))
    assert code == 0
    data = json.loads(out.read_text())
    assert data["variant"] == "couples"
    assert len(data["sequences"]["nu"]) == 3


def test_build_weight_csv_checks_table(tmp_path, capsys):
    assert run_cli("build", "--variant", "weight", "--omega", "log:1000000",
                   "--depth", "4", "--format", "csv") == 0
    rows = list(csv.reader(io.StringIO(capsys.readouterr().out)))
    assert rows[0] == ["name", "pass", "lhs", "rhs"]
    assert all(r[1] == "True" for r in rows[1:])


def test_build_non_increasing_ell_exits_2(tmp_path):
    p = tmp_path / "ell.json"
    p.write_text(json.dumps(
        {"kind": "table", "values": [5.0, 4.0, 3.0], "n_start": 1}))
    assert run_cli("build", "--variant", "couples", "--ell", str(p),
                   "--depth", "2") == 2


def test_build_missing_variant_input_exits_2():
    assert run_cli("build", "--variant", "weight") == 2
    assert run_cli("build", "--variant", "lacunary") == 2
    assert run_cli("build", "--variant", "couples") == 2


def test_build_range_exhaustion_exits_2(capsys):
    code = run_cli("build", "--variant", "weight", "--omega", "log:1000000",
                   "--depth", "40")
    assert code == 2
    err = capsys.readouterr().err
    assert "out of range" in err


def test_build_bad_omega_string_exits_2():
    assert run_cli("build", "--variant", "weight", "--omega", "log:0") == 2


# -- verify ----------------------------------------------------------------


def test_verify_reduced_samples(tmp_path):
    out = tmp_path / "ver.json"
    code = run_cli("verify", "--samples", "500", "--out", str(out))
    assert code in (0, 1)
    data = json.loads(out.read_text())
    assert len(data["criteria"]) == 10
    for row in data["criteria"]:
        assert row["status"] in ("pass", "retry", "fail")
        if row["status"] == "retry":
            assert row["retried"] and row["passed"]
    assert data["all_passed"] == (code == 0)
    assert data["config"]["mc_samples"] == 500


# -- plumbing --------------------------------------------------------------


def test_no_temp_files_left_behind(tmp_path, seq_file):
    out = tmp_path / "a.json"
    run_cli("alpha", seq_file, "--out", str(out))
    leftovers = [p for p in tmp_path.iterdir() if ".tmp." in p.name]
    assert leftovers == []


def test_subprocess_wiring(tmp_path, seq_file):
    out = tmp_path / "a.json"
    proc = subprocess.run(
        [sys.executable, "-m", "privalov.cli", "alpha", seq_file,
         "--out", str(out)],
        capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(out.read_text())["alpha"]["mid"] == "517/1000"
