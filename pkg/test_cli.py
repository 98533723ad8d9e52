#!/usr/bin/env python3
"""
Tests for the command-line front end (vote_walk/cli/).
Each subcommand is driven through main() with in-memory streams.
"""

import io
import json
import math
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from vote_walk.cli import build_parser, main, read_csv, resolve_config
from vote_walk.config import Config
from vote_walk.model import EnvironmentParams, GroupSpec, VotingRule, full_report
from vote_walk.optimize import system as system_module

T2_PLUS = math.sqrt(2.0 / (3.0 * math.pi))
Y0_THRESHOLD = 0.29217


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def run_json(*argv):
    code, out, err = run(*argv, "--json")
    assert code == 0, err
    return json.loads(out)


def run_csv(*argv):
    code, out, err = run(*argv)
    return code, read_csv(io.StringIO(out))


def column(header, rows, name):
    index = header.index(name)
    return [row[index] for row in rows]


# ============================================================================
# expect
# ============================================================================


def test_expect_text_output():
    code, out, err = run("expect")
    assert code == 0, err
    values = dict(line.split(None, 1) for line in out.splitlines())
    assert float(values["m2"]) == pytest.approx(0.115165, abs=1e-6)
    assert float(values["m1"]) == pytest.approx(float(values["m2"]), abs=1e-12)
    assert float(values["society"]) == pytest.approx(69.10, abs=0.01)
    assert float(values["accept_prob"]) == pytest.approx(0.25, abs=1e-12)
    assert values["rule"].strip() == "and"


def test_expect_json_output():
    payload = run_json("expect", "--t2", "0.46", "--rule", "or")
    assert payload["rule"] == "or"
    assert payload["diff"] == pytest.approx(payload["m1"] - payload["m2"], abs=1e-12)


def test_expect_rejects_negative_sigma():
    code, out, err = run("expect", "--sigma", "-1")
    assert code == 1
    assert out == ""
    assert err.startswith("error:")


def test_expect_accepts_infinite_threshold():
    payload = run_json("expect", "--t2", "inf")
    assert payload["m1"] == 0.0
    assert payload["accept_prob"] == 0.0


# ============================================================================
# sweep-t2
# ============================================================================


def test_sweep_t2_reference_curve():
    code, (params, header, rows) = run_csv("sweep-t2")
    assert code == 0
    assert header == ["t2", "m1", "m2", "diff", "society", "accept_prob"]
    assert len(rows) == 601
    assert params["rule"] == "and"

    t2 = column(header, rows, "t2")
    m2 = column(header, rows, "m2")
    diff = column(header, rows, "diff")
    for i in range(len(rows)):
        assert m2[i] == pytest.approx(m2[-1 - i], abs=1e-10)
    assert t2[m2.index(max(m2))] == pytest.approx(0.0, abs=1e-9)
    assert t2[diff.index(min(diff))] == pytest.approx(0.4607, abs=0.01)


def test_sweep_t2_rules_mirror():
    _, (_, header, and_rows) = run_csv("sweep-t2", "--points", "61")
    _, (_, _, or_rows) = run_csv("sweep-t2", "--points", "61", "--rule", "or")
    m1_and = column(header, and_rows, "m1")
    m1_or = column(header, or_rows, "m1")
    for i in range(61):
        assert m1_or[i] == pytest.approx(m1_and[-1 - i], abs=1e-10)


def test_sweep_t2_params_line_reproduces_rows():
    code, (params, header, rows) = run_csv("sweep-t2", "--mu", "0.5", "--g1", "100", "--points", "11")
    assert code == 0
    config = Config.from_mapping(params)
    env = EnvironmentParams(config.mu, config.sigma)
    for row in rows:
        t2 = row[header.index("t2")]
        report = full_report(env, GroupSpec(config.g1, config.t1), GroupSpec(config.g2, t2),
                             VotingRule.parse(config.rule))
        assert row[header.index("m2")] == pytest.approx(report.m2, rel=1e-10, abs=1e-12)
        assert row[header.index("society")] == pytest.approx(report.society, rel=1e-10, abs=1e-9)


def test_sweep_t2_writes_file(tmp_path):
    target = tmp_path / "sweep.csv"
    code, out, err = run("sweep-t2", "--points", "5", "--csv", str(target))
    assert code == 0, err
    assert out == ""
    text = target.read_text(encoding="utf-8")
    assert text.startswith("# params:")
    assert "\r" not in text
    assert len(text.splitlines()) == 7


@pytest.mark.parametrize("argv, expected", [
    (("--from", "3", "--to", "-3"), 1),
    (("--points", "1"), 2),
    (("--points", "many"), 2),
])
def test_sweep_t2_bad_grid(argv, expected):
    code, out, err = run("sweep-t2", *argv)
    assert code == expected


# ============================================================================
# sweep-mu and solve-system
# ============================================================================


def test_sweep_mu_reference_points():
    code, (params, header, rows) = run_csv("sweep-mu", "--from", "-20", "--to", "20", "--points", "5")
    assert code == 0
    mu = column(header, rows, "mu")
    t1 = column(header, rows, "t1")
    t2 = column(header, rows, "t2")
    assert mu == [-20.0, -10.0, 0.0, 10.0, 20.0]
    assert all(column(header, rows, "converged"))
    assert t1[2] == pytest.approx(-Y0_THRESHOLD, abs=1e-4)
    assert t1 == pytest.approx(t2, abs=1e-8)
    assert t1[-1] == pytest.approx(-20.0, abs=0.05)
    assert -0.05 < t1[0] < 0.0


def test_sweep_mu_unanimous_rejection_claims_positive():
    code, (_, header, rows) = run_csv("sweep-mu", "--rule", "or", "--points", "9")
    assert code == 0
    t1 = column(header, rows, "t1")
    assert all(value > 0.0 for value in t1)
    assert t1[len(t1) // 2] == pytest.approx(Y0_THRESHOLD, abs=1e-4)


def test_sweep_mu_reports_non_convergence(monkeypatch):
    monkeypatch.setattr(system_module, "SOLVER_RESIDUAL_TOL", -1.0)
    code, out, err = run("sweep-mu", "--points", "3")
    assert code == 3
    _, header, rows = read_csv(io.StringIO(out))
    assert len(rows) == 3
    assert column(header, rows, "converged") == [0.0, 0.0, 0.0]


def test_solve_system_json():
    payload = run_json("solve-system")
    assert payload["converged"] is True
    assert payload["t1"] == pytest.approx(-Y0_THRESHOLD, abs=1e-4)
    assert payload["t2"] == pytest.approx(payload["t1"], abs=1e-12)


def test_solve_system_lopsided_groups():
    code, out, err = run("solve-system", "--mu", "-10", "--g1", "1", "--g2", "1000")
    assert code == 0, err
    values = dict(line.split(None, 1) for line in out.splitlines())
    assert float(values["residual"]) <= 1e-10


def test_solve_system_non_convergence_exit_code(monkeypatch):
    monkeypatch.setattr(system_module, "SOLVER_RESIDUAL_TOL", -1.0)
    code, out, err = run("solve-system")
    assert code == 3
    assert "error:" in err


# ============================================================================
# optimize
# ============================================================================


def test_optimize_advantage():
    payload = run_json("optimize")
    assert payload["threshold"] == pytest.approx(T2_PLUS, abs=1e-9)
    assert payload["objective"] == "advantage"
    assert abs(payload["stationarity_residual"]) <= 1e-6


def test_optimize_society():
    payload = run_json("optimize", "--objective", "society")
    assert payload["threshold"] == pytest.approx(-T2_PLUS, abs=1e-9)


def test_optimize_smaller_first_group():
    advantage = run_json("optimize", "--g1", "100")
    society = run_json("optimize", "--g1", "100", "--objective", "society")
    assert advantage["threshold"] == pytest.approx(2.0 * 0.3989422804014327, abs=1e-9)
    assert society["threshold"] == pytest.approx(-advantage["threshold"] / 3.0, abs=1e-9)


def test_optimize_with_unreachable_group_one_threshold():
    """Group 1 claiming 1e150 standard deviations above the mean still yields a finite optimum"""

    payload = run_json("optimize", "--t1", "1e150", "--g1", "1", "--sigma", "1")
    assert payload["threshold"] == pytest.approx(1e150, rel=1e-12)
    assert payload["objective_value"] == 0.0


def test_optimize_text_output():
    code, out, err = run("optimize", "--rule", "or")
    assert code == 0, err
    values = dict(line.split(None, 1) for line in out.splitlines())
    assert float(values["threshold"]) == pytest.approx(-T2_PLUS, abs=1e-9)


# ============================================================================
# simulate
# ============================================================================


def test_simulate_json_validates():
    payload = run_json("simulate", "--steps", "20000", "--seed", "11")
    assert set(payload) == {"config", "result", "validation"}
    assert payload["result"]["steps"] == 20_000
    assert payload["validation"]["passed"] is True
    assert payload["config"]["seed"] == 11


def test_simulate_text_has_validation_table():
    code, out, err = run("simulate", "--steps", "5000", "--t2", "0.46")
    assert code == 0, err
    assert "validation (tolerance 4 standard errors)" in out
    assert "accept_prob" in out


def test_simulate_rejects_zero_steps():
    code, out, err = run("simulate", "--steps", "0")
    assert code == 2
    assert "steps" in err


def test_simulate_trajectory_is_reproducible(tmp_path):
    first, second = tmp_path / "a.csv", tmp_path / "b.csv"
    for target in (first, second):
        code, _, err = run("simulate", "--steps", "2000", "--seed", "5", "--csv", str(target))
        assert code == 0, err
    assert first.read_bytes() == second.read_bytes()
    params, header, rows = read_csv(first)
    assert header == ["step", "cap1", "cap2"]
    assert len(rows) == 2000
    assert params["seed"] == "5"


def test_simulate_replications_pool_steps():
    payload = run_json("simulate", "--steps", "3000", "--replications", "3", "--threads", "2")
    assert payload["result"]["steps"] == 9000


# ============================================================================
# Configuration layering and usage errors
# ============================================================================


def test_config_file_and_flags(tmp_path):
    conf = tmp_path / "exp.conf"
    conf.write_text("# experiment\nmu = 1\nsigma = 5\nfrom = -2\n", encoding="utf-8")
    args = build_parser().parse_args(["sweep-t2", "--config", str(conf), "--mu", "2"])
    config = resolve_config(args)
    assert config.mu == 2.0
    assert config.sigma == 5.0
    assert config.start == -2.0
    assert config.g1 == 300


def test_reference_config_files_load():
    root = Path(__file__).parent / "data"
    for name, rule in (("t2_sweep_and.conf", "and"), ("t2_sweep_or.conf", "or")):
        args = build_parser().parse_args(["sweep-t2", "--config", str(root / name)])
        config = resolve_config(args)
        assert config.rule == rule
        assert (config.start, config.stop, config.points) == (-3.0, 3.0, 601)


def test_unknown_config_key(tmp_path):
    conf = tmp_path / "bad.conf"
    conf.write_text("temperature = 3\n", encoding="utf-8")
    code, out, err = run("expect", "--config", str(conf))
    assert code == 2
    assert "temperature" in err


def test_missing_config_file(tmp_path):
    code, out, err = run("expect", "--config", str(tmp_path / "absent.conf"))
    assert code == 2


def test_missing_subcommand():
    code, out, err = run()
    assert code == 2


def test_unknown_rule_flag():
    code, out, err = run("expect", "--rule", "majority")
    assert code == 2
