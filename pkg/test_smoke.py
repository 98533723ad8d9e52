#!/usr/bin/env python3
"""
Smoke tests for vote_walk.
Runs every layer once at the reference parameters and checks they agree.
"""

import io
import json
import subprocess
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

import vote_walk
from vote_walk.cli import main as cli_main
from vote_walk.model import EnvironmentParams, GroupSpec, VotingRule, full_report
from vote_walk.montecarlo import SimConfig, validate_against_model
from vote_walk.optimize import Objective, optimum, solve_society_system

ROOT = Path(__file__).parent


def test_analytic_layers():
    """Closed-form report, both optima and the joint system at the reference point"""
    print("=" * 60)
    print("Test: analytic layers")
    print("=" * 60)

    env = EnvironmentParams(0.0, 10.0)
    g1 = GroupSpec(300, 0.0)
    report = full_report(env, g1, GroupSpec(300, 0.0), VotingRule.UNANIMOUS_ACCEPTANCE)
    assert abs(report.m2 - 0.115165) < 1e-6
    print(f"✓ m2 = {report.m2:.6f}")

    advantage = optimum(env, g1, 300, "and", Objective.ADVANTAGE)
    society = optimum(env, g1, 300, "and", Objective.SOCIETY)
    assert abs(advantage.threshold + society.threshold) < 1e-12
    print(f"✓ optima {advantage.threshold:.6f} / {society.threshold:.6f}")

    solution = solve_society_system(env, 300, 300, "and")
    assert solution.converged
    print(f"✓ joint thresholds ({solution.t1:.5f}, {solution.t2:.5f})")

    print("✅ Analytic layers passed\n")


def test_simulation_layer():
    """A short walk validates against the closed form"""
    print("=" * 60)
    print("Test: simulation layer")
    print("=" * 60)

    cfg = SimConfig(
        env=EnvironmentParams(0.0, 10.0),
        groups=(GroupSpec(300, 0.0), GroupSpec(300, 0.46)),
        rule="and",
        steps=50_000,
        seed=2024,
    )
    report = validate_against_model(cfg)
    assert report.passed, report.to_dict()
    print(f"✓ {len(report.checks)} checks within {report.tolerance_sigmas:g} standard errors")

    print("✅ Simulation layer passed\n")


def test_cli_in_process():
    """Every subcommand exits 0 at small sizes"""
    print("=" * 60)
    print("Test: CLI")
    print("=" * 60)

    commands = [
        ["expect"],
        ["sweep-t2", "--points", "7"],
        ["sweep-mu", "--points", "3"],
        ["optimize", "--objective", "society"],
        ["solve-system", "--rule", "or"],
        ["simulate", "--steps", "2000", "--mode", "full", "--g1", "20", "--g2", "30"],
    ]
    for argv in commands:
        out, err = io.StringIO(), io.StringIO()
        code = cli_main(argv, out=out, err=err)
        assert code == 0, (argv, err.getvalue())
        assert out.getvalue()
        print(f"✓ {' '.join(argv)}")

    print("✅ CLI passed\n")


def test_entry_points():
    """`python -m vote_walk` and main.py both reach the CLI"""
    print("=" * 60)
    print("Test: entry points")
    print("=" * 60)

    version = subprocess.run(
        [sys.executable, "-m", "vote_walk", "--version"],
        cwd=ROOT, capture_output=True, text=True, timeout=120,
    )
    assert version.returncode == 0
    assert vote_walk.__version__ in version.stdout
    print(f"✓ {version.stdout.strip()}")

    expect = subprocess.run(
        [sys.executable, str(ROOT / "main.py"), "expect", "--json"],
        cwd=ROOT, capture_output=True, text=True, timeout=120,
    )
    assert expect.returncode == 0, expect.stderr
    assert json.loads(expect.stdout)["rule"] == "and"
    print("✓ main.py expect --json")

    usage = subprocess.run(
        [sys.executable, "-m", "vote_walk", "expect", "--sigma", "0"],
        cwd=ROOT, capture_output=True, text=True, timeout=120,
    )
    assert usage.returncode == 1
    assert usage.stderr.startswith("error:")
    print("✓ domain errors exit 1")

    print("✅ Entry points passed\n")


def main():
    """Run all smoke tests"""
    print("\n" + "=" * 60)
    print("VOTE WALK - SMOKE TESTS")
    print("=" * 60 + "\n")

    try:
        test_analytic_layers()
        test_simulation_layer()
        test_cli_in_process()
        test_entry_points()
    except AssertionError as e:
        print(f"\n❌ Test assertion failed: {e}")
        import traceback
        traceback.print_exc()
        return 1

    print("=" * 60)
    print("✅ ALL SMOKE TESTS PASSED")
    print("=" * 60 + "\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
