#!/usr/bin/env python3
"""
Sweep data generator

Writes the four sweep CSVs at the reference parameters
(mu=0 for the threshold sweeps, sigma=10, two groups of 300):

    t2_sweep_and.csv  expectations over t2, unanimous acceptance
    mu_sweep_and.csv  society-optimal thresholds over mu, unanimous acceptance
    t2_sweep_or.csv   expectations over t2, unanimous rejection
    mu_sweep_or.csv   society-optimal thresholds over mu, unanimous rejection

Usage:
    python scripts/gen_sweep_data.py OUT_DIR
"""

import argparse
import sys
from pathlib import Path
from typing import List, Optional

sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from vote_walk.cli import MU_COLUMNS, T2_COLUMNS, SweepSpec, SweepVariable, mu_sweep_rows, t2_sweep_rows, write_csv
from vote_walk.consts import (
    DEFAULT_GROUP_SIZE,
    DEFAULT_MU,
    DEFAULT_MU_FROM,
    DEFAULT_MU_POINTS,
    DEFAULT_MU_TO,
    DEFAULT_SIGMA,
    DEFAULT_T2_FROM,
    DEFAULT_T2_POINTS,
    DEFAULT_T2_TO,
    DEFAULT_THRESHOLD,
    EXIT_NOT_CONVERGED,
    EXIT_OK,
)
from vote_walk.model import EnvironmentParams, GroupSpec, VotingRule

SWEEPS = {
    "t2_sweep_and": ("t2", VotingRule.UNANIMOUS_ACCEPTANCE),
    "mu_sweep_and": ("mu", VotingRule.UNANIMOUS_ACCEPTANCE),
    "t2_sweep_or": ("t2", VotingRule.UNANIMOUS_REJECTION),
    "mu_sweep_or": ("mu", VotingRule.UNANIMOUS_REJECTION),
}


def write_t2_sweep(path: Path, rule: VotingRule) -> int:
    """t2 sweep; returns the number of non-converged rows (always 0)"""
    spec = SweepSpec(SweepVariable.T2, DEFAULT_T2_FROM, DEFAULT_T2_TO, DEFAULT_T2_POINTS)
    env = EnvironmentParams(DEFAULT_MU, DEFAULT_SIGMA)
    g1 = GroupSpec(DEFAULT_GROUP_SIZE, DEFAULT_THRESHOLD)
    g2 = GroupSpec(DEFAULT_GROUP_SIZE, DEFAULT_THRESHOLD)
    params = {"mu": env.mu, "sigma": env.sigma, "g1": g1.size, "g2": g2.size, "t1": g1.threshold, "rule": rule.value}
    write_csv(path, params, T2_COLUMNS, t2_sweep_rows(spec, env, g1, g2, rule))
    return 0


def write_mu_sweep(path: Path, rule: VotingRule) -> int:
    """mu sweep; returns the number of non-converged rows"""
    spec = SweepSpec(SweepVariable.MU, DEFAULT_MU_FROM, DEFAULT_MU_TO, DEFAULT_MU_POINTS)
    rows = list(mu_sweep_rows(spec, DEFAULT_SIGMA, DEFAULT_GROUP_SIZE, DEFAULT_GROUP_SIZE, rule))
    params = {"sigma": DEFAULT_SIGMA, "g1": DEFAULT_GROUP_SIZE, "g2": DEFAULT_GROUP_SIZE, "rule": rule.value}
    write_csv(path, params, MU_COLUMNS, rows)
    return sum(1 for row in rows if not row[-1])


def main(argv: Optional[List[str]] = None) -> int:
    parser = argparse.ArgumentParser(description="Write the sweep CSVs")
    parser.add_argument("out_dir", metavar="OUT_DIR", help="output directory (created if missing)")
    args = parser.parse_args(argv)

    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    failed = 0
    for name, (variable, rule) in SWEEPS.items():
        path = out_dir / f"{name}.csv"
        if variable == "t2":
            failed += write_t2_sweep(path, rule)
        else:
            failed += write_mu_sweep(path, rule)
        print(f"wrote {path}")

    if failed:
        print(f"{failed} rows did not converge", file=sys.stderr)
        return EXIT_NOT_CONVERGED
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
