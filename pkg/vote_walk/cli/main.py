"""
Command-line front end.

Subcommands: expect, sweep-t2, sweep-mu, optimize, solve-system, simulate.
Exit codes: 0 success, 1 domain error, 2 usage error, 3 solver non-convergence.
"""

from __future__ import annotations

import argparse
import sys
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence, TextIO, Tuple

from .. import __version__
from ..config import Config, ConfigError, load_config_file
from ..consts import (
    DEFAULT_MU_FROM,
    DEFAULT_MU_POINTS,
    DEFAULT_MU_TO,
    DEFAULT_T2_FROM,
    DEFAULT_T2_POINTS,
    DEFAULT_T2_TO,
    EXIT_DOMAIN_ERROR,
    EXIT_NOT_CONVERGED,
    EXIT_OK,
    EXIT_USAGE_ERROR,
)
from ..gaussian import DomainError
from ..model import EnvironmentParams, GroupSpec, VotingRule, full_report
from ..montecarlo import SimConfig, run_replications, trajectory, validate_against_model
from ..optimize import (
    ConvergenceError,
    Objective,
    optimum,
    solve_society_system,
    stationarity_check,
)
from ..utils import configure_logging, exception_notify, format_number, json_dumps, logger
from .csv_io import write_csv
from .sweeps import MU_COLUMNS, T2_COLUMNS, SweepSpec, SweepVariable, mu_sweep_rows, t2_sweep_rows

__all__ = ["build_parser", "resolve_config", "main"]

Handler = Callable[[argparse.Namespace, Config, TextIO], int]

_CONFIG_KEYS = frozenset(Config.__dataclass_fields__)
_SUPPRESS = argparse.SUPPRESS


# ============================================================
# Parser
# ============================================================


def _common_parent() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("--config", metavar="PATH", help="key=value experiment file (overridden by flags)")
    parent.add_argument("-v", "--verbose", action="count", default=0, help="more logging (repeatable)")
    return parent


def _model_parent() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("--mu", type=float, default=_SUPPRESS, help="mean of proposal increments")
    parent.add_argument("--sigma", type=float, default=_SUPPRESS, help="std deviation of proposal increments")
    parent.add_argument("--g1", type=int, default=_SUPPRESS, help="size of group 1")
    parent.add_argument("--g2", type=int, default=_SUPPRESS, help="size of group 2")
    parent.add_argument("--t1", type=float, default=_SUPPRESS, help="claim threshold of group 1")
    parent.add_argument("--t2", type=float, default=_SUPPRESS, help="claim threshold of group 2")
    parent.add_argument("--rule", choices=("and", "or"), default=_SUPPRESS,
                        help="and: both groups must support; or: either group suffices")
    return parent


def _sweep_parent() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("--from", dest="start", type=float, default=_SUPPRESS, help="first grid value")
    parent.add_argument("--to", dest="stop", type=float, default=_SUPPRESS, help="last grid value")
    parent.add_argument("--points", type=int, default=_SUPPRESS, help="number of grid points (>= 2)")
    parent.add_argument("--csv", metavar="PATH", help="write the CSV here instead of stdout")
    return parent


def _json_parent() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("--json", action="store_true", help="print the result as JSON")
    return parent


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vote_walk",
        description="Two-group voting in a stochastic environment: expectations, optima, sweeps and simulation.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    common, model, sweep, as_json = _common_parent(), _model_parent(), _sweep_parent(), _json_parent()

    expect = sub.add_parser("expect", parents=[common, model, as_json], help="expected one-step increments")
    expect.set_defaults(handler=cmd_expect)

    sweep_t2 = sub.add_parser("sweep-t2", parents=[common, model, sweep], help="expectations over a t2 grid (CSV)")
    sweep_t2.set_defaults(handler=cmd_sweep_t2)

    sweep_mu = sub.add_parser("sweep-mu", parents=[common, model, sweep], help="society-optimal thresholds over a mu grid (CSV)")
    sweep_mu.set_defaults(handler=cmd_sweep_mu)

    opt = sub.add_parser("optimize", parents=[common, model, as_json], help="optimal group-2 threshold for fixed t1")
    opt.add_argument("--objective", choices=("advantage", "society"), default=_SUPPRESS)
    opt.set_defaults(handler=cmd_optimize)

    system = sub.add_parser("solve-system", parents=[common, model, as_json], help="jointly society-optimal thresholds")
    system.set_defaults(handler=cmd_solve_system)

    sim = sub.add_parser("simulate", parents=[common, model, as_json], help="Monte-Carlo walk with validation")
    sim.add_argument("--steps", type=int, default=_SUPPRESS, help="proposals per replication")
    sim.add_argument("--seed", type=int, default=_SUPPRESS, help="unsigned 64-bit seed")
    sim.add_argument("--mode", choices=("full", "mean"), default=_SUPPRESS,
                     help="full: draw every member; mean: draw group averages")
    sim.add_argument("--replications", type=int, default=_SUPPRESS)
    sim.add_argument("--threads", type=int, default=_SUPPRESS)
    sim.add_argument("--chunk-size", dest="chunk_size", type=int, default=_SUPPRESS)
    sim.add_argument("--tolerance", type=float, default=_SUPPRESS, help="validation tolerance in standard errors")
    sim.add_argument("--csv", metavar="PATH", help="write per-step cumulative capitals (step, cap1, cap2)")
    sim.set_defaults(handler=cmd_simulate)

    return parser


def resolve_config(args: argparse.Namespace) -> Config:
    """Defaults < config file < flags given on the command line."""
    base: Dict[str, Any] = load_config_file(args.config) if args.config else {}
    overrides = {key: value for key, value in vars(args).items() if key in _CONFIG_KEYS}
    return Config.from_mapping(base, overrides=overrides)


# ============================================================
# Helpers
# ============================================================


def _env(config: Config) -> EnvironmentParams:
    return EnvironmentParams(config.mu, config.sigma)


def _groups(config: Config) -> Tuple[GroupSpec, GroupSpec]:
    return GroupSpec(config.g1, config.t1), GroupSpec(config.g2, config.t2)


def _render(out: TextIO, pairs: Iterable[Tuple[str, Any]]) -> None:
    pairs = list(pairs)
    width = max(len(name) for name, _ in pairs)
    for name, value in pairs:
        text = format_number(value) if isinstance(value, float) else str(value)
        out.write(f"{name.ljust(width)}  {text}\n")


def _model_params(config: Config, *names: str) -> Dict[str, Any]:
    values = config.to_dict()
    return {name: values[name] for name in names}


def _write_table(args: argparse.Namespace, out: TextIO, params, header, rows) -> int:
    if args.csv:
        count = write_csv(args.csv, params, header, rows)
        logger.info(f"Wrote {count} rows to {args.csv}")
    else:
        count = write_csv(out, params, header, rows)
    return count


# ============================================================
# Subcommands
# ============================================================


def cmd_expect(args: argparse.Namespace, config: Config, out: TextIO) -> int:
    g1, g2 = _groups(config)
    report = full_report(_env(config), g1, g2, VotingRule.parse(config.rule))
    if args.json:
        out.write(json_dumps(report.to_dict()) + "\n")
        return EXIT_OK
    _render(out, [
        ("m1", report.m1),
        ("m2", report.m2),
        ("diff", report.diff),
        ("advantage", report.advantage),
        ("society", report.society),
        ("support1", report.support_prob[0]),
        ("support2", report.support_prob[1]),
        ("accept_prob", report.accept_prob),
        ("rule", report.rule.value),
    ])
    return EXIT_OK


def cmd_sweep_t2(args: argparse.Namespace, config: Config, out: TextIO) -> int:
    spec = SweepSpec(
        SweepVariable.T2,
        DEFAULT_T2_FROM if config.start is None else config.start,
        DEFAULT_T2_TO if config.stop is None else config.stop,
        DEFAULT_T2_POINTS if config.points is None else config.points,
    )
    g1, g2 = _groups(config)
    rows = t2_sweep_rows(spec, _env(config), g1, g2, VotingRule.parse(config.rule))
    params = _model_params(config, "mu", "sigma", "g1", "g2", "t1", "rule")
    _write_table(args, out, params, T2_COLUMNS, rows)
    return EXIT_OK


def cmd_sweep_mu(args: argparse.Namespace, config: Config, out: TextIO) -> int:
    spec = SweepSpec(
        SweepVariable.MU,
        DEFAULT_MU_FROM if config.start is None else config.start,
        DEFAULT_MU_TO if config.stop is None else config.stop,
        DEFAULT_MU_POINTS if config.points is None else config.points,
    )
    # validated up front so a bad sigma fails before any row is written
    EnvironmentParams(spec.start, config.sigma)
    rows: List[Tuple[Any, ...]] = list(
        mu_sweep_rows(spec, config.sigma, config.g1, config.g2, VotingRule.parse(config.rule))
    )
    params = _model_params(config, "sigma", "g1", "g2", "rule")
    _write_table(args, out, params, MU_COLUMNS, rows)
    failed = sum(1 for row in rows if not row[-1])
    if failed:
        logger.warning(f"{failed} of {len(rows)} sweep points did not converge")
        return EXIT_NOT_CONVERGED
    return EXIT_OK


def cmd_optimize(args: argparse.Namespace, config: Config, out: TextIO) -> int:
    env = _env(config)
    g1, g2 = _groups(config)
    rule = VotingRule.parse(config.rule)
    objective = Objective.parse(config.objective)
    result = optimum(env, g1, g2.size, rule, objective)
    stationarity = stationarity_check(env, g1, g2, rule, objective, result.threshold)
    if args.json:
        out.write(json_dumps({**result.to_dict(), "stationarity_residual": stationarity}) + "\n")
        return EXIT_OK
    _render(out, [
        ("objective", objective.value),
        ("rule", rule.value),
        ("threshold", result.threshold),
        ("objective_value", result.objective_value),
        ("stationarity_residual", stationarity),
    ])
    return EXIT_OK


def cmd_solve_system(args: argparse.Namespace, config: Config, out: TextIO) -> int:
    solution = solve_society_system(_env(config), config.g1, config.g2, VotingRule.parse(config.rule))
    if args.json:
        out.write(json_dumps(solution.to_dict()) + "\n")
        return EXIT_OK
    _render(out, [
        ("t1", solution.t1),
        ("t2", solution.t2),
        ("society_value", solution.society_value),
        ("iterations", solution.iterations),
        ("residual", solution.residual),
        ("method", solution.method),
    ])
    return EXIT_OK


def cmd_simulate(args: argparse.Namespace, config: Config, out: TextIO) -> int:
    cfg = SimConfig(
        env=_env(config),
        groups=_groups(config),
        rule=VotingRule.parse(config.rule),
        steps=config.steps,
        seed=config.seed,
        mode=config.mode,
        replications=config.replications,
        chunk_size=config.chunk_size,
    )
    result = run_replications(cfg, threads=config.threads)
    validation = validate_against_model(cfg, config.tolerance, result=result)

    if args.csv:
        steps, cap1, cap2 = trajectory(cfg)
        write_csv(args.csv, cfg.to_dict(), ("step", "cap1", "cap2"),
                  zip(steps.tolist(), cap1.tolist(), cap2.tolist()))
        logger.info(f"Wrote trajectory of {cfg.steps} steps to {args.csv}")

    if args.json:
        payload = {"config": cfg.to_dict(), "result": result.to_dict(), "validation": validation.to_dict()}
        out.write(json_dumps(payload) + "\n")
        return EXIT_OK

    _render(out, [
        ("steps", result.steps),
        ("mean_inc1", result.mean_inc[0]),
        ("mean_inc2", result.mean_inc[1]),
        ("stderr1", result.stderr[0]),
        ("stderr2", result.stderr[1]),
        ("accept_rate", result.accept_rate),
        ("diff_mean", result.diff_mean),
        ("society_mean", result.society_mean),
        ("final_capital1", result.final_capital[0]),
        ("final_capital2", result.final_capital[1]),
    ])
    out.write(f"\nvalidation (tolerance {config.tolerance:g} standard errors)\n")
    out.write(f"{'quantity':<12} {'analytic':>16} {'estimate':>16} {'stderr':>12} {'z':>8}  status\n")
    for check in validation.checks:
        status = "ok" if check.passed else "FAIL"
        out.write(
            f"{check.name:<12} {check.analytic:>16.9g} {check.estimate:>16.9g} "
            f"{check.stderr:>12.4g} {check.z:>8.3f}  {status}\n"
        )
    for warning in validation.warnings:
        out.write(f"warning: {warning}\n")
    return EXIT_OK


# ============================================================
# Entry point
# ============================================================


def main(argv: Optional[Sequence[str]] = None, *, out: Optional[TextIO] = None, err: Optional[TextIO] = None) -> int:
    """Run the CLI and return its exit code."""
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE_ERROR

    configure_logging(args.verbose)
    handler: Handler = args.handler
    try:
        with exception_notify(args.command, log_level="debug"):
            config = resolve_config(args)
            return handler(args, config, out)
    except ConfigError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE_ERROR
    except ConvergenceError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_NOT_CONVERGED
    except DomainError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_DOMAIN_ERROR
    except OSError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE_ERROR
