"""
Command-line interface.
Provides the argparse front end, the parameter sweeps and the CSV format.
"""

from .csv_io import format_params, write_csv, read_csv
from .sweeps import (
    SweepError,
    SweepVariable,
    SweepSpec,
    T2_COLUMNS,
    MU_COLUMNS,
    t2_sweep_rows,
    mu_sweep_rows,
)
from .main import build_parser, resolve_config, main

__all__ = [
    "format_params",
    "write_csv",
    "read_csv",
    "SweepError",
    "SweepVariable",
    "SweepSpec",
    "T2_COLUMNS",
    "MU_COLUMNS",
    "t2_sweep_rows",
    "mu_sweep_rows",
    "build_parser",
    "resolve_config",
    "main",
]
