"""
Self-describing CSV files.

Layout::

    # params: mu=0 sigma=10 g1=300 ...
    t2,m1,m2,diff,society,accept_prob
    -3,0.0123...,...

Numbers are written with 12 significant digits, lines end with LF.
"""

from __future__ import annotations

import csv
import io
import math
from pathlib import Path
from typing import Any, Dict, Iterable, List, Mapping, Optional, Sequence, TextIO, Tuple, Union

from ..consts import CSV_SIGNIFICANT_DIGITS
from ..utils import format_number

__all__ = ["PARAMS_PREFIX", "format_cell", "format_params", "write_csv", "read_csv"]

PARAMS_PREFIX = "# params:"


def format_cell(value: Any) -> str:
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return format_number(value, CSV_SIGNIFICANT_DIGITS)
    if hasattr(value, "value"):
        return str(value.value)
    return str(value)


def format_params(params: Mapping[str, Any]) -> str:
    parts = []
    for key, value in params.items():
        if value is None:
            continue
        text = format_cell(value)
        if any(ch.isspace() for ch in text) or "=" in text:
            raise ValueError(f"parameter {key} has an unserialisable value {text!r}")
        parts.append(f"{key}={text}")
    return f"{PARAMS_PREFIX} {' '.join(parts)}"


def write_csv(
    target: Union[str, Path, TextIO],
    params: Mapping[str, Any],
    header: Sequence[str],
    rows: Iterable[Sequence[Any]],
) -> int:
    """Write a parameter line, the column header and ``rows``; returns the row count."""
    if isinstance(target, (str, Path)):
        with open(target, "w", encoding="utf-8", newline="") as handle:
            return write_csv(handle, params, header, rows)

    target.write(format_params(params) + "\n")
    writer = csv.writer(target, lineterminator="\n")
    writer.writerow(header)
    count = 0
    for row in rows:
        writer.writerow([format_cell(value) for value in row])
        count += 1
    return count


def _parse_params(line: str) -> Dict[str, str]:
    params: Dict[str, str] = {}
    for token in line[len(PARAMS_PREFIX):].split():
        key, sep, value = token.partition("=")
        if not sep:
            raise ValueError(f"malformed parameter token {token!r}")
        params[key] = value
    return params


def read_csv(source: Union[str, Path, TextIO]) -> Tuple[Dict[str, str], List[str], List[List[float]]]:
    """Parse a file written by :func:`write_csv` into (params, header, rows)."""
    if isinstance(source, (str, Path)):
        with open(source, "r", encoding="utf-8", newline="") as handle:
            return read_csv(handle)

    first = source.readline().rstrip("\n")
    params: Optional[Dict[str, str]] = None
    if first.startswith(PARAMS_PREFIX):
        params = _parse_params(first)
        body: TextIO = source
    else:
        body = io.StringIO(first + "\n" + source.read())
    reader = csv.reader(body)
    try:
        header = next(reader)
    except StopIteration as exc:
        raise ValueError("CSV has no column header") from exc
    if not header:
        raise ValueError("CSV has no column header")
    rows = [[float(cell) if cell else math.nan for cell in row] for row in reader if row]
    return params or {}, header, rows
