#!/usr/bin/env python3
"""
Tests for utility layer (vote_walk/utils/) and the CSV helpers (vote_walk/cli/csv_io.py).
Tests logging setup, JSON rendering, exception logging and CSV layout.
"""

import io
import json
import logging
import math
import sys
from enum import Enum
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from vote_walk.cli.csv_io import PARAMS_PREFIX, format_cell, format_params, read_csv, write_csv
from vote_walk.utils import configure_logging, exception_notify, format_number, json_dumps, logger


class Colour(str, Enum):
    RED = "red"


# ============================================================================
# Tests for configure_logging
# ============================================================================


def test_configure_logging_levels():
    """Verbosity maps to WARNING, INFO and DEBUG"""

    assert configure_logging(0).level == logging.WARNING
    assert configure_logging(1).level == logging.INFO
    assert configure_logging(5).level == logging.DEBUG
    configure_logging(0)


def test_configure_logging_adds_one_handler():
    """Repeated calls keep a single package handler"""

    configure_logging(0)
    configure_logging(2)
    ours = [h for h in logger.handlers if getattr(h, "_vote_walk", False)]
    assert len(ours) == 1
    configure_logging(0)


# ============================================================================
# Tests for json_dumps
# ============================================================================


def test_json_dumps_basic():
    """Test basic JSON dumping"""
    data = {"name": "test", "value": 123}
    assert json.loads(json_dumps(data)) == data


def test_json_dumps_non_finite_become_null():
    """NaN and infinities are written as null"""
    result = json_dumps({"a": math.nan, "b": [math.inf, 1.0], "c": (-math.inf,)}, indent=None)
    assert json.loads(result) == {"a": None, "b": [None, 1.0], "c": [None]}


def test_json_dumps_numpy_and_enums():
    """numpy scalars and enums are rendered through their plain values"""
    result = json.loads(json_dumps({"n": np.int64(3), "x": np.float64(0.5), "rule": Colour.RED}))
    assert result == {"n": 3, "x": 0.5, "rule": "red"}


def test_json_dumps_sort_keys():
    """Test JSON dumping with sorted keys"""
    result = json_dumps({"z": 1, "a": 2}, sort_keys=True, indent=None)
    assert result == '{"a": 2, "z": 1}'


def test_json_dumps_rejects_unknown_objects():
    with pytest.raises(TypeError):
        json_dumps({"x": object()})


def test_format_number():
    assert format_number(0.1 + 0.2) == "0.3"
    assert format_number(1 / 3, 4) == "0.3333"
    assert format_number(1e-20) == "1e-20"


# ============================================================================
# Tests for exception_notify context manager
# ============================================================================


def test_exception_notify_no_error():
    """Test exception_notify with no error"""

    with exception_notify("test_operation"):
        value = "success"
    assert value == "success"


def test_exception_notify_with_reraise(caplog):
    """Test exception_notify that re-raises and logs exceptions"""

    with caplog.at_level(logging.ERROR, logger="vote_walk"):
        with pytest.raises(ValueError, match="Test error"):
            with exception_notify("test_operation"):
                raise ValueError("Test error")
    assert "Exception in test_operation: ValueError: Test error" in caplog.text


def test_exception_notify_without_reraise():
    """Test exception_notify that doesn't re-raise"""

    with exception_notify("test_operation", re_raise=False):
        raise ValueError("Test error")


def test_exception_notify_log_level(caplog):
    """The requested level is used for the log record"""

    with caplog.at_level(logging.DEBUG, logger="vote_walk"):
        with exception_notify("sweep", log_level="debug", re_raise=False):
            raise KeyError("k")
    assert [record.levelno for record in caplog.records] == [logging.DEBUG]


# ============================================================================
# Tests for CSV layout
# ============================================================================


def test_format_cell():
    assert format_cell(True) == "1"
    assert format_cell(False) == "0"
    assert format_cell(42) == "42"
    assert format_cell(0.1234567890123456) == "0.123456789012"
    assert format_cell(Colour.RED) == "red"


def test_format_params():
    line = format_params({"mu": 0.0, "g1": 300, "rule": "and", "start": None})
    assert line == f"{PARAMS_PREFIX} mu=0 g1=300 rule=and"
    with pytest.raises(ValueError):
        format_params({"label": "two words"})


def test_write_and_read_csv():
    """The params line, header and rows survive a write and a read"""
    buffer = io.StringIO()
    count = write_csv(buffer, {"sigma": 10.0}, ("x", "y", "ok"), [(1.0, math.inf, True), (2.5, -0.125, False)])
    assert count == 2
    text = buffer.getvalue()
    assert text.splitlines()[:2] == ["# params: sigma=10", "x,y,ok"]
    assert "\r" not in text

    params, header, rows = read_csv(io.StringIO(text))
    assert params == {"sigma": "10"}
    assert header == ["x", "y", "ok"]
    assert rows == [[1.0, math.inf, 1.0], [2.5, -0.125, 0.0]]


def test_read_csv_without_params_line(tmp_path):
    path = tmp_path / "plain.csv"
    path.write_text("a,b\n1,\n", encoding="utf-8")
    params, header, rows = read_csv(path)
    assert params == {}
    assert header == ["a", "b"]
    assert rows[0][0] == 1.0 and math.isnan(rows[0][1])


def test_read_csv_rejects_empty_file():
    with pytest.raises(ValueError):
        read_csv(io.StringIO(""))
