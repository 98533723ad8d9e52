"""
Shared utility helpers for vote_walk.
Provides the package logger, JSON rendering and exception logging helpers.
"""

import json
import logging
import math
import sys
from contextlib import contextmanager
from typing import Any, Iterator, Optional

__all__ = [
    "logger",
    "configure_logging",
    "json_dumps",
    "exception_notify",
    "format_number",
]

logger = logging.getLogger("vote_walk")

_LOG_FORMAT = "%(levelname)s %(name)s: %(message)s"


def configure_logging(verbosity: int = 0) -> logging.Logger:
    """
    Attach a single stderr handler to the package logger.

    Args:
        verbosity: 0 -> WARNING, 1 -> INFO, 2 or more -> DEBUG

    Returns:
        The configured package logger
    """
    if verbosity >= 2:
        level = logging.DEBUG
    elif verbosity == 1:
        level = logging.INFO
    else:
        level = logging.WARNING

    if not any(getattr(h, "_vote_walk", False) for h in logger.handlers):
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(logging.Formatter(_LOG_FORMAT))
        handler._vote_walk = True  # type: ignore[attr-defined]
        logger.addHandler(handler)

    logger.setLevel(level)
    return logger


def _json_default(obj: Any) -> Any:
    # numpy scalars and enums reach the renderer from result objects
    if hasattr(obj, "item"):
        return obj.item()
    if hasattr(obj, "value"):
        return obj.value
    if hasattr(obj, "to_dict"):
        return obj.to_dict()
    raise TypeError(f"Object of type {type(obj).__name__} is not JSON serializable")


def _scrub(obj: Any) -> Any:
    if isinstance(obj, float) and not math.isfinite(obj):
        return None
    if isinstance(obj, dict):
        return {k: _scrub(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_scrub(v) for v in obj]
    return obj


def json_dumps(
    obj: Any,
    ensure_ascii: bool = False,
    indent: Optional[int] = 2,
    sort_keys: bool = False,
    **kwargs: Any,
) -> str:
    """
    Dump object to JSON string with the package's common settings.

    Non-finite floats are written as ``null`` so the output stays strict JSON.

    Args:
        obj: Object to serialize
        ensure_ascii: Whether to escape non-ASCII characters (default: False)
        indent: Number of spaces for indentation (default: 2)
        sort_keys: Whether to sort dictionary keys (default: False)
        **kwargs: Additional arguments to json.dumps

    Returns:
        JSON string

    Examples:
        >>> json_dumps({"m2": 0.5, "rule": "and"}, indent=None)
        '{"m2": 0.5, "rule": "and"}'
    """
    return json.dumps(
        _scrub(obj),
        ensure_ascii=ensure_ascii,
        indent=indent,
        sort_keys=sort_keys,
        default=_json_default,
        allow_nan=False,
        **kwargs,
    )


def format_number(value: float, digits: int = 12) -> str:
    """Render a float with ``digits`` significant digits."""
    return format(float(value), f".{digits}g")


@contextmanager
def exception_notify(
    context_name: str = "Operation",
    log_level: str = "error",
    re_raise: bool = True,
) -> Iterator[None]:
    """
    Context manager for exception handling with logging.

    Args:
        context_name: Name of the context for logging
        log_level: Log level ("debug", "info", "warning", "error")
        re_raise: Whether to re-raise caught exceptions

    Yields:
        None

    Raises:
        Exception: If re_raise=True and an exception occurs

    Examples:
        >>> with exception_notify("sweep-mu"):
        ...     rows = build_rows()
    """
    try:
        yield
    except Exception as e:
        log_func = getattr(logger, log_level, logger.error)
        log_func(f"Exception in {context_name}: {type(e).__name__}: {e}")

        if re_raise:
            raise
