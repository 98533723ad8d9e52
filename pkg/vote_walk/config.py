"""Configuration helpers for vote_walk experiments.

An experiment is described by a flat mapping of parameter names to values.
Values come from three layers, later layers winning:

* the built-in defaults in :mod:`vote_walk.consts`;
* an optional ``key=value`` file (see :func:`load_config_file`);
* explicit command-line flags.

Notes
-----
* Physical parameters (``mu``, ``sigma``, group sizes and thresholds) are only
  type-coerced here. Their domain checks belong to the value types in
  :mod:`vote_walk.model`, so an invalid ``sigma`` surfaces as a domain error
  rather than a configuration error.
* Thresholds accept ``inf`` and ``-inf``.
* Sweep bounds default to ``None``; each sweep substitutes its own grid.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Any, Dict, Mapping, Optional, Sequence, Union

from .consts import (
    DEFAULT_CHUNK_SIZE,
    DEFAULT_GROUP_SIZE,
    DEFAULT_MODE,
    DEFAULT_MU,
    DEFAULT_OBJECTIVE,
    DEFAULT_REPLICATIONS,
    DEFAULT_RULE,
    DEFAULT_SEED,
    DEFAULT_SIGMA,
    DEFAULT_STEPS,
    DEFAULT_THRESHOLD,
    DEFAULT_TOLERANCE_SIGMAS,
)


class ConfigError(ValueError):
    """Raised for malformed configuration input"""


_RULE_CHOICES = ("and", "or")
_MODE_CHOICES = ("full", "mean")

# flag spellings of the sweep bounds
_KEY_ALIASES = {"from": "start", "to": "stop"}
_OBJECTIVE_CHOICES = ("advantage", "society")


@dataclass(frozen=True)
class Config:
    """Resolved experiment configuration."""

    mu: float = DEFAULT_MU
    sigma: float = DEFAULT_SIGMA
    g1: int = DEFAULT_GROUP_SIZE
    g2: int = DEFAULT_GROUP_SIZE
    t1: float = DEFAULT_THRESHOLD
    t2: float = DEFAULT_THRESHOLD
    rule: str = DEFAULT_RULE
    objective: str = DEFAULT_OBJECTIVE
    start: Optional[float] = None
    stop: Optional[float] = None
    points: Optional[int] = None
    steps: int = DEFAULT_STEPS
    seed: int = DEFAULT_SEED
    mode: str = DEFAULT_MODE
    replications: int = DEFAULT_REPLICATIONS
    threads: Optional[int] = None
    chunk_size: int = DEFAULT_CHUNK_SIZE
    tolerance: float = DEFAULT_TOLERANCE_SIGMAS

    @classmethod
    def from_mapping(
        cls,
        mapping: Optional[Mapping[str, Any]] = None,
        *,
        overrides: Optional[Mapping[str, Any]] = None,
    ) -> "Config":
        """Create a :class:`Config` from a mapping.

        Args:
            mapping: Base values, typically read from a config file.
            overrides: Values that take precedence over ``mapping``.

        Raises:
            ConfigError: On unknown keys or values of the wrong type or range.
        """

        combined: Dict[str, Any] = {}
        if mapping:
            combined.update(_normalise_keys(mapping))
        if overrides:
            combined.update(_normalise_keys(overrides))

        unknown = sorted(set(combined) - set(cls.__dataclass_fields__))
        if unknown:
            raise ConfigError(f"Unknown configuration key(s): {', '.join(unknown)}")

        def _get_int(name: str, default: Optional[int], *, minimum: Optional[int] = None) -> Optional[int]:
            value = combined.get(name, default)
            if value is None:
                return None
            if isinstance(value, bool):
                raise ConfigError(f"{name} must be an integer")
            try:
                as_int = int(value)
            except (TypeError, ValueError) as exc:
                raise ConfigError(f"{name} must be an integer, got {value!r}") from exc
            if isinstance(value, float) and value != as_int:
                raise ConfigError(f"{name} must be an integer, got {value!r}")
            if minimum is not None and as_int < minimum:
                raise ConfigError(f"{name} must be >= {minimum}")
            return as_int

        def _get_float(name: str, default: Optional[float], *, minimum: Optional[float] = None) -> Optional[float]:
            value = combined.get(name, default)
            if value is None:
                return None
            if isinstance(value, bool):
                raise ConfigError(f"{name} must be a number")
            try:
                as_float = float(value)
            except (TypeError, ValueError) as exc:
                raise ConfigError(f"{name} must be a number, got {value!r}") from exc
            if minimum is not None and not as_float >= minimum:
                raise ConfigError(f"{name} must be >= {minimum}")
            return as_float

        def _get_str(name: str, default: str) -> str:
            value = combined.get(name, default)
            if value is None:
                value = default
            stripped = str(value).strip()
            if not stripped:
                raise ConfigError(f"{name} cannot be empty")
            return stripped

        def _get_choice(name: str, default: str, choices: Sequence[str]) -> str:
            value = _get_str(name, default).lower()
            if value not in choices:
                raise ConfigError(f"{name} must be one of {', '.join(choices)}; got {value!r}")
            return value

        return cls(
            mu=_get_float("mu", DEFAULT_MU),
            sigma=_get_float("sigma", DEFAULT_SIGMA),
            g1=_get_int("g1", DEFAULT_GROUP_SIZE),
            g2=_get_int("g2", DEFAULT_GROUP_SIZE),
            t1=_get_float("t1", DEFAULT_THRESHOLD),
            t2=_get_float("t2", DEFAULT_THRESHOLD),
            rule=_get_choice("rule", DEFAULT_RULE, _RULE_CHOICES),
            objective=_get_choice("objective", DEFAULT_OBJECTIVE, _OBJECTIVE_CHOICES),
            start=_get_float("start", None),
            stop=_get_float("stop", None),
            points=_get_int("points", None, minimum=2),
            steps=_get_int("steps", DEFAULT_STEPS, minimum=1),
            seed=_get_int("seed", DEFAULT_SEED, minimum=0),
            mode=_get_choice("mode", DEFAULT_MODE, _MODE_CHOICES),
            replications=_get_int("replications", DEFAULT_REPLICATIONS, minimum=1),
            threads=_get_int("threads", None, minimum=1),
            chunk_size=_get_int("chunk_size", DEFAULT_CHUNK_SIZE, minimum=1),
            tolerance=_get_float("tolerance", DEFAULT_TOLERANCE_SIGMAS, minimum=0.0),
        )

    def to_dict(self) -> Dict[str, Any]:
        """Copiable representation of the configuration."""

        return asdict(self)


def _normalise_keys(mapping: Mapping[str, Any]) -> Dict[str, Any]:
    normalised: Dict[str, Any] = {}
    for key, value in mapping.items():
        name = str(key).strip().replace("-", "_")
        normalised[_KEY_ALIASES.get(name, name)] = value
    return normalised


def parse_config_text(text: str, *, source: str = "<config>") -> Dict[str, str]:
    """Parse flat ``key=value`` text; ``#`` starts a comment line."""

    values: Dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"{source}:{lineno}: expected key=value, got {raw!r}")
        key, value = line.split("=", 1)
        key = key.strip().replace("-", "_")
        if not key:
            raise ConfigError(f"{source}:{lineno}: missing key")
        values[key] = value.strip()
    return values


def load_config_file(path: Union[str, Path]) -> Dict[str, str]:
    """Read a flat ``key=value`` experiment file.

    Raises:
        ConfigError: If the file cannot be read or a line is malformed.
    """

    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"Cannot read config file {path}: {exc}") from exc
    return parse_config_text(text, source=str(path))


__all__ = [
    "Config",
    "ConfigError",
    "parse_config_text",
    "load_config_file",
]
