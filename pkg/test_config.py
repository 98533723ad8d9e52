"""Tests for vote_walk.config layering and key=value parsing."""

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from vote_walk.config import Config, ConfigError, load_config_file, parse_config_text
from vote_walk.consts import DEFAULT_SEED, DEFAULT_STEPS


def test_defaults_match_reference_parameters():
    """An empty mapping gives the two-groups-of-300 defaults."""

    config = Config.from_mapping()
    assert (config.mu, config.sigma, config.g1, config.g2) == (0.0, 10.0, 300, 300)
    assert config.rule == "and"
    assert config.steps == DEFAULT_STEPS
    assert config.seed == DEFAULT_SEED
    assert config.start is None and config.points is None


def test_from_mapping_coerces_strings():
    """Values read from a file arrive as strings and are coerced."""

    config = Config.from_mapping(
        {"mu": "-1.5", "g1": "100", "t2": "-inf", "rule": " OR ", "chunk-size": "1024", "to": "4"}
    )
    assert config.mu == -1.5
    assert config.g1 == 100
    assert config.t2 == float("-inf")
    assert config.rule == "or"
    assert config.chunk_size == 1024
    assert config.stop == 4.0


def test_overrides_take_precedence():
    """Overrides win over the base mapping key by key."""

    config = Config.from_mapping({"mu": 1, "sigma": 3}, overrides={"mu": 2})
    assert config.mu == 2.0
    assert config.sigma == 3.0


@pytest.mark.parametrize(
    "mapping",
    [
        {"temperature": 1},
        {"g1": "3.5"},
        {"g1": 2.5},
        {"steps": True},
        {"steps": 0},
        {"points": 1},
        {"seed": -4},
        {"tolerance": -1},
        {"rule": "majority"},
        {"mode": "exact"},
        {"objective": ""},
        {"mu": "high"},
    ],
)
def test_invalid_values_raise_config_error(mapping):
    """Unknown keys, wrong types and out-of-range counts are configuration errors."""

    with pytest.raises(ConfigError):
        Config.from_mapping(mapping)


def test_config_error_is_value_error():
    """Callers catching ValueError also see configuration problems."""

    assert issubclass(ConfigError, ValueError)


def test_physical_parameters_are_not_range_checked():
    """A negative sigma is left for the model layer to reject."""

    assert Config.from_mapping({"sigma": -1}).sigma == -1.0


def test_to_dict_round_trips():
    """to_dict output rebuilds an equal configuration."""

    config = Config.from_mapping({"mu": 0.5, "threads": 2, "start": -1, "stop": 1, "points": 5})
    assert Config.from_mapping(config.to_dict()) == config


def test_parse_config_text_skips_comments():
    """Blank lines and # comments are ignored; dashes in keys become underscores."""

    text = "# header\n\nmu = 0.25\nchunk-size=10\nrule = or # not a comment\n"
    assert parse_config_text(text) == {"mu": "0.25", "chunk_size": "10", "rule": "or # not a comment"}


def test_parse_config_text_reports_line():
    """Malformed lines name their source and line number."""

    with pytest.raises(ConfigError, match=r"exp.conf:2"):
        parse_config_text("mu = 0\nsigma 10\n", source="exp.conf")
    with pytest.raises(ConfigError, match="missing key"):
        parse_config_text("= 3\n")


def test_load_config_file(tmp_path):
    """Files are read as UTF-8; unreadable paths raise ConfigError."""

    path = tmp_path / "run.conf"
    path.write_text("steps = 500\nseed = 9\n", encoding="utf-8")
    config = Config.from_mapping(load_config_file(path))
    assert (config.steps, config.seed) == (500, 9)

    with pytest.raises(ConfigError, match="Cannot read"):
        load_config_file(tmp_path / "missing.conf")
