"""vote_walk - two voting groups controlling a capital random walk in a stochastic environment."""

__version__ = "1.0.0"

from .config import Config, ConfigError, load_config_file
from .consts import PACKAGE_NAME

__all__ = [
    "__version__",
    "Config",
    "ConfigError",
    "load_config_file",
    "PACKAGE_NAME",
]
