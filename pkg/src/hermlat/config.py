"""Runtime settings read from the environment or an optional YAML file."""

import os
from dataclasses import dataclass, replace
from pathlib import Path

import yaml

DEFAULT_PRECISION = 128
DEFAULT_NODE_BUDGET = 10**7


@dataclass(frozen=True)
class Settings:
    precision: int = DEFAULT_PRECISION
    node_budget: int = DEFAULT_NODE_BUDGET


def load_settings(config_path=None, environ=None):
    """Merge defaults, an optional config file and environment variables.

    Environment variables win over the file. Keys are the variable names
    (``HERMLAT_PRECISION``, ``HERMLAT_NODE_BUDGET``) in both places.
    """
    environ = os.environ if environ is None else environ
    s = Settings()
    path = config_path or environ.get("HERMLAT_CONFIG")
    if path:
        data = yaml.safe_load(Path(path).read_text()) or {}
        s = _apply(s, data)
    return _apply(s, environ)


def _apply(s, mapping):
    if "HERMLAT_PRECISION" in mapping:
        s = replace(s, precision=int(mapping["HERMLAT_PRECISION"]))
    if "HERMLAT_NODE_BUDGET" in mapping:
        s = replace(s, node_budget=int(float(mapping["HERMLAT_NODE_BUDGET"])))
    if s.precision < 53:
        raise ValueError("HERMLAT_PRECISION must be at least 53 bits")
    if s.node_budget < 1:
        raise ValueError("HERMLAT_NODE_BUDGET must be positive")
    return s


_current = None


def settings():
    global _current
    if _current is None:
        _current = load_settings()
    return _current


def set_settings(s):
    global _current
    _current = s
