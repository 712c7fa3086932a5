"""Reading configurations and writing reports as JSON."""

from __future__ import annotations

import json
from pathlib import Path

from .field import Field, FieldError
from .geometry import GeometryError, LineConfiguration


class ConfigError(ValueError):
    """A configuration file could not be parsed."""


def parse_config(data: dict, field: Field | None = None) -> LineConfiguration:
    try:
        cfg = LineConfiguration.from_json(data, field)
    except (KeyError, TypeError, ValueError, FieldError, GeometryError) as exc:
        raise ConfigError(f"bad configuration: {exc}") from exc
    if not cfg.lines:
        raise ConfigError("configuration has no lines")
    return cfg


def read_config(path, field: Field | None = None) -> LineConfiguration:
    try:
        text = Path(path).read_text()
        data = json.loads(text)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError("configuration must be a JSON object")
    return parse_config(data, field)


def dumps(obj) -> str:
    """Deterministic JSON text (sorted keys, fixed indentation)."""
    return json.dumps(obj, indent=2, sort_keys=True, default=str)


def write_json(path, obj) -> None:
    Path(path).write_text(dumps(obj) + "\n")


def load_reports(path) -> list:
    """Reports from a file written by the CLI (a single report or a suite)."""
    data = json.loads(Path(path).read_text())
    if isinstance(data, dict) and "reports" in data:
        return list(data["reports"])
    if isinstance(data, list):
        return data
    return [data]
