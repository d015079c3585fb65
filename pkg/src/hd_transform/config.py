"""
Run configuration for the hd-transform CLI.

A run is one subcommand with a flat set of typed settings. Values are layered
(lowest -> highest):
1) per-command defaults (core.config._validation.COMMAND_DEFAULTS)
2) a config file given with --config (KEY=VALUE lines, or the '#key=value' header of a CSV
   written by a previous run)
3) command-line overrides (--set key=value and the dedicated flags)

The resolved config is echoed into every CSV it produces, so feeding that CSV back through
--config reproduces the run.
"""

from __future__ import annotations

import io
from dataclasses import dataclass, field
from importlib.metadata import PackageNotFoundError, version as _pkg_version
from pathlib import Path
from types import MappingProxyType
from typing import Any, Mapping, Optional

from dotenv import dotenv_values

from hd_transform.core.config._validation import (
    ALLOWED_KEYS,
    COMMAND_DEFAULTS,
    COMMANDS,
    parse_value,
    validate,
)

# keys written to CSV headers that are not settings; ignored when read back
INFO_PREFIX = "info."


class ConfigError(ValueError):
    """Raised when configuration is missing or invalid."""


def package_version() -> str:
    try:
        return _pkg_version("hd-transform")
    except PackageNotFoundError:
        return "0.0.0+dev"


def format_value(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, (list, tuple)):
        return ",".join(format_value(v) for v in value)
    return str(value)


@dataclass(frozen=True, slots=True)
class RunConfig:
    command: str
    values: Mapping[str, Any] = field(default_factory=dict)

    def __getitem__(self, key: str) -> Any:
        try:
            return self.values[key]
        except KeyError:
            raise ConfigError(f"{self.command} has no setting {key!r}") from None

    def get(self, key: str, default: Any = None) -> Any:
        return self.values.get(key, default)

    def as_metadata(self) -> dict[str, str]:
        """Ordered key -> string, command first, then keys in schema order."""
        out = {"command": self.command}
        for key in ALLOWED_KEYS:
            if key in self.values:
                out[key] = format_value(self.values[key])
        return out


def _read_config_text(path: Path) -> str:
    text = path.read_text(encoding="utf-8")
    if path.suffix.lower() != ".csv":
        return text
    # CSV output: settings live in the leading '#key=value' lines
    lines = []
    for line in text.splitlines():
        if not line.startswith("#"):
            break
        lines.append(line[1:])
    return "\n".join(lines)


def read_config_file(path: Path) -> dict[str, str]:
    """Parse KEY=VALUE pairs from path. Keys are lower-cased."""
    if not path.is_file():
        raise ConfigError(f"config file not found: {path}")
    raw = dotenv_values(stream=io.StringIO(_read_config_text(path)))
    return {k.strip().lower(): ("" if v is None else v) for k, v in raw.items()}


def _layer(
    command: str, target: dict[str, Any], source: Mapping[str, Any], origin: str
) -> None:
    for key, raw in source.items():
        if key.startswith(INFO_PREFIX):
            continue
        if key == "command":
            if raw != command:
                raise ConfigError(f"{origin} was written by {raw!r}, not {command!r}")
            continue
        if key not in target:
            raise ConfigError(f"{origin}: {key!r} is not a setting of {command}")
        ok, value = parse_value(key, raw)
        if not ok:
            raise ConfigError(f"{origin}: {value}")
        target[key] = value


def load_run_config(
    command: str,
    config_path: Optional[Path] = None,
    overrides: Optional[Mapping[str, Any]] = None,
) -> RunConfig:
    """
    Resolve defaults, file and overrides for command into a validated RunConfig.

    Raises ConfigError on unknown commands or keys, unparsable values and failed validation.
    """
    if command not in COMMANDS:
        raise ConfigError(f"unknown command: {command}")

    values: dict[str, Any] = {
        k: (list(v) if isinstance(v, list) else v) for k, v in COMMAND_DEFAULTS[command].items()
    }
    if config_path is not None:
        _layer(command, values, read_config_file(config_path), str(config_path))
    if overrides:
        _layer(command, values, overrides, "command line")

    ok, error = validate(values)
    if not ok:
        raise ConfigError(error or "invalid config")
    return RunConfig(command=command, values=MappingProxyType(values))


def parse_assignments(items: Optional[list[str]]) -> dict[str, str]:
    """Turn ['key=value', ...] from --set into a dict."""
    out: dict[str, str] = {}
    for item in items or ():
        key, sep, value = item.partition("=")
        if not sep or not key.strip():
            raise ConfigError(f"--set expects key=value, got {item!r}")
        out[key.strip().lower()] = value.strip()
    return out
