"""
Parsing helpers for subcommand inputs given as config strings or small CSV tables.

Pure functions apart from reading the named files.
"""

from __future__ import annotations

import csv
from pathlib import Path

import numpy as np

from hd_transform.config import ConfigError


def parse_bcs(raw: str) -> tuple[tuple[float, int, float], ...]:
    """'x:order:value;x:order:value' -> ((x, order, value), ...)."""
    out = []
    for item in (p.strip() for p in raw.split(";")):
        if not item:
            continue
        parts = item.split(":")
        if len(parts) != 3:
            raise ConfigError(f"boundary condition must be x:order:value, got {item!r}")
        try:
            x, order, value = float(parts[0]), int(parts[1]), float(parts[2])
        except ValueError as exc:
            raise ConfigError(f"invalid boundary condition {item!r}: {exc}") from exc
        if order < 0:
            raise ConfigError(f"boundary condition order must be >= 0, got {order}")
        out.append((x, order, value))
    return tuple(out)


def _read_rows(path: Path) -> list[list[str]]:
    if not path.is_file():
        raise ConfigError(f"table not found: {path}")
    with path.open(newline="", encoding="utf-8") as fh:
        return [row for row in csv.reader(fh) if row and not row[0].startswith("#")]


def _floats(cells: list[str], path: Path) -> list[float]:
    try:
        return [float(c) for c in cells]
    except ValueError as exc:
        raise ConfigError(f"{path}: {exc}") from exc


def read_kernel_table(path: Path) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Kernel k(y, x) on a grid.

    First row: a corner cell, then the x values. Following rows: the y value, then k(y, x_j).
    Returns (ys, xs, table) with table[i, j] = k(ys[i], xs[j]).
    """
    rows = _read_rows(path)
    if len(rows) < 3:
        raise ConfigError(f"{path}: kernel table needs a header row and at least two rows")
    xs = _floats(rows[0][1:], path)
    ys, table = [], []
    for row in rows[1:]:
        values = _floats(row, path)
        if len(values) != len(xs) + 1:
            raise ConfigError(f"{path}: row for y={row[0]} has {len(values) - 1} values")
        ys.append(values[0])
        table.append(values[1:])
    return np.array(ys), np.array(xs), np.array(table)


def read_rhs_table(path: Path) -> tuple[np.ndarray, np.ndarray]:
    """Two columns x, b(x) after a header row."""
    rows = _read_rows(path)
    if len(rows) < 3:
        raise ConfigError(f"{path}: rhs table needs a header row and at least two rows")
    data = [_floats(row, path) for row in rows[1:]]
    if any(len(r) != 2 for r in data):
        raise ConfigError(f"{path}: rhs table must have exactly two columns")
    arr = np.array(data)
    return arr[:, 0], arr[:, 1]
