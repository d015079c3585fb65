"""
Result tables.

Layout: one '#key=value' line per metadata entry, then a header row, then data rows.
Floats are written with repr so values survive a round trip exactly.
"""

from __future__ import annotations

import csv
import io
import logging
from pathlib import Path
from typing import Any, Iterable, Mapping, Sequence

import numpy as np

from hd_transform.output._file_io import atomic_write_text

logger = logging.getLogger(__name__)


def _cell(value: Any) -> str:
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    if isinstance(value, (int, np.integer)) and not isinstance(value, bool):
        return str(int(value))
    return str(value)


def render_csv(
    metadata: Mapping[str, str],
    header: Sequence[str],
    rows: Iterable[Sequence[Any]],
) -> str:
    buf = io.StringIO()
    for key, value in metadata.items():
        if "\n" in str(value) or "=" in key:
            raise ValueError(f"metadata entry {key!r} cannot be written on one line")
        buf.write(f"#{key}={value}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    width = len(header)
    for row in rows:
        if len(row) != width:
            raise ValueError(f"row has {len(row)} cells, header has {width}")
        writer.writerow([_cell(v) for v in row])
    return buf.getvalue()


def write_csv(
    path: Path,
    metadata: Mapping[str, str],
    header: Sequence[str],
    rows: Iterable[Sequence[Any]],
) -> Path:
    atomic_write_text(path, render_csv(metadata, header, rows))
    logger.info("wrote %s", path)
    return path


def read_csv(path: Path) -> tuple[dict[str, str], list[str], np.ndarray]:
    """Read a table written by write_csv: (metadata, header, float rows)."""
    metadata: dict[str, str] = {}
    body: list[str] = []
    for line in path.read_text(encoding="utf-8").splitlines():
        if line.startswith("#") and not body:
            key, _, value = line[1:].partition("=")
            metadata[key] = value
        else:
            body.append(line)
    if not body:
        raise ValueError(f"{path} has no header row")
    reader = csv.reader(body)
    header = next(reader)
    data = [[float(c) for c in row] for row in reader if row]
    return metadata, header, np.asarray(data, dtype=np.float64).reshape(-1, len(header))
