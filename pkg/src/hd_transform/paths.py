"""
Output locations for CLI runs.

Everything a run writes goes under one output directory: the config's output key if set,
else HDT_OUTPUT_DIR, else ./hdt-output. Each artifact is <command>[-<label>].csv with an
optional .svg sibling.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

OUTPUT_DIR_ENV = "HDT_OUTPUT_DIR"
DEFAULT_OUTPUT_DIR = "hdt-output"


@dataclass(frozen=True, slots=True)
class OutputPaths:
    """Immutable output layout rooted at base_dir."""

    base_dir: Path

    def stem(self, command: str, label: str = "") -> str:
        return f"{command}-{label}" if label else command

    def csv_path(self, command: str, label: str = "") -> Path:
        return self.base_dir / f"{self.stem(command, label)}.csv"

    def svg_path(self, command: str, label: str = "") -> Path:
        return self.base_dir / f"{self.stem(command, label)}.svg"


def build_paths(base_dir: Optional[Path] = None) -> OutputPaths:
    """
    Build OutputPaths.

    Args:
        base_dir: Output directory. Defaults to HDT_OUTPUT_DIR, then ./hdt-output.
    """
    if base_dir is None:
        base_dir = Path(os.environ.get(OUTPUT_DIR_ENV, "") or DEFAULT_OUTPUT_DIR)
    return OutputPaths(base_dir=Path(base_dir))


def ensure_dirs(paths: OutputPaths) -> None:
    """Create the output directory. Raises OSError when that is not possible."""
    paths.base_dir.mkdir(parents=True, exist_ok=True)
