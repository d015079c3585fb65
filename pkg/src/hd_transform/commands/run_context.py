"""
Run context shared by the subcommands.

Carries the resolved config and output paths, builds encoders and quadratures from config
keys, and writes tables and plots. Every table gets the resolved config as '#key=value'
lines followed by run results as '#info.<name>=value' lines.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Iterable, Mapping, Optional, Sequence

from hd_transform.config import INFO_PREFIX, RunConfig, format_value
from hd_transform.core.encoder_config import encoder_from_config
from hd_transform.core.encodings import Encoder
from hd_transform.core.normalization import NormalizedEncoder, normalize_encoder
from hd_transform.core.quadrature import Quadrature
from hd_transform.output.csv_writer import write_csv
from hd_transform.output.svg import write_svg
from hd_transform.paths import OutputPaths

logger = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True)
class RunContext:
    config: RunConfig
    paths: OutputPaths

    @property
    def command(self) -> str:
        return self.config.command

    @property
    def threads(self) -> int:
        return int(self.config["threads"])

    def base_encoder(
        self,
        *,
        dim: Optional[int] = None,
        length_scale: Optional[float] = None,
        seed: Optional[int] = None,
        kind: Optional[str] = None,
    ) -> Encoder:
        """Encoder from the config's encoder keys; keyword arguments override single keys."""
        cfg = self.config
        spec: dict[str, Any] = {
            "type": kind or cfg["encoder"],
            "a": cfg["a"],
            "b": cfg["b"],
            "lambda": cfg["lambda"] if length_scale is None else length_scale,
            "dim": cfg["dim"] if dim is None else dim,
            "seed": cfg["seed"] if seed is None else seed,
            "n_cells": cfg.get("n_cells", 2),
            "tau": cfg.get("tau") or None,
            "epsilon": cfg.get("epsilon") or None,
        }
        return encoder_from_config(spec)

    def normalize(self, base: Encoder) -> NormalizedEncoder:
        tolerance = self.config["tolerance"] or None
        return normalize_encoder(
            base, self.config["grid_size"], self.config["iterations"], tolerance
        )

    def quadrature(self, enc: NormalizedEncoder) -> Quadrature:
        """quad_points midpoint nodes, or 0 for the length-scale default."""
        n = self.config["quad_points"]
        if n:
            return Quadrature.midpoint(enc.domain, n)
        return Quadrature.for_length_scale(enc.domain, enc.length_scale)

    def write_table(
        self,
        header: Sequence[str],
        rows: Iterable[Sequence[Any]],
        *,
        label: str = "",
        info: Optional[Mapping[str, Any]] = None,
    ) -> Path:
        metadata = self.config.as_metadata()
        for key, value in (info or {}).items():
            metadata[f"{INFO_PREFIX}{key}"] = format_value(value)
        return write_csv(self.paths.csv_path(self.command, label), metadata, header, rows)

    def write_plot(
        self,
        x: Sequence[float],
        series: Mapping[str, Sequence[float]],
        *,
        label: str = "",
        title: str = "",
    ) -> Optional[Path]:
        """SVG next to the table, only when the svg key is set."""
        if not self.config["svg"]:
            return None
        path = self.paths.svg_path(self.command, label)
        return write_svg(path, x, series, title or self.paths.stem(self.command, label))
