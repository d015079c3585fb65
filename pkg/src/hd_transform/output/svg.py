"""
Minimal line plots as standalone SVG 1.1.

Polylines over a shared x axis, with an axis box and a legend. Each series gets one polyline
per run of finite values, so NaN gaps stay open. Meant for a quick look at a run, not for
publication.
"""

from __future__ import annotations

import logging
from pathlib import Path
from typing import Mapping, Sequence
from xml.sax.saxutils import escape

import numpy as np

from hd_transform.output._file_io import atomic_write_text

logger = logging.getLogger(__name__)

WIDTH = 640
HEIGHT = 400
MARGIN = 48
COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#17becf")


def _bounds(values: np.ndarray) -> tuple[float, float]:
    finite = values[np.isfinite(values)]
    if finite.size == 0:
        return 0.0, 1.0
    lo, hi = float(finite.min()), float(finite.max())
    if hi == lo:
        pad = 0.5 if lo == 0 else abs(lo) * 0.5
        return lo - pad, hi + pad
    return lo, hi


def _finite_runs(values: np.ndarray) -> list[tuple[int, int]]:
    """[start, stop) index ranges of consecutive finite values."""
    edges = np.diff(np.concatenate(([0], np.isfinite(values).astype(np.int8), [0])))
    return list(zip(np.flatnonzero(edges == 1), np.flatnonzero(edges == -1)))


def render_svg(
    x: Sequence[float],
    series: Mapping[str, Sequence[float]],
    title: str = "",
) -> str:
    xs = np.asarray(x, dtype=np.float64)
    if xs.ndim != 1 or xs.size < 2:
        raise ValueError("need at least two x values")
    ys = {name: np.asarray(v, dtype=np.float64) for name, v in series.items()}
    for name, v in ys.items():
        if v.shape != xs.shape:
            raise ValueError(f"series {name!r} has shape {v.shape}, x has {xs.shape}")

    x_lo, x_hi = _bounds(xs)
    y_lo, y_hi = _bounds(np.concatenate(list(ys.values()))) if ys else (0.0, 1.0)
    plot_w = WIDTH - 2 * MARGIN
    plot_h = HEIGHT - 2 * MARGIN

    def px(v: float) -> float:
        return MARGIN + (v - x_lo) / (x_hi - x_lo) * plot_w

    def py(v: float) -> float:
        return HEIGHT - MARGIN - (v - y_lo) / (y_hi - y_lo) * plot_h

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" '
        f'height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect x="{MARGIN}" y="{MARGIN}" width="{plot_w}" height="{plot_h}" '
        'fill="none" stroke="#444"/>',
    ]
    if title:
        parts.append(
            f'<text x="{WIDTH / 2:.1f}" y="{MARGIN / 2:.1f}" text-anchor="middle" '
            f'font-size="14">{escape(title)}</text>'
        )
    for label, anchor, xp, yp in (
        (f"{x_lo:.3g}", "start", MARGIN, HEIGHT - MARGIN / 2),
        (f"{x_hi:.3g}", "end", WIDTH - MARGIN, HEIGHT - MARGIN / 2),
        (f"{y_lo:.3g}", "end", MARGIN - 4, HEIGHT - MARGIN),
        (f"{y_hi:.3g}", "end", MARGIN - 4, MARGIN + 10),
    ):
        parts.append(
            f'<text x="{xp:.1f}" y="{yp:.1f}" text-anchor="{anchor}" font-size="10">'
            f"{label}</text>"
        )

    for i, (name, v) in enumerate(ys.items()):
        color = COLORS[i % len(COLORS)]
        # a non-finite value ends the current segment
        for start, stop in _finite_runs(v):
            points = " ".join(
                f"{px(a):.2f},{py(b):.2f}" for a, b in zip(xs[start:stop], v[start:stop])
            )
            parts.append(
                f'<polyline fill="none" stroke="{color}" stroke-width="1.2" points="{points}"/>'
            )
        ly = MARGIN + 14 + 14 * i
        parts.append(
            f'<text x="{WIDTH - MARGIN - 4}" y="{ly}" text-anchor="end" font-size="11" '
            f'fill="{color}">{escape(name)}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def write_svg(
    path: Path,
    x: Sequence[float],
    series: Mapping[str, Sequence[float]],
    title: str = "",
) -> Path:
    atomic_write_text(path, render_svg(x, series, title))
    logger.info("wrote %s", path)
    return path
