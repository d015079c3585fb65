"""
normalize: successive approximation of the normalization function.

Writes every iterate n_i and the matching 1~_i on the grid, one column per iteration.
"""

from __future__ import annotations

import logging
from pathlib import Path

import numpy as np

from hd_transform.commands.run_context import RunContext
from hd_transform.core.normalization import iterate_normalization

logger = logging.getLogger(__name__)


def cmd_normalize(ctx: RunContext) -> list[Path]:
    cfg = ctx.config
    base = ctx.base_encoder()
    trace = iterate_normalization(
        base.integration_kernel,
        base.domain,
        cfg["grid_size"],
        cfg["iterations"],
        cfg["tolerance"] or None,
    )
    header = ["x"] + [f"iter_{i}" for i in range(len(trace.iterates))]
    info = {
        "iterations": len(trace.iterates) - 1,
        "residual": trace.residuals[-1],
        "residuals": list(trace.residuals),
    }
    logger.info(
        "normalize: %d iterations, final residual %.3e", info["iterations"], info["residual"]
    )

    grid = trace.grid
    n_rows = np.column_stack([grid, *trace.iterates])
    t_rows = np.column_stack([grid, *trace.tilde_ones])
    written = [
        ctx.write_table(header, n_rows.tolist(), label="n", info=info),
        ctx.write_table(header, t_rows.tolist(), label="tilde-one", info=info),
    ]
    for label, curves in (("n", trace.iterates), ("tilde-one", trace.tilde_ones)):
        plot = ctx.write_plot(
            grid, {h: c for h, c in zip(header[1:], curves)}, label=label
        )
        if plot:
            written.append(plot)
    return written
