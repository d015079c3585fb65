"""
kernels: slices of the expected kernel k(x, x') and the normalized kernel for fixed x'.

The slice table is long-format (one row per x' and x) so its columns do not depend on how
many x' values are requested. A second table lists the quadrature area of each normalized
slice, which should be close to one.
"""

from __future__ import annotations

import logging
from pathlib import Path

import numpy as np

from hd_transform.commands.run_context import RunContext
from hd_transform.core.quadrature import trapezoid_weights, uniform_grid

logger = logging.getLogger(__name__)


def cmd_kernels(ctx: RunContext) -> list[Path]:
    cfg = ctx.config
    base = ctx.base_encoder()
    enc = ctx.normalize(base)
    domain = base.domain
    for xp in cfg["x_primes"]:
        domain.check(xp)

    xs = uniform_grid(domain, cfg["eval_points"])
    weights = trapezoid_weights(xs)
    rows = []
    areas = []
    raw_series: dict[str, np.ndarray] = {}
    norm_series: dict[str, np.ndarray] = {}
    for xp in cfg["x_primes"]:
        raw = np.asarray(base.expected_kernel(xs, xp), dtype=np.float64)
        normalized = np.asarray(enc.normalized_kernel(xs, xp), dtype=np.float64)
        area = float(np.sum(weights * normalized))
        areas.append([xp, area])
        rows.extend([xp, x, k, kn] for x, k, kn in zip(xs, raw, normalized))
        raw_series[f"x'={xp:g}"] = raw
        norm_series[f"x'={xp:g}"] = normalized
        logger.debug("kernel slice x'=%g area=%.4f", xp, area)

    info = {"residual": getattr(enc.norm, "residual", 0.0)}
    written = [
        ctx.write_table(["x_prime", "x", "kernel", "normalized_kernel"], rows, info=info),
        ctx.write_table(["x_prime", "area"], areas, label="areas", info=info),
    ]
    for label, series in (("kernel", raw_series), ("normalized", norm_series)):
        plot = ctx.write_plot(xs, series, label=label)
        if plot:
            written.append(plot)
    return written
