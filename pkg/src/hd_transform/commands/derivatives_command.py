"""
derivatives: first and second derivatives of a single encoding component.

The step encoder is differentiated with finite differences of step fd_step, the sigmoid
encoder exactly. Both use the unnormalized components so the curves show the raw process.
With rescale each column is divided by its largest magnitude.
"""

from __future__ import annotations

import logging
from pathlib import Path

import numpy as np

from hd_transform.commands.run_context import RunContext
from hd_transform.core.calculus import (
    EXACT_SIGMOID,
    FINITE_DIFFERENCE,
    DerivativeSpec,
    derivative_components,
)
from hd_transform.core.normalization import ConstantNormalization, NormalizedEncoder
from hd_transform.core.transform import evaluation_grid

logger = logging.getLogger(__name__)

HEADER = ["x", "step_fd_d1", "step_fd_d2", "sigmoid_exact_d1", "sigmoid_exact_d2"]


def _column(enc: NormalizedEncoder, xs: np.ndarray, spec: DerivativeSpec, i: int) -> np.ndarray:
    return np.array(
        [float(derivative_components(enc, float(x), spec, i, i + 1)[0]) for x in xs]
    )


def _rescaled(values: np.ndarray) -> np.ndarray:
    peak = float(np.max(np.abs(values)))
    return values / peak if peak > 0 else values


def cmd_derivatives(ctx: RunContext) -> list[Path]:
    cfg = ctx.config
    unit = ConstantNormalization(1.0)
    step = NormalizedEncoder(ctx.base_encoder(kind="interval"), unit)
    sigmoid = NormalizedEncoder(ctx.base_encoder(kind="sigmoid"), unit)
    xs = evaluation_grid(step, cfg["eval_points"])
    i = cfg["component"]

    columns = []
    for enc, method, h in (
        (step, FINITE_DIFFERENCE, cfg["fd_step"] or None),
        (sigmoid, EXACT_SIGMOID, None),
    ):
        for order in (1, 2):
            columns.append(_column(enc, xs, DerivativeSpec(order, method, h), i))
    if cfg["rescale"]:
        columns = [_rescaled(c) for c in columns]

    info = {"h": DerivativeSpec(1, FINITE_DIFFERENCE, cfg["fd_step"] or None).step_for(step)}
    logger.info("derivatives of component %d at %d points, h=%g", i, xs.size, info["h"])
    written = [ctx.write_table(HEADER, np.column_stack([xs, *columns]).tolist(), info=info)]
    plot = ctx.write_plot(xs, dict(zip(HEADER[1:], columns)))
    if plot:
        written.append(plot)
    return written
