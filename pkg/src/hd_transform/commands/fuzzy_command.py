"""
fuzzy-baseline: fuzzy transform of a named function next to its hyperdimensional transform.

Both approximations are local weighted means; the table puts the fuzzy inverse, the finite-D
inverse transform and its infinite-D oracle on one grid.
"""

from __future__ import annotations

import logging
from pathlib import Path

import numpy as np

from hd_transform.commands.run_context import RunContext
from hd_transform.core.fuzzy import TriangularPartition, fuzzy_inverse, fuzzy_transform
from hd_transform.core.presets import get_function
from hd_transform.core.transform import (
    evaluation_grid,
    forward,
    inverse_curve,
    rmse,
    smooth_oracle,
)

logger = logging.getLogger(__name__)

HEADER = ["x", "f_true", "fuzzy", "f_tilde", "oracle"]


def cmd_fuzzy_baseline(ctx: RunContext) -> list[Path]:
    cfg = ctx.config
    f = get_function(cfg["preset"])
    enc = ctx.normalize(ctx.base_encoder())
    partition = TriangularPartition(enc.domain, cfg["fuzzy_nodes"])
    G = fuzzy_transform(f, partition)

    q = ctx.quadrature(enc)
    F = forward(f, enc, q, threads=ctx.threads)
    xs = evaluation_grid(enc, cfg["eval_points"])
    truth = f.sample(xs)
    fuzzy = fuzzy_inverse(G, partition, xs)
    approx = inverse_curve(F, enc, xs)
    oracle = smooth_oracle(f, enc, xs, q)

    info = {
        "fuzzy_rmse": rmse(fuzzy, truth),
        "rmse": rmse(approx, truth),
        "oracle_rmse": rmse(oracle, truth),
    }
    logger.info(
        "fuzzy-baseline %s: fuzzy_rmse=%.4f rmse=%.4f oracle_rmse=%.4f",
        cfg["preset"], info["fuzzy_rmse"], info["rmse"], info["oracle_rmse"],
    )
    rows = np.column_stack([xs, truth, fuzzy, approx, oracle]).tolist()
    written = [
        ctx.write_table(HEADER, rows, info=info),
        ctx.write_table(
            ["node", "component"],
            np.column_stack([partition.nodes, G]).tolist(),
            label="components",
        ),
    ]
    plot = ctx.write_plot(xs, {"f": truth, "fuzzy": fuzzy, "hd": approx})
    if plot:
        written.append(plot)
    return written
