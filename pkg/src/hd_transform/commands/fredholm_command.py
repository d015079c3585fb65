"""
solve-fredholm: f(x) = b(x) + lambda_f * integral k(y, x) f(y) dy by dual ridge regression.

Without tables the separable demo k(y, x) = y x, b(x) = 2x/3, lambda_f = 1 is solved, whose
solution is f(x) = x. kernel_table and rhs_table replace k and b with tables read from CSV.
"""

from __future__ import annotations

import logging
from pathlib import Path

import numpy as np

from hd_transform.commands._parsing import read_kernel_table, read_rhs_table
from hd_transform.commands.run_context import RunContext
from hd_transform.core.multivariate import BivariateFunction, ProductEncoder, forward2
from hd_transform.core.normalization import NormalizedEncoder
from hd_transform.core.solvers import collocation_points, fredholm_rows, solve_dual
from hd_transform.core.transform import SampledFunction, evaluation_grid, inverse_curve

logger = logging.getLogger(__name__)


def _kernel(ctx: RunContext) -> BivariateFunction:
    path = ctx.config["kernel_table"]
    if not path:
        return BivariateFunction.from_callable(lambda y, x: y * x, name="y*x")
    ys, xs, table = read_kernel_table(Path(path))
    return BivariateFunction.from_grid(ys, xs, table, name=Path(path).name)


def _rhs(ctx: RunContext) -> SampledFunction:
    path = ctx.config["rhs_table"]
    if not path:
        return SampledFunction.from_callable(lambda x: 2.0 * x / 3.0, name="2x/3")
    xs, bs = read_rhs_table(Path(path))
    return SampledFunction.from_table(xs, bs, name=Path(path).name)


def cmd_solve_fredholm(ctx: RunContext) -> list[Path]:
    cfg = ctx.config
    demo = not cfg["kernel_table"] and not cfg["rhs_table"] and cfg["lambda_f"] == 1.0

    base_f = ctx.base_encoder()
    enc_f = ctx.normalize(base_f)
    # second axis: same construction, independent seed, same normalization
    enc_x = NormalizedEncoder(ctx.base_encoder(seed=cfg["seed"] + 1), enc_f.norm)
    pair = ProductEncoder(enc_f, enc_x)

    q = ctx.quadrature(enc_f)
    K = forward2(_kernel(ctx), pair, q, q, threads=ctx.threads)
    points = collocation_points(enc_f, cfg["collocation"])
    problem = fredholm_rows(pair, enc_f, K, cfg["lambda_f"], _rhs(ctx), points, cfg["ridge"])
    solution = solve_dual(problem)

    xs = evaluation_grid(enc_f, cfg["eval_points"])
    approx = inverse_curve(solution.vector, enc_f, xs)
    info: dict = {"method": solution.method, "residual": solution.residual, "quad_nodes": q.size}
    if demo:
        info["max_error"] = float(np.max(np.abs(approx - xs)))
        header, columns = ["x", "analytic", "hd_solution"], [xs, xs, approx]
        series = {"analytic": xs, "hd": approx}
    else:
        header, columns, series = ["x", "hd_solution"], [xs, approx], {"hd": approx}
    logger.info(
        "solve-fredholm: method=%s residual=%.3e max_error=%s",
        solution.method, solution.residual, info.get("max_error", "n/a"),
    )

    written = [ctx.write_table(header, np.column_stack(columns).tolist(), info=info)]
    plot = ctx.write_plot(xs, series)
    if plot:
        written.append(plot)
    return written
