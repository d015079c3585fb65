"""
solve-ode: linear ODE with constant coefficients by collocation and dual ridge regression.

ode=decay|harmonic|damped uses a preset with a known solution; ode=custom takes coeffs, rhs
and bcs from the config. A non-empty ridges list writes one table per ridge value. Boundary
rows carry bc_weight, so they hold almost exactly at any ridge.
"""

from __future__ import annotations

import logging
from pathlib import Path

import numpy as np

from hd_transform.commands._parsing import parse_bcs
from hd_transform.commands.run_context import RunContext
from hd_transform.config import ConfigError
from hd_transform.core.calculus import FINITE_DIFFERENCE, DerivativeSpec
from hd_transform.core.solvers import (
    RidgeProblem,
    collocation_points,
    ode_preset,
    ode_problem,
    solve_dual,
)
from hd_transform.core.transform import evaluation_grid, inverse_curve

logger = logging.getLogger(__name__)


def _equation(ctx: RunContext) -> tuple:
    cfg = ctx.config
    bcs = parse_bcs(cfg["bcs"])
    if cfg["ode"] == "custom":
        return tuple(cfg["coeffs"]), cfg["rhs"], bcs, None
    preset = ode_preset(cfg["ode"], cfg["k"], cfg["beta"])
    if cfg["coeffs"]:
        raise ConfigError(f"coeffs are fixed by the {preset.name} preset; use ode=custom")
    # explicit bcs replace the preset's, which invalidates its analytic solution
    if bcs:
        return preset.coeffs, 0.0, bcs, None
    return preset.coeffs, 0.0, preset.bcs, preset.analytic


def cmd_solve_ode(ctx: RunContext) -> list[Path]:
    cfg = ctx.config
    coeffs, rhs, bcs, analytic = _equation(ctx)
    enc = ctx.normalize(ctx.base_encoder())
    for x, _, _ in bcs:
        enc.domain.check(x)
    spec = DerivativeSpec(0, FINITE_DIFFERENCE, cfg["fd_step"] or None)
    h = spec.step_for(enc)

    points = collocation_points(enc, cfg["collocation"])
    base_problem = ode_problem(
        enc, coeffs, rhs, bcs, points, spec, cfg["ridge"], bc_weight=cfg["bc_weight"]
    )
    xs = evaluation_grid(enc, cfg["eval_points"])
    exact = np.array([analytic(float(x)) for x in xs]) if analytic else None

    ridges = cfg["ridges"] or [cfg["ridge"]]
    written: list[Path] = []
    for ridge in ridges:
        problem = RidgeProblem(base_problem.rows, ridge)
        solution = solve_dual(problem)
        approx = inverse_curve(solution.vector, enc, xs)
        info: dict = {
            "h": h,
            "rows": len(problem.rows),
            "bc_weight": cfg["bc_weight"],
            "method": solution.method,
            "residual": solution.residual,
        }
        if exact is not None:
            info["max_error"] = float(np.max(np.abs(approx - exact)))
            header = ["x", "analytic", "hd_solution"]
            rows = np.column_stack([xs, exact, approx]).tolist()
            series = {"analytic": exact, "hd": approx}
        else:
            header = ["x", "hd_solution"]
            rows = np.column_stack([xs, approx]).tolist()
            series = {"hd": approx}
        logger.info(
            "solve-ode %s ridge=%g: method=%s residual=%.3e max_error=%s",
            cfg["ode"], ridge, solution.method, solution.residual, info.get("max_error", "n/a"),
        )
        label = f"ridge{ridge:g}" if len(ridges) > 1 else ""
        written.append(ctx.write_table(header, rows, label=label, info=info))
        plot = ctx.write_plot(xs, series, label=label)
        if plot:
            written.append(plot)
    return written
