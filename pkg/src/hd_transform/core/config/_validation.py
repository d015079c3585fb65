"""
Schema, defaults and validation rules for run configurations.

Pure functions, no I/O. Values arrive as strings from config files and the command line;
parse_value turns them into typed values and validate checks ranges and cross-key rules.
"""

from __future__ import annotations

from typing import Any, Optional

DEFAULT_LOG_LEVEL = "INFO"
VALID_LOG_LEVELS = {"DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"}

ENCODERS = {"interval", "sigmoid", "periodic"}
RECOVER_MODES = {"dims", "lengths"}
FUNCTION_PRESETS = {"x_sin_10x", "sin", "cos", "linear", "quadratic", "constant", "step"}
ODE_PRESETS = {"decay", "harmonic", "damped", "custom"}

ALLOWED_KEYS: dict[str, str] = {
    "a": "float",
    "b": "float",
    "lambda": "float",
    "dim": "int",
    "seed": "int",
    "encoder": "str",
    "n_cells": "int",
    "tau": "float",
    "epsilon": "float",
    "grid_size": "int",
    "iterations": "int",
    "tolerance": "float",
    "quad_points": "int",
    "eval_points": "int",
    "margin": "float",
    "x_primes": "floats",
    "mode": "str",
    "dims": "ints",
    "lambdas": "floats",
    "seeds": "int",
    "preset": "str",
    "ode": "str",
    "k": "float",
    "beta": "float",
    "coeffs": "floats",
    "bcs": "str",
    "rhs": "float",
    "ridge": "float",
    "ridges": "floats",
    "bc_weight": "float",
    "collocation": "int",
    "fd_step": "float",
    "lambda_f": "float",
    "kernel_table": "str",
    "rhs_table": "str",
    "fuzzy_nodes": "int",
    "component": "int",
    "rescale": "bool",
    "svg": "bool",
    "output": "str",
    "threads": "int",
    "log_level": "str",
}

COMMANDS = (
    "normalize",
    "kernels",
    "recover",
    "derivatives",
    "solve-ode",
    "solve-fredholm",
    "fuzzy-baseline",
)

_COMMON: dict[str, Any] = {
    "a": 0.0,
    "b": 1.0,
    "dim": 10000,
    "seed": 1,
    "encoder": "interval",
    "grid_size": 100,
    "iterations": 10,
    "tolerance": 0.0,
    "quad_points": 0,
    "eval_points": 500,
    "svg": False,
    "output": "",
    "threads": 0,
    "log_level": "",
}

COMMAND_DEFAULTS: dict[str, dict[str, Any]] = {
    "normalize": {**_COMMON, "lambda": 0.25, "n_cells": 4},
    "kernels": {
        **_COMMON,
        "lambda": 0.25,
        "n_cells": 4,
        "x_primes": [0.0, 0.2, 0.4, 0.6, 0.8, 1.0],
    },
    "recover": {
        **_COMMON,
        "lambda": 0.05,
        "preset": "x_sin_10x",
        "mode": "dims",
        "dims": [5000, 10000, 50000],
        "lambdas": [0.1, 0.05, 0.025],
        "seeds": 1,
        "margin": 0.05,
        "epsilon": 0.0,
    },
    "derivatives": {
        **_COMMON,
        "lambda": 0.25,
        "dim": 1,
        "component": 0,
        "tau": 0.0,
        "fd_step": 0.01,
        "rescale": True,
    },
    "solve-ode": {
        **_COMMON,
        "lambda": 0.05,
        "dim": 5000,
        "ode": "decay",
        "k": 10.0,
        "beta": 2.0,
        "coeffs": [],
        "bcs": "",
        "rhs": 0.0,
        "ridge": 1.0,
        "ridges": [],
        "bc_weight": 100.0,
        "collocation": 500,
        "fd_step": 0.0,
    },
    "solve-fredholm": {
        **_COMMON,
        "lambda": 0.1,
        "lambda_f": 1.0,
        "collocation": 200,
        "ridge": 1.0,
        "kernel_table": "",
        "rhs_table": "",
    },
    "fuzzy-baseline": {
        **_COMMON,
        "lambda": 0.05,
        "preset": "x_sin_10x",
        "fuzzy_nodes": 21,
    },
}

_TRUE = {"1", "true", "yes", "on"}
_FALSE = {"0", "false", "no", "off"}


def _split(raw: str) -> list[str]:
    return [p.strip() for p in raw.split(",") if p.strip()]


def parse_value(key: str, raw: Any) -> tuple[bool, Any]:
    """
    Convert a raw (usually string) value for key.

    Returns (True, value) or (False, error_message).
    """
    if key not in ALLOWED_KEYS:
        return False, f"unknown config key: {key}"
    kind = ALLOWED_KEYS[key]
    if not isinstance(raw, str):
        return True, raw
    text = raw.strip()
    try:
        if kind == "float":
            return True, float(text)
        if kind == "int":
            return True, int(text)
        if kind == "floats":
            return True, [float(p) for p in _split(text)]
        if kind == "ints":
            return True, [int(p) for p in _split(text)]
    except ValueError:
        return False, f"{key} must be {kind}, got {raw!r}"
    if kind == "bool":
        if text.lower() in _TRUE:
            return True, True
        if text.lower() in _FALSE:
            return True, False
        return False, f"{key} must be a boolean, got {raw!r}"
    return True, text


def _positive(cfg: dict[str, Any], key: str) -> Optional[str]:
    if key in cfg and not cfg[key] > 0:
        return f"{key} must be > 0, got {cfg[key]!r}"
    return None


def _at_least(cfg: dict[str, Any], key: str, low: int) -> Optional[str]:
    if key in cfg and cfg[key] < low:
        return f"{key} must be >= {low}, got {cfg[key]!r}"
    return None


def validate(cfg: dict[str, Any]) -> tuple[bool, Optional[str]]:
    """
    Validate typed values against per-key constraints and cross-key rules.

    Returns (True, None) on success or (False, error_message) on failure.
    """
    if not isinstance(cfg, dict):
        return False, "config must be a dict"

    for key in cfg:
        if key not in ALLOWED_KEYS:
            return False, f"unknown config key: {key}"

    if cfg["b"] <= cfg["a"]:
        return False, f"domain requires a < b, got a={cfg['a']}, b={cfg['b']}"

    for key in ("lambda", "k", "lambda_f", "bc_weight"):
        err = _positive(cfg, key)
        if err:
            return False, err

    # zero means "derive from lambda" or "off"
    for key in ("tau", "fd_step", "tolerance", "quad_points", "ridge", "margin"):
        if key in cfg and cfg[key] < 0:
            return False, f"{key} must be >= 0, got {cfg[key]!r}"

    for key, low in (
        ("dim", 1),
        ("grid_size", 2),
        ("iterations", 0),
        ("eval_points", 2),
        ("n_cells", 2),
        ("seeds", 1),
        ("collocation", 2),
        ("fuzzy_nodes", 2),
        ("component", 0),
        ("threads", 0),
    ):
        err = _at_least(cfg, key, low)
        if err:
            return False, err

    if "lambda" in cfg and cfg.get("encoder") != "periodic":
        if cfg["lambda"] > cfg["b"] - cfg["a"]:
            return False, (
                f"lambda={cfg['lambda']} exceeds the domain length {cfg['b'] - cfg['a']}"
            )

    if cfg.get("encoder") not in ENCODERS:
        return False, f"encoder must be one of {sorted(ENCODERS)}"
    if "mode" in cfg and cfg["mode"] not in RECOVER_MODES:
        return False, f"mode must be one of {sorted(RECOVER_MODES)}"
    if "preset" in cfg and cfg["preset"] not in FUNCTION_PRESETS:
        return False, f"preset must be one of {sorted(FUNCTION_PRESETS)}"
    if "ode" in cfg and cfg["ode"] not in ODE_PRESETS:
        return False, f"ode must be one of {sorted(ODE_PRESETS)}"
    if "epsilon" in cfg and not 0.0 <= cfg["epsilon"] <= 1.0:
        return False, f"epsilon must lie in [0, 1], got {cfg['epsilon']!r}"
    if "component" in cfg and cfg["component"] >= cfg["dim"]:
        return False, f"component must be < dim ({cfg['dim']})"
    if any(d < 1 for d in cfg.get("dims", [])):
        return False, "dims must all be >= 1"
    if any(v <= 0 for v in cfg.get("lambdas", [])):
        return False, "lambdas must all be > 0"
    if any(v < 0 for v in cfg.get("ridges", [])):
        return False, "ridges must all be >= 0"
    if cfg.get("ode") == "custom" and len(cfg.get("coeffs", [])) < 1:
        return False, "ode=custom needs coeffs"
    if "beta" in cfg and cfg.get("ode") == "damped" and not 0 <= cfg["beta"] < cfg["k"]:
        return False, "damped preset needs 0 <= beta < k"
    if cfg.get("log_level") and cfg["log_level"].upper() not in VALID_LOG_LEVELS:
        return False, f"log_level must be one of {sorted(VALID_LOG_LEVELS)}"

    return True, None
