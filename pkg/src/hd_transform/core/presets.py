"""Named test functions used by the recovery, derivative and fuzzy experiments."""

from __future__ import annotations

import math
from typing import Callable

from hd_transform.core.transform import SampledFunction

FUNCTIONS: dict[str, Callable[[float], float]] = {
    "x_sin_10x": lambda x: x * math.sin(10.0 * x),
    "sin": math.sin,
    "cos": math.cos,
    "linear": lambda x: x,
    "quadratic": lambda x: x * x,
    "constant": lambda x: 1.0,
    "step": lambda x: 1.0 if x >= 0.5 else 0.0,
}


def get_function(name: str) -> SampledFunction:
    try:
        fn = FUNCTIONS[name]
    except KeyError:
        raise KeyError(f"unknown function preset {name!r}; known: {sorted(FUNCTIONS)}") from None
    return SampledFunction.from_callable(fn, name=name)
