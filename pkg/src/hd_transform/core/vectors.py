"""
Dense hypervector arithmetic.

HyperVector wraps a read-only float64 array. The inner product is the Euclidean one
scaled by 1/D; summation goes through numpy's fixed pairwise reduction so results do not
depend on how many threads produced the operands.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

import numpy as np


class DimensionMismatchError(ValueError):
    """Raised when hypervectors of different dimension are combined."""


class NonFiniteValueError(ValueError):
    """Raised when a hypervector would contain NaN or Inf."""


@dataclass(frozen=True, slots=True)
class HyperVector:
    """Immutable D-dimensional real vector."""

    values: np.ndarray

    def __post_init__(self) -> None:
        arr = np.array(self.values, dtype=np.float64, copy=True).reshape(-1)
        if arr.size < 1:
            raise ValueError("hypervector dimension must be >= 1")
        if not np.all(np.isfinite(arr)):
            bad = int(np.flatnonzero(~np.isfinite(arr))[0])
            raise NonFiniteValueError(f"non-finite hypervector component at index {bad}")
        arr.flags.writeable = False
        object.__setattr__(self, "values", arr)

    @property
    def dim(self) -> int:
        return int(self.values.shape[0])

    @classmethod
    def zeros(cls, dim: int) -> HyperVector:
        return cls(np.zeros(dim))

    @classmethod
    def ones(cls, dim: int) -> HyperVector:
        return cls(np.ones(dim))

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, HyperVector):
            return NotImplemented
        return self.dim == other.dim and bool(np.array_equal(self.values, other.values))

    def __hash__(self) -> int:
        return hash(self.values.tobytes())


def _check_dims(u: HyperVector, v: HyperVector) -> None:
    if u.dim != v.dim:
        raise DimensionMismatchError(
            f"incompatible bases: dimension {u.dim} vs {v.dim}"
        )


def inner_scaled(u: HyperVector, v: HyperVector) -> float:
    """Return (1/D) * sum_i u_i v_i."""
    _check_dims(u, v)
    return float(np.sum(u.values * v.values)) / u.dim


def bind(u: HyperVector, v: HyperVector) -> HyperVector:
    """Elementwise product."""
    _check_dims(u, v)
    return HyperVector(u.values * v.values)


def axpy(alpha: float, u: HyperVector, beta: float, v: HyperVector) -> HyperVector:
    """Return alpha*u + beta*v."""
    _check_dims(u, v)
    return HyperVector(alpha * u.values + beta * v.values)
