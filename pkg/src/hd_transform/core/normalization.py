"""
Normalization functions and normalized encoders.

The normalization n(x) makes the kernel-weighted integral of 1/(n(x) n(x')) equal to one
for every x. It is found by successive approximation on a grid:

    n_0(x)     = sqrt(integral k(x, x') dx')
    1~_i(x)    = integral k(x, x') / (n_i(x) n_i(x')) dx'
    n_{i+1}(x) = n_i(x) * sqrt(1~_i(x))

with composite trapezoid quadrature on the grid itself and linear interpolation between
grid points.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Any, Callable, Optional, Union

import numpy as np

from hd_transform.core.encodings import DiscreteTripleEncoder, Domain1D, Encoder, PeriodicEncoder
from hd_transform.core.errors import NumericalError
from hd_transform.core.quadrature import trapezoid_weights, uniform_grid
from hd_transform.core.vectors import HyperVector

logger = logging.getLogger(__name__)

Kernel = Callable[[Any, Any], Any]

DEFAULT_GRID_SIZE = 100
DEFAULT_ITERATIONS = 10
DEFAULT_TOLERANCE = 1e-4
_DIVERGENCE_STREAK = 3


class NormalizationError(NumericalError):
    """Raised when the kernel is degenerate or the iteration diverges."""


@dataclass(frozen=True, slots=True)
class NormalizationFn:
    """Positive gridded function, linear between grid points and clamped at the ends."""

    grid: np.ndarray
    values: np.ndarray
    residual: float = float("nan")

    def __post_init__(self) -> None:
        grid = np.array(self.grid, dtype=np.float64).reshape(-1)
        values = np.array(self.values, dtype=np.float64).reshape(-1)
        if grid.size < 2 or grid.shape != values.shape:
            raise ValueError("normalization needs matching grid and values of size >= 2")
        if not np.all(np.diff(grid) > 0):
            raise ValueError("normalization grid must be strictly increasing")
        if not np.all(np.isfinite(values)) or not np.all(values > 0):
            raise NormalizationError("normalization values must be finite and positive")
        grid.flags.writeable = False
        values.flags.writeable = False
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "values", values)

    def eval(self, x: Any) -> Any:
        out = np.interp(x, self.grid, self.values)
        return float(out) if np.ndim(out) == 0 else out

    def slope(self, x: float) -> float:
        """Derivative of the interpolant: divided difference of the segment holding x."""
        j = int(np.searchsorted(self.grid, x, side="right")) - 1
        j = min(max(j, 0), self.grid.size - 2)
        return float(
            (self.values[j + 1] - self.values[j]) / (self.grid[j + 1] - self.grid[j])
        )


@dataclass(frozen=True, slots=True)
class ConstantNormalization:
    """Normalization known to be constant (periodic and discrete encoders)."""

    value: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.value) and self.value > 0):
            raise NormalizationError(f"normalization constant must be > 0, got {self.value!r}")

    def eval(self, x: Any) -> Any:
        if np.ndim(x) == 0 or isinstance(x, tuple):
            return self.value
        return np.full(np.shape(x), self.value)

    def slope(self, x: float) -> float:
        return 0.0


Normalization = Union[NormalizationFn, ConstantNormalization]


@dataclass(frozen=True, slots=True)
class NormalizedEncoder:
    """encode_normalized(x) = base.encode(x) / n(x), componentwise."""

    base: Encoder
    norm: Normalization

    @property
    def dim(self) -> int:
        return self.base.dim

    @property
    def seed(self) -> int:
        return self.base.seed

    @property
    def domain(self) -> Optional[Domain1D]:
        return self.base.domain

    @property
    def length_scale(self) -> float:
        return self.base.length_scale

    def components(self, x: Any, start: int = 0, stop: Optional[int] = None) -> np.ndarray:
        return self.base.components(x, start, stop) / self.norm.eval(x)

    def encode_normalized(self, x: Any) -> HyperVector:
        return HyperVector(self.components(x))

    def normalized_kernel(self, x: Any, x2: Any) -> Any:
        """Limit of inner_scaled(encode_normalized(x), encode_normalized(x2))."""
        k = self.base.integration_kernel(x, x2)
        return k / (np.asarray(self.norm.eval(x)) * np.asarray(self.norm.eval(x2)))


@dataclass(frozen=True, slots=True)
class NormalizationTrace:
    """Every iterate of the successive approximation; iterates[i] pairs with tilde_ones[i]."""

    grid: np.ndarray
    iterates: tuple[np.ndarray, ...]
    tilde_ones: tuple[np.ndarray, ...]
    residuals: tuple[float, ...]

    @property
    def final(self) -> NormalizationFn:
        return NormalizationFn(self.grid, self.iterates[-1], self.residuals[-1])


def _check_grid(domain: Domain1D, grid: np.ndarray) -> np.ndarray:
    grid = np.asarray(grid, dtype=np.float64)
    if grid.size < 2 or grid[0] != domain.a or grid[-1] != domain.b:
        raise ValueError(f"grid must span [{domain.a}, {domain.b}] including both endpoints")
    if not np.all(np.diff(grid) > 0):
        raise ValueError("grid must be strictly increasing")
    return grid


def _kernel_matrix(kernel: Kernel, grid: np.ndarray) -> np.ndarray:
    return np.asarray(kernel(grid[:, None], grid[None, :]), dtype=np.float64)


def _tilde_one(kmat: np.ndarray, weights: np.ndarray, n: np.ndarray) -> np.ndarray:
    return np.sum(kmat * (weights / n)[None, :], axis=1) / n


def initial_guess(kernel: Kernel, domain: Domain1D, grid: np.ndarray) -> NormalizationFn:
    """n_0(x_j) = sqrt of the kernel row integral, trapezoid rule on the grid."""
    grid = _check_grid(domain, grid)
    integrals = np.sum(_kernel_matrix(kernel, grid) * trapezoid_weights(grid)[None, :], axis=1)
    if not np.all(integrals > 0):
        j = int(np.flatnonzero(~(integrals > 0))[0])
        raise NormalizationError(
            f"degenerate kernel: integral {float(integrals[j])!r} <= 0 at x={float(grid[j])!r}"
        )
    return NormalizationFn(grid, np.sqrt(integrals))


def tilde_one(
    kernel: Kernel, norm: Normalization, domain: Domain1D, grid: np.ndarray
) -> np.ndarray:
    """1~(x_j) = integral k(x_j, x') / (n(x_j) n(x')) dx' on the grid."""
    grid = _check_grid(domain, grid)
    n = np.asarray(norm.eval(grid), dtype=np.float64)
    if not np.all(n > 0):
        raise NormalizationError("normalization must be positive on the grid")
    return _tilde_one(_kernel_matrix(kernel, grid), trapezoid_weights(grid), n)


def iterate_normalization(
    kernel: Kernel,
    domain: Domain1D,
    grid_size: int = DEFAULT_GRID_SIZE,
    iterations: int = DEFAULT_ITERATIONS,
    tolerance: Optional[float] = None,
) -> NormalizationTrace:
    """
    Run the successive approximation and keep every iterate.

    Stops after `iterations` updates, or earlier once the residual max|1~ - 1| drops below
    `tolerance`. Raises NormalizationError when the residual grows three times in a row.
    """
    if iterations < 0:
        raise ValueError(f"iterations must be >= 0, got {iterations}")
    grid = uniform_grid(domain, grid_size)
    weights = trapezoid_weights(grid)
    kmat = _kernel_matrix(kernel, grid)

    n = initial_guess(kernel, domain, grid).values.copy()
    iterates: list[np.ndarray] = []
    tildes: list[np.ndarray] = []
    residuals: list[float] = []
    streak = 0
    for i in range(iterations + 1):
        t = _tilde_one(kmat, weights, n)
        residual = float(np.max(np.abs(t - 1.0)))
        iterates.append(n)
        tildes.append(t)
        residuals.append(residual)
        logger.debug("normalization iteration %d residual=%.3e", i, residual)

        if i > 0 and residual > residuals[i - 1]:
            streak += 1
            if streak >= _DIVERGENCE_STREAK:
                trace = ", ".join(f"{r:.3e}" for r in residuals)
                raise NormalizationError(
                    f"normalization diverging after {i} iterations; residuals: {trace}"
                )
        else:
            streak = 0

        if i == iterations or (tolerance is not None and residual < tolerance):
            break
        n = n * np.sqrt(t)

    logger.info(
        "normalization finished after %d iterations, residual=%.3e",
        len(iterates) - 1,
        residuals[-1],
    )
    return NormalizationTrace(grid, tuple(iterates), tuple(tildes), tuple(residuals))


def solve_normalization(
    kernel: Kernel,
    domain: Domain1D,
    grid_size: int = DEFAULT_GRID_SIZE,
    iterations: int = DEFAULT_ITERATIONS,
    tolerance: Optional[float] = None,
) -> NormalizationFn:
    """Final iterate of iterate_normalization; its residual is kept on the result."""
    return iterate_normalization(kernel, domain, grid_size, iterations, tolerance).final


def normalize_encoder(
    base: Encoder,
    grid_size: int = DEFAULT_GRID_SIZE,
    iterations: int = DEFAULT_ITERATIONS,
    tolerance: Optional[float] = None,
) -> NormalizedEncoder:
    """Wrap base with its normalization (closed form for periodic and discrete encoders)."""
    if isinstance(base, (PeriodicEncoder, DiscreteTripleEncoder)):
        return NormalizedEncoder(base, ConstantNormalization(base.normalization_constant()))
    if base.domain is None:
        raise ValueError(f"cannot normalize {type(base).__name__}: no interval domain")
    norm = solve_normalization(
        base.integration_kernel, base.domain, grid_size, iterations, tolerance
    )
    return NormalizedEncoder(base, norm)
