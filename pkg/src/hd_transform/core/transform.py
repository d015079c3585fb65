"""
Forward and inverse hyperdimensional transforms.

    forward:  F = sum_j w_j f(x_j) Delta(x_j)        (quadrature of the transform integral)
    inverse:  f~(x) = inner_scaled(F, Delta(x))

smooth_oracle evaluates the D -> infinity limit of f~ from the expected kernel; it is the
noise-free reference for finite-D results.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Any, Callable, Optional

import numpy as np

from hd_transform.core.encodings import DomainError
from hd_transform.core.normalization import NormalizedEncoder
from hd_transform.core.parallel import map_components
from hd_transform.core.quadrature import Quadrature
from hd_transform.core.vectors import HyperVector, inner_scaled

logger = logging.getLogger(__name__)


class TransformInputError(ValueError):
    """Raised when a sampled function is not finite at a quadrature node."""


@dataclass(frozen=True, slots=True)
class SampledFunction:
    """Real function given as a callable or as a table interpolated linearly."""

    evaluator: Optional[Callable[[float], float]] = None
    table_x: Optional[np.ndarray] = None
    table_y: Optional[np.ndarray] = None
    name: str = ""

    def __post_init__(self) -> None:
        if (self.evaluator is None) == (self.table_x is None):
            raise ValueError("give either an evaluator or a table")
        if self.table_x is not None:
            xs = np.array(self.table_x, dtype=np.float64).reshape(-1)
            ys = np.array(self.table_y, dtype=np.float64).reshape(-1)
            if xs.size < 2 or xs.shape != ys.shape:
                raise ValueError("table needs matching x and y columns with >= 2 rows")
            if not np.all(np.diff(xs) > 0):
                raise ValueError("table x values must be strictly increasing")
            object.__setattr__(self, "table_x", xs)
            object.__setattr__(self, "table_y", ys)

    @classmethod
    def from_callable(cls, fn: Callable[[float], float], name: str = "") -> SampledFunction:
        return cls(evaluator=fn, name=name)

    @classmethod
    def from_table(cls, xs: Any, ys: Any, name: str = "") -> SampledFunction:
        return cls(table_x=xs, table_y=ys, name=name)

    def __call__(self, x: float) -> float:
        return float(self.sample(np.array([x]))[0])

    def sample(self, nodes: np.ndarray) -> np.ndarray:
        nodes = np.asarray(nodes, dtype=np.float64)
        if self.evaluator is not None:
            values = np.array([float(self.evaluator(float(x))) for x in nodes])
        else:
            lo, hi = self.table_x[0], self.table_x[-1]
            outside = (nodes < lo) | (nodes > hi)
            if np.any(outside):
                x = float(nodes[np.flatnonzero(outside)[0]])
                raise TransformInputError(
                    f"table covers [{lo}, {hi}]; no extrapolation to x={x!r}"
                )
            values = np.interp(nodes, self.table_x, self.table_y)
        bad = ~np.isfinite(values)
        if np.any(bad):
            j = int(np.flatnonzero(bad)[0])
            raise TransformInputError(
                f"{self.name or 'function'} is not finite at node {j} (x={float(nodes[j])!r})"
            )
        return values


def forward(
    f: SampledFunction,
    enc: NormalizedEncoder,
    q: Quadrature,
    *,
    threads: Optional[int] = None,
) -> HyperVector:
    """F = sum_j w_j f(x_j) encode_normalized(x_j), accumulated in node order."""
    return forward_coefficients(q.nodes, q.weights * f.sample(q.nodes), enc, threads=threads)


def forward_coefficients(
    nodes: np.ndarray,
    coeffs: np.ndarray,
    enc: NormalizedEncoder,
    *,
    threads: Optional[int] = None,
) -> HyperVector:
    """sum_j coeffs_j encode_normalized(nodes_j); zero coefficients are skipped."""
    active = [(float(x), float(c)) for x, c in zip(nodes, coeffs) if c != 0.0]

    def _chunk(start: int, stop: int) -> np.ndarray:
        acc = np.zeros(stop - start)
        for x, c in active:
            acc += c * enc.components(x, start, stop)
        return acc

    return HyperVector(map_components(_chunk, enc.dim, threads))


def transform_dirac(enc: NormalizedEncoder, x: float) -> HyperVector:
    """Transform of the point mass at x, which is the normalized encoding itself."""
    return enc.encode_normalized(x)


def indicator(c: float, d: float, closed_right: bool) -> Callable[[float], float]:
    """1 on [c, d) (or [c, d] when closed_right), else 0."""

    def _f(x: float) -> float:
        return 1.0 if c <= x < d or (closed_right and x == d) else 0.0

    return _f


def transform_indicator(
    enc: NormalizedEncoder,
    c: float,
    d: float,
    q: Quadrature,
    *,
    threads: Optional[int] = None,
) -> HyperVector:
    """
    Transform of the indicator of [c, d].

    Intervals are half-open except at the right end of the domain, so adjacent intervals
    [a, m] and [m, b] split the quadrature nodes without overlap.
    """
    domain = enc.domain
    if domain is None:
        raise DomainError("indicator transforms need an interval domain")
    domain.check_interval(c, d)
    f = SampledFunction.from_callable(indicator(c, d, d == domain.b), name="indicator")
    return forward(f, enc, q, threads=threads)


def ones_vector(
    enc: NormalizedEncoder, q: Quadrature, *, threads: Optional[int] = None
) -> HyperVector:
    """Transform of the constant one over the whole domain."""
    return transform_indicator(enc, enc.domain.a, enc.domain.b, q, threads=threads)


def inverse_eval(F: HyperVector, enc: NormalizedEncoder, x: float) -> float:
    """f~(x) = inner_scaled(F, encode_normalized(x))."""
    return inner_scaled(F, enc.encode_normalized(x))


def inverse_curve(F: HyperVector, enc: NormalizedEncoder, xs: Any) -> np.ndarray:
    return np.array([inverse_eval(F, enc, float(x)) for x in np.asarray(xs, dtype=float)])


def smooth_oracle(
    f: SampledFunction, enc: NormalizedEncoder, x: Any, q: Quadrature
) -> Any:
    """
    D -> infinity limit of f~(x): sum_j w_j f(x_j) k(x, x_j) / (n(x) n(x_j)).

    Vectorized over x.
    """
    xs = np.atleast_1d(np.asarray(x, dtype=np.float64))
    if enc.domain is not None:
        for xv in xs:
            enc.domain.check(xv)
    coeffs = q.weights * f.sample(q.nodes)
    kmat = np.asarray(enc.normalized_kernel(xs[:, None], q.nodes[None, :]), dtype=np.float64)
    out = np.sum(kmat * coeffs[None, :], axis=1)
    return float(out[0]) if np.ndim(x) == 0 else out


def evaluation_grid(enc: NormalizedEncoder, count: int = 500, margin: float = 0.0) -> np.ndarray:
    """count equidistant points in [a + margin, b - margin]."""
    domain = enc.domain
    lo, hi = domain.a + margin, domain.b - margin
    if not hi > lo:
        raise DomainError(f"margin {margin} leaves no interior in [{domain.a}, {domain.b}]")
    return np.linspace(lo, hi, count)


def rmse(a: Any, b: Any) -> float:
    diff = np.asarray(a, dtype=float) - np.asarray(b, dtype=float)
    return math.sqrt(float(np.mean(diff * diff)))
