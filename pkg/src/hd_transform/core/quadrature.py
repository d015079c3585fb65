"""
Composite quadrature rules over an interval.

Quadrature pairs nodes with positive weights; integrals are sum(w * f(nodes)). The default
rule for transforms is the composite midpoint rule with at least 20 nodes per length scale.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from hd_transform.core.encodings import Domain1D

NODES_PER_LENGTH_SCALE = 20


@dataclass(frozen=True, slots=True)
class Quadrature:
    """Nodes strictly increasing inside [a, b]; weights positive."""

    nodes: np.ndarray
    weights: np.ndarray

    def __post_init__(self) -> None:
        nodes = np.array(self.nodes, dtype=np.float64).reshape(-1)
        weights = np.array(self.weights, dtype=np.float64).reshape(-1)
        if nodes.size < 1 or nodes.shape != weights.shape:
            raise ValueError("quadrature needs matching, non-empty nodes and weights")
        if nodes.size > 1 and not np.all(np.diff(nodes) > 0):
            raise ValueError("quadrature nodes must be strictly increasing")
        if not np.all(weights > 0):
            raise ValueError("quadrature weights must be positive")
        nodes.flags.writeable = False
        weights.flags.writeable = False
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "weights", weights)

    @property
    def size(self) -> int:
        return int(self.nodes.shape[0])

    @property
    def total_weight(self) -> float:
        return float(np.sum(self.weights))

    @classmethod
    def midpoint(cls, domain: Domain1D, n: int) -> Quadrature:
        if n < 1:
            raise ValueError(f"midpoint rule needs n >= 1, got {n}")
        h = domain.length / n
        nodes = domain.a + (np.arange(n) + 0.5) * h
        return cls(nodes, np.full(n, h))

    @classmethod
    def for_length_scale(cls, domain: Domain1D, length_scale: float) -> Quadrature:
        """Midpoint rule with ceil(20 * (b - a) / lambda) nodes."""
        return cls.midpoint(domain, default_node_count(domain, length_scale))

    @classmethod
    def trapezoid(cls, grid: np.ndarray) -> Quadrature:
        grid = np.asarray(grid, dtype=np.float64)
        return cls(grid, trapezoid_weights(grid))

    def integrate(self, values: np.ndarray) -> float:
        return float(np.sum(self.weights * np.asarray(values, dtype=np.float64)))


def default_node_count(domain: Domain1D, length_scale: float) -> int:
    return max(1, math.ceil(NODES_PER_LENGTH_SCALE * domain.length / length_scale))


def trapezoid_weights(grid: np.ndarray) -> np.ndarray:
    """Composite trapezoid weights for an increasing grid."""
    grid = np.asarray(grid, dtype=np.float64)
    if grid.size < 2:
        raise ValueError("trapezoid rule needs at least two grid points")
    h = np.diff(grid)
    w = np.zeros_like(grid)
    w[:-1] += h / 2.0
    w[1:] += h / 2.0
    return w


def uniform_grid(domain: Domain1D, size: int) -> np.ndarray:
    """size equidistant points including both endpoints."""
    if size < 2:
        raise ValueError(f"grid needs at least two points, got {size}")
    grid = np.linspace(domain.a, domain.b, size)
    grid[0], grid[-1] = domain.a, domain.b
    return grid
