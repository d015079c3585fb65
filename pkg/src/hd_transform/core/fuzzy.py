"""
Fuzzy transform with a uniform triangular partition.

    G_s   = integral A_s(x) f(x) dx / integral A_s(x) dx     (quadrature)
    g~(x) = sum_s G_s A_s(x)

For triangular bases the inverse is piecewise-linear interpolation of the components, which
is how it is evaluated here.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Optional

import numpy as np

from hd_transform.core.encodings import Domain1D
from hd_transform.core.quadrature import Quadrature
from hd_transform.core.transform import SampledFunction

NODES_PER_CELL = 200


class PartitionError(ValueError):
    """Raised for a partition with fewer than two nodes."""


@dataclass(frozen=True, slots=True)
class TriangularPartition:
    """Equidistant nodes x_0 = a, ..., x_{count-1} = b with hat functions A_s."""

    domain: Domain1D
    count: int

    def __post_init__(self) -> None:
        if not isinstance(self.count, int) or self.count < 2:
            raise PartitionError(f"fuzzy partition needs at least 2 nodes, got {self.count!r}")

    @property
    def nodes(self) -> np.ndarray:
        nodes = np.linspace(self.domain.a, self.domain.b, self.count)
        nodes[0], nodes[-1] = self.domain.a, self.domain.b
        return nodes

    @property
    def spacing(self) -> float:
        return self.domain.length / (self.count - 1)

    def basis(self, s: int, x: Any) -> Any:
        """A_s(x) = max(0, 1 - |x - x_s| / spacing)."""
        dist = np.abs(np.asarray(x, dtype=float) - self.nodes[s])
        out = np.maximum(0.0, 1.0 - dist / self.spacing)
        return float(out) if np.ndim(out) == 0 else out

    def default_quadrature(self) -> Quadrature:
        return Quadrature.midpoint(self.domain, NODES_PER_CELL * (self.count - 1))


def fuzzy_transform(
    f: SampledFunction, partition: TriangularPartition, q: Optional[Quadrature] = None
) -> np.ndarray:
    """Components G_s as local weighted means of f."""
    q = q or partition.default_quadrature()
    values = f.sample(q.nodes)
    bases = np.maximum(
        0.0,
        1.0 - np.abs(q.nodes[None, :] - partition.nodes[:, None]) / partition.spacing,
    )
    weighted = bases * q.weights[None, :]
    return np.sum(weighted * values[None, :], axis=1) / np.sum(weighted, axis=1)


def fuzzy_inverse(G: np.ndarray, partition: TriangularPartition, x: Any) -> Any:
    """sum_s G_s A_s(x); equals G_s exactly at node x_s."""
    G = np.asarray(G, dtype=np.float64)
    if G.shape != (partition.count,):
        raise PartitionError(f"expected {partition.count} components, got shape {G.shape}")
    out = np.interp(x, partition.nodes, G)
    return float(out) if np.ndim(out) == 0 else out
