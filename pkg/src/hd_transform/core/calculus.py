"""
Derivatives and integrals of back-transformed functions.

d^n/dx^n f~(x) = inner_scaled(F, Delta^(n)(x)), where Delta^(n) is either a finite
difference of the normalized encoding or, for the sigmoid encoder, the exact derivative
of its components combined with the quotient rule for 1/n(x).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from hd_transform.core.encodings import Domain1D, SigmoidEncoder
from hd_transform.core.normalization import NormalizedEncoder
from hd_transform.core.vectors import HyperVector, inner_scaled

FINITE_DIFFERENCE = "finite_difference"
EXACT_SIGMOID = "exact_sigmoid"
METHODS = (FINITE_DIFFERENCE, EXACT_SIGMOID)

# default step as a fraction of the length scale
DEFAULT_STEP_FRACTION = 0.2

_EDGE_SLACK = 1e-12


class DerivativeError(ValueError):
    """Raised when a derivative cannot be formed at the requested point."""


@dataclass(frozen=True, slots=True)
class DerivativeSpec:
    """
    Derivative order and method; h=None means lambda/5 of the encoder used.

    edge_accuracy is the accuracy order of the one-sided stencils used near the edges.
    """

    order: int
    method: str = FINITE_DIFFERENCE
    h: Optional[float] = None
    edge_accuracy: int = 2

    def __post_init__(self) -> None:
        if not isinstance(self.order, int) or self.order < 0:
            raise DerivativeError(f"order must be a non-negative integer, got {self.order!r}")
        if self.method not in METHODS:
            raise DerivativeError(f"method must be one of {METHODS}, got {self.method!r}")
        if self.h is not None and not (math.isfinite(self.h) and self.h > 0):
            raise DerivativeError(f"step h must be > 0, got {self.h!r}")
        if not isinstance(self.edge_accuracy, int) or self.edge_accuracy < 1:
            raise DerivativeError(
                f"edge_accuracy must be a positive integer, got {self.edge_accuracy!r}"
            )
        if self.method == EXACT_SIGMOID and self.order > 2:
            raise DerivativeError("exact sigmoid derivatives are available up to order 2")

    def with_order(self, order: int) -> DerivativeSpec:
        return DerivativeSpec(order, self.method, self.h, self.edge_accuracy)

    def step_for(self, enc: NormalizedEncoder) -> float:
        return self.h if self.h is not None else DEFAULT_STEP_FRACTION * enc.length_scale


@dataclass(frozen=True, slots=True)
class Stencil:
    points: np.ndarray
    weights: np.ndarray
    kind: str


def _fd_weights(offsets: np.ndarray, order: int) -> np.ndarray:
    """Weights w with sum_k w_k o_k^i = i! [i == order] for i < len(offsets)."""
    vander = np.vander(offsets.astype(np.float64), increasing=True).T
    rhs = np.zeros(offsets.size)
    rhs[order] = math.factorial(order)
    return np.linalg.solve(vander, rhs)


def _central_weights(order: int) -> tuple[np.ndarray, np.ndarray]:
    if order == 1:
        return np.array([-1, 1]), np.array([-0.5, 0.5])
    if order == 2:
        return np.array([-1, 0, 1]), np.array([1.0, -2.0, 1.0])
    p = (order + 1) // 2
    offsets = np.arange(-p, p + 1)
    return offsets, _fd_weights(offsets, order)


def stencil(
    domain: Domain1D, x: float, order: int, h: float, edge_accuracy: int = 2
) -> Stencil:
    """
    Central stencil when it fits inside the domain, otherwise a one-sided stencil with
    order + edge_accuracy points. The default matches the second-order central stencils.
    """
    x = domain.check(x)
    if order == 0:
        return Stencil(np.array([x]), np.array([1.0]), "point")
    slack = _EDGE_SLACK * domain.length
    offsets, weights = _central_weights(order)
    kind = "central"
    if x + offsets[0] * h < domain.a - slack or x + offsets[-1] * h > domain.b + slack:
        width = order + edge_accuracy - 1
        if x + width * h <= domain.b + slack:
            offsets, kind = np.arange(0, width + 1), "forward"
        elif x - width * h >= domain.a - slack:
            offsets, kind = np.arange(-width, 1), "backward"
        else:
            raise DerivativeError(
                f"order-{order} stencil with h={h} does not fit in "
                f"[{domain.a}, {domain.b}] at x={x}"
            )
        weights = _fd_weights(offsets, order)
    points = np.clip(x + offsets * h, domain.a, domain.b)
    return Stencil(points, weights / h**order, kind)


def derivative_components(
    enc: NormalizedEncoder,
    x: float,
    spec: DerivativeSpec,
    start: int = 0,
    stop: Optional[int] = None,
) -> np.ndarray:
    if spec.order == 0:
        return enc.components(x, start, stop)
    if spec.method == EXACT_SIGMOID:
        return _exact_sigmoid(enc, x, spec.order, start, stop)
    if enc.domain is None:
        raise DerivativeError("derivatives need an interval domain")
    st = stencil(enc.domain, x, spec.order, spec.step_for(enc), spec.edge_accuracy)
    out = np.zeros((stop if stop is not None else enc.dim) - start)
    for point, weight in zip(st.points, st.weights):
        if weight != 0.0:
            out += weight * enc.components(float(point), start, stop)
    return out


def _exact_sigmoid(
    enc: NormalizedEncoder, x: float, order: int, start: int, stop: Optional[int]
) -> np.ndarray:
    base = enc.base
    if not isinstance(base, SigmoidEncoder):
        raise DerivativeError(
            f"exact derivatives need a sigmoid encoder, got {type(base).__name__}"
        )
    n = enc.norm.eval(x)
    dn = enc.norm.slope(x)  # n is piecewise linear, so n'' = 0
    phi = base.components(x, start, stop)
    d1 = base.components(x, start, stop, order=1)
    if order == 1:
        return d1 / n - phi * dn / n**2
    d2 = base.components(x, start, stop, order=2)
    return d2 / n - 2.0 * d1 * dn / n**2 + 2.0 * phi * dn**2 / n**3


def encoding_derivative(enc: NormalizedEncoder, x: float, spec: DerivativeSpec) -> HyperVector:
    """Delta^(n)(x) for spec.order = n."""
    return HyperVector(derivative_components(enc, x, spec))


def derivative_eval(
    F: HyperVector, enc: NormalizedEncoder, x: float, spec: DerivativeSpec
) -> float:
    """n-th derivative of f~ at x."""
    return inner_scaled(F, encoding_derivative(enc, x, spec))


def integral(F: HyperVector, one_X: HyperVector) -> float:
    """Integral of f~ over the set whose indicator transform is one_X."""
    return inner_scaled(F, one_X)
