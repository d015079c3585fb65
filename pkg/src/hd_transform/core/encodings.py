"""
Seeded hyperdimensional encoders.

Each encoder is a deterministic realization of a random process over its domain: component
i of encode(x) depends only on (seed, i, x), so any slice of components can be produced on
its own and in any order. Every encoder also knows its expected kernel, the D -> infinity
limit of inner_scaled(encode(x), encode(x')).

Encoders:
  IntervalStepEncoder   piecewise-constant +-1 components on [a, b], triangular kernel
  SigmoidEncoder        the step encoder with logistic transitions, smooth in x
  PeriodicEncoder       step encoder on a circle, wrapped triangular kernel
  DiscreteTripleEncoder triples of category indices, matching-coefficient kernels
  EpsilonMixedEncoder   mixes in an independent random function with probability epsilon
  PiecewiseEncoder      two independent encoders on either side of a split point
"""

from __future__ import annotations

import math
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Any, Optional

import numpy as np
from scipy.special import expit

from hd_transform.core.prf import index_word, prf_words, rademacher, uniform_open
from hd_transform.core.vectors import HyperVector

# prf index tags
TAG_ANCHOR = 0
TAG_SWITCH = 1
TAG_EPS_DECISION = 2
TAG_EPS_NOISE = 3
TAG_DISCRETE = 4

# logistic terms beyond this many tau from x are saturated to double precision
_SATURATION = 40.0

DISCRETE_MODES = ("sum", "pairwise", "product")


class DomainError(ValueError):
    """Raised when a point lies outside the encoder domain or an interval is malformed."""


class EncoderConfigError(ValueError):
    """Raised when encoder parameters are invalid."""


@dataclass(frozen=True, slots=True)
class Domain1D:
    """Closed interval [a, b] with Lebesgue measure."""

    a: float
    b: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.a) and math.isfinite(self.b)):
            raise DomainError(f"domain endpoints must be finite, got [{self.a}, {self.b}]")
        if not self.b > self.a:
            raise DomainError(f"domain requires a < b, got [{self.a}, {self.b}]")

    @property
    def length(self) -> float:
        return self.b - self.a

    def contains(self, x: float) -> bool:
        return self.a <= x <= self.b

    def check(self, x: float) -> float:
        x = float(x)
        if not self.contains(x):
            raise DomainError(f"x={x!r} outside domain [{self.a}, {self.b}]")
        return x

    def check_interval(self, c: float, d: float) -> None:
        if not (self.a <= c < d <= self.b):
            raise DomainError(
                f"interval [{c}, {d}] must satisfy {self.a} <= c < d <= {self.b}"
            )


@dataclass(frozen=True, slots=True)
class ProductDomain:
    """Cartesian product of two intervals with the product measure."""

    x: Domain1D
    y: Domain1D

    @property
    def area(self) -> float:
        return self.x.length * self.y.length


def _component_range(dim: int, start: int, stop: Optional[int]) -> np.ndarray:
    stop = dim if stop is None else stop
    if not (0 <= start < stop <= dim):
        raise ValueError(f"component range [{start}, {stop}) invalid for dim {dim}")
    return np.arange(start, stop, dtype=np.uint64)


def _check_common(dim: int, seed: int) -> None:
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise EncoderConfigError(f"dim must be a positive integer, got {dim!r}")
    if not isinstance(seed, int) or isinstance(seed, bool):
        raise EncoderConfigError(f"seed must be an integer, got {seed!r}")


def _as_result(value: np.ndarray) -> Any:
    return float(value) if np.ndim(value) == 0 else value


class Encoder(ABC):
    """Seeded realization of a random process plus its expected kernel."""

    __slots__ = ()

    dim: int
    seed: int
    domain: Optional[Domain1D]
    length_scale: float

    @abstractmethod
    def components(self, x: Any, start: int = 0, stop: Optional[int] = None) -> np.ndarray:
        """Components start..stop-1 of encode(x) as a float64 array."""

    @abstractmethod
    def expected_kernel(self, x: Any, x2: Any) -> Any:
        """Limit kernel; vectorized over numpy arguments for continuous encoders."""

    def integration_kernel(self, x: Any, x2: Any) -> Any:
        """Kernel as seen by integrals over the domain (point masses dropped)."""
        return self.expected_kernel(x, x2)

    def encode(self, x: Any) -> HyperVector:
        return HyperVector(self.components(x))


@dataclass(frozen=True, slots=True)
class _AnchoredEncoder(Encoder):
    """
    Anchors x_k = anchor_origin + k*lambda carry independent +-1 values per component.
    Component i switches from the value of x_k to the value of x_{k+1} at
    t_k = x_k + U_i*lambda, with one uniform offset U_i per component shared by all cells.
    """

    domain: Domain1D
    length_scale: float
    dim: int
    seed: int
    anchor_origin: Optional[float] = None

    def __post_init__(self) -> None:
        _check_common(self.dim, self.seed)
        if not (math.isfinite(self.length_scale) and self.length_scale > 0):
            raise EncoderConfigError(f"length scale must be > 0, got {self.length_scale!r}")
        if self.anchor_origin is None:
            object.__setattr__(self, "anchor_origin", float(self.domain.a))
        elif not math.isfinite(self.anchor_origin):
            raise EncoderConfigError("anchor_origin must be finite")

    def anchor_values(self, k: int, streams: np.ndarray) -> np.ndarray:
        return rademacher(prf_words(self.seed, streams, index_word(k, TAG_ANCHOR)))

    def switch_offsets(self, streams: np.ndarray) -> np.ndarray:
        return uniform_open(prf_words(self.seed, streams, index_word(0, TAG_SWITCH)))

    def switch_points(self, k: int, start: int = 0, stop: Optional[int] = None) -> np.ndarray:
        """Switch positions t_k of every component in cell k."""
        streams = _component_range(self.dim, start, stop)
        return self.anchor_origin + (k + self.switch_offsets(streams)) * self.length_scale

    def cell(self, x: float) -> tuple[int, float]:
        p = (x - self.anchor_origin) / self.length_scale
        k = math.floor(p)
        return k, p - k

    def expected_kernel(self, x: Any, x2: Any) -> Any:
        d = np.abs(np.asarray(x, dtype=float) - np.asarray(x2, dtype=float))
        return _as_result(np.maximum(0.0, 1.0 - d / self.length_scale))


@dataclass(frozen=True, slots=True)
class IntervalStepEncoder(_AnchoredEncoder):
    """Piecewise-constant +-1 encoder on an interval."""

    def components(self, x: float, start: int = 0, stop: Optional[int] = None) -> np.ndarray:
        x = self.domain.check(x)
        streams = _component_range(self.dim, start, stop)
        k, u = self.cell(x)
        left = self.anchor_values(k, streams)
        right = self.anchor_values(k + 1, streams)
        return np.where(u < self.switch_offsets(streams), left, right)


@dataclass(frozen=True, slots=True)
class SigmoidEncoder(_AnchoredEncoder):
    """
    Step encoder with every jump v_k -> v_{k+1} replaced by (v_{k+1}-v_k)*sigma((x-t_k)/tau).

    Shares anchors and switch points with the IntervalStepEncoder of the same parameters.
    The kernel is close to, not equal to, the triangular one; expected_kernel returns the
    triangular limit that tau -> 0 approaches.
    """

    tau: Optional[float] = None

    def __post_init__(self) -> None:
        _AnchoredEncoder.__post_init__(self)
        if self.tau is None:
            object.__setattr__(self, "tau", self.length_scale / 20.0)
        elif not (math.isfinite(self.tau) and self.tau > 0):
            raise EncoderConfigError(f"tau must be > 0, got {self.tau!r}")

    def step(self) -> IntervalStepEncoder:
        return IntervalStepEncoder(
            self.domain, self.length_scale, self.dim, self.seed, self.anchor_origin
        )

    def components(
        self, x: float, start: int = 0, stop: Optional[int] = None, *, order: int = 0
    ) -> np.ndarray:
        """Components (order 0) or their exact derivatives of order 1 or 2."""
        if order not in (0, 1, 2):
            raise ValueError(f"exact sigmoid derivatives support order <= 2, got {order}")
        x = self.domain.check(x)
        streams = _component_range(self.dim, start, stop)
        offsets = self.switch_offsets(streams)
        reach = _SATURATION * self.tau
        j_lo = math.floor((x - self.anchor_origin - reach) / self.length_scale) - 1
        j_hi = math.floor((x - self.anchor_origin + reach) / self.length_scale) + 1

        prev = self.anchor_values(j_lo, streams)
        out = prev.copy() if order == 0 else np.zeros_like(prev)
        for j in range(j_lo, j_hi + 1):
            nxt = self.anchor_values(j + 1, streams)
            t = self.anchor_origin + (j + offsets) * self.length_scale
            s = expit((x - t) / self.tau)
            if order == 0:
                out += (nxt - prev) * s
            elif order == 1:
                out += (nxt - prev) * (s * (1.0 - s)) / self.tau
            else:
                out += (nxt - prev) * (s * (1.0 - s) * (1.0 - 2.0 * s)) / self.tau**2
            prev = nxt
        return out


@dataclass(frozen=True, slots=True)
class PeriodicEncoder(Encoder):
    """Step encoder on [a, b] with a and b identified; lambda = (b - a)/n_cells."""

    domain: Domain1D
    n_cells: int
    dim: int
    seed: int

    def __post_init__(self) -> None:
        _check_common(self.dim, self.seed)
        if not isinstance(self.n_cells, int) or self.n_cells < 2:
            raise EncoderConfigError(f"n_cells must be an integer >= 2, got {self.n_cells!r}")

    @property
    def length_scale(self) -> float:
        return self.domain.length / self.n_cells

    def components(self, x: float, start: int = 0, stop: Optional[int] = None) -> np.ndarray:
        x = self.domain.check(x)
        if x == self.domain.b:
            x = self.domain.a
        streams = _component_range(self.dim, start, stop)
        p = (x - self.domain.a) / self.length_scale
        k = min(math.floor(p), self.n_cells - 1)
        u = p - k
        offsets = uniform_open(prf_words(self.seed, streams, index_word(0, TAG_SWITCH)))
        left = rademacher(prf_words(self.seed, streams, index_word(k, TAG_ANCHOR)))
        right_k = (k + 1) % self.n_cells
        right = rademacher(prf_words(self.seed, streams, index_word(right_k, TAG_ANCHOR)))
        return np.where(u < offsets, left, right)

    def wrapped_distance(self, x: Any, x2: Any) -> Any:
        d = np.abs(np.asarray(x, dtype=float) - np.asarray(x2, dtype=float))
        return np.minimum(d, self.domain.length - d)

    def expected_kernel(self, x: Any, x2: Any) -> Any:
        d = self.wrapped_distance(x, x2)
        return _as_result(np.maximum(0.0, 1.0 - d / self.length_scale))

    def normalization_constant(self) -> float:
        """sqrt(lambda): the wrapped triangle integrates to lambda around the circle."""
        return math.sqrt(self.length_scale)


@dataclass(frozen=True, slots=True)
class DiscreteTripleEncoder(Encoder):
    """
    Encoder for triples (x1, x2, x3) in U x V x W built from per-slot +-1 vectors r_s.

    mode "sum":      (r1 + r2 + r3)/sqrt(3),          kernel (d1 + d2 + d3)/3
    mode "pairwise": (r1 r2 + r2 r3 + r3 r1)/sqrt(3), kernel (d1 d2 + d2 d3 + d3 d1)/3
    mode "product":  r1 r2 r3,                        kernel d1 d2 d3
    where d_s is the Kronecker delta of slot s.
    """

    sizes: tuple[int, int, int]
    dim: int
    seed: int
    mode: str = "sum"

    def __post_init__(self) -> None:
        _check_common(self.dim, self.seed)
        sizes = tuple(self.sizes)
        if len(sizes) != 3 or any(not isinstance(s, int) or s < 1 for s in sizes):
            raise EncoderConfigError(f"sizes must be three positive integers, got {self.sizes!r}")
        object.__setattr__(self, "sizes", sizes)
        if self.mode not in DISCRETE_MODES:
            raise EncoderConfigError(f"mode must be one of {DISCRETE_MODES}, got {self.mode!r}")

    @classmethod
    def with_length_scale(
        cls, length_scale: float, sizes: tuple[int, int, int], dim: int, seed: int
    ) -> DiscreteTripleEncoder:
        """Pick the construction whose kernel vanishes exactly at distance >= length_scale."""
        if not length_scale > 0:
            raise EncoderConfigError(f"length scale must be > 0, got {length_scale!r}")
        if length_scale < 1.0 / 3.0:
            mode = "product"
        elif length_scale < 2.0 / 3.0:
            mode = "pairwise"
        else:
            mode = "sum"
        return cls(sizes, dim, seed, mode)

    @property
    def domain(self) -> None:
        return None

    @property
    def length_scale(self) -> float:
        return {"product": 1.0 / 3.0, "pairwise": 2.0 / 3.0, "sum": 1.0}[self.mode]

    def _check(self, x: Any) -> tuple[int, int, int]:
        try:
            triple = tuple(int(v) for v in x)
        except TypeError as exc:
            raise DomainError(f"expected a triple of indices, got {x!r}") from exc
        if len(triple) != 3:
            raise DomainError(f"expected a triple of indices, got {x!r}")
        for slot, (v, size) in enumerate(zip(triple, self.sizes)):
            if not 0 <= v < size:
                raise DomainError(f"index {v} in slot {slot} outside [0, {size})")
        return triple

    def _slot(self, slot: int, value: int, streams: np.ndarray) -> np.ndarray:
        k = (slot << 32) | value
        return rademacher(prf_words(self.seed, streams, index_word(k, TAG_DISCRETE)))

    def components(self, x: Any, start: int = 0, stop: Optional[int] = None) -> np.ndarray:
        triple = self._check(x)
        streams = _component_range(self.dim, start, stop)
        r1, r2, r3 = (self._slot(s, v, streams) for s, v in enumerate(triple))
        if self.mode == "sum":
            return (r1 + r2 + r3) / math.sqrt(3.0)
        if self.mode == "pairwise":
            return (r1 * r2 + r2 * r3 + r3 * r1) / math.sqrt(3.0)
        return r1 * r2 * r3

    def expected_kernel(self, x: Any, x2: Any) -> float:
        d1, d2, d3 = (float(u == v) for u, v in zip(self._check(x), self._check(x2)))
        if self.mode == "sum":
            return (d1 + d2 + d3) / 3.0
        if self.mode == "pairwise":
            return (d1 * d2 + d2 * d3 + d3 * d1) / 3.0
        return d1 * d2 * d3

    def normalization_constant(self) -> float:
        """n with n**2 equal to the kernel summed over the whole (counting-measure) space."""
        nu, nv, nw = self.sizes
        if self.mode == "sum":
            return math.sqrt((nu * nv + nv * nw + nw * nu) / 3.0)
        if self.mode == "pairwise":
            return math.sqrt((nu + nv + nw) / 3.0)
        return 1.0


@dataclass(frozen=True, slots=True)
class EpsilonMixedEncoder(Encoder):
    """
    With probability epsilon (decided once per component) a component is replaced by an
    independent +-1 function of x; the kernel becomes (1-eps) k(x, x') + eps [x == x'].
    """

    base: Encoder
    epsilon: float
    dim: int = field(init=False)
    seed: int = field(init=False)

    def __post_init__(self) -> None:
        if not (0.0 <= self.epsilon <= 1.0):
            raise EncoderConfigError(f"epsilon must lie in [0, 1], got {self.epsilon!r}")
        if isinstance(self.base, DiscreteTripleEncoder):
            raise EncoderConfigError("epsilon mixing needs an encoder over an interval")
        object.__setattr__(self, "dim", self.base.dim)
        object.__setattr__(self, "seed", self.base.seed)

    @property
    def domain(self) -> Optional[Domain1D]:
        return self.base.domain

    @property
    def length_scale(self) -> float:
        return self.base.length_scale

    def components(self, x: float, start: int = 0, stop: Optional[int] = None) -> np.ndarray:
        values = self.base.components(x, start, stop)
        if self.epsilon == 0.0:
            return values
        streams = _component_range(self.dim, start, stop)
        decision = uniform_open(prf_words(self.seed, streams, index_word(0, TAG_EPS_DECISION)))
        point_bits = int(np.float64(float(x) + 0.0).view(np.int64))
        noise = rademacher(prf_words(self.seed, streams, index_word(point_bits, TAG_EPS_NOISE)))
        return np.where(decision < self.epsilon, noise, values)

    def expected_kernel(self, x: Any, x2: Any) -> Any:
        same = np.asarray(x, dtype=float) == np.asarray(x2, dtype=float)
        k = np.asarray(self.base.expected_kernel(x, x2), dtype=float)
        return _as_result((1.0 - self.epsilon) * k + self.epsilon * same)

    def integration_kernel(self, x: Any, x2: Any) -> Any:
        k = np.asarray(self.base.integration_kernel(x, x2), dtype=float)
        return _as_result((1.0 - self.epsilon) * k)


@dataclass(frozen=True, slots=True)
class PiecewiseEncoder(Encoder):
    """
    Independent encoders on [a, split) and [split, b].

    Points on different sides have kernel zero, so a function with a jump at split is
    approximated without smearing across it.
    """

    left: Encoder
    right: Encoder
    split: float
    dim: int = field(init=False)
    seed: int = field(init=False)

    def __post_init__(self) -> None:
        if self.left.domain is None or self.right.domain is None:
            raise EncoderConfigError("piecewise encoding needs two interval encoders")
        if self.left.dim != self.right.dim:
            raise EncoderConfigError(
                f"sub-encoder dims differ: {self.left.dim} vs {self.right.dim}"
            )
        if self.left.seed == self.right.seed:
            raise EncoderConfigError("sub-encoders must use different seeds")
        if not (self.left.domain.b == self.split == self.right.domain.a):
            raise EncoderConfigError(
                f"sub-domains must meet at split={self.split}: "
                f"[{self.left.domain.a}, {self.left.domain.b}] and "
                f"[{self.right.domain.a}, {self.right.domain.b}]"
            )
        object.__setattr__(self, "dim", self.left.dim)
        object.__setattr__(self, "seed", self.left.seed)

    @property
    def domain(self) -> Domain1D:
        return Domain1D(self.left.domain.a, self.right.domain.b)

    @property
    def length_scale(self) -> float:
        return max(self.left.length_scale, self.right.length_scale)

    def components(self, x: float, start: int = 0, stop: Optional[int] = None) -> np.ndarray:
        x = self.domain.check(x)
        side = self.left if x < self.split else self.right
        return side.components(x, start, stop)

    def _sided(self, x: Any, x2: Any, kernel_name: str) -> Any:
        xa = np.asarray(x, dtype=float)
        xb = np.asarray(x2, dtype=float)
        # sub-kernels are evaluated with clipped arguments and masked afterwards
        lx = np.clip(xa, self.left.domain.a, self.split)
        lx2 = np.clip(xb, self.left.domain.a, self.split)
        rx = np.clip(xa, self.split, self.right.domain.b)
        rx2 = np.clip(xb, self.split, self.right.domain.b)
        k_left = np.asarray(getattr(self.left, kernel_name)(lx, lx2), dtype=float)
        k_right = np.asarray(getattr(self.right, kernel_name)(rx, rx2), dtype=float)
        both_left = (xa < self.split) & (xb < self.split)
        both_right = (xa >= self.split) & (xb >= self.split)
        return _as_result(np.where(both_left, k_left, np.where(both_right, k_right, 0.0)))

    def expected_kernel(self, x: Any, x2: Any) -> Any:
        return self._sided(x, x2, "expected_kernel")

    def integration_kernel(self, x: Any, x2: Any) -> Any:
        return self._sided(x, x2, "integration_kernel")
