"""
Linear equations as ridge regression over hypervector rows.

Every constraint is a FunctionalRow meaning inner_scaled(F, r) = target, with a weight w
(default 1). A set of rows with a ridge parameter is solved in dual form:

    G_ik = inner_scaled(r_i, r_k)
    (G + ridge * diag(1 / w_i^2)) alpha = targets
    F = sum_i alpha_i r_i

which minimizes sum_i w_i^2 (<F, r_i> - b_i)^2 + ridge * <F, F>. With unit weights the
system is G + ridge * I.

ode_problem and fredholm_rows project their rows onto the span of the encodings at the
collocation points, so F is the transform of a function sampled there and f~ reads every
direction of F. Boundary rows carry BOUNDARY_WEIGHT and act as near-exact constraints.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field, replace
from typing import Callable, Sequence, Union

import numpy as np
from scipy.linalg import LinAlgError, cho_factor, cho_solve, orth
from scipy.sparse.linalg import cg

from hd_transform.core.calculus import DerivativeSpec, derivative_components
from hd_transform.core.errors import NumericalError
from hd_transform.core.multivariate import ProductEncoder
from hd_transform.core.normalization import NormalizedEncoder
from hd_transform.core.quadrature import uniform_grid
from hd_transform.core.transform import SampledFunction
from hd_transform.core.vectors import HyperVector

logger = logging.getLogger(__name__)

Coefficient = Union[float, Callable[[float], float]]

JITTER_SCALE = 1e-10
CG_RTOL = 1e-12
# boundary rows: ridge penalty divided by BOUNDARY_WEIGHT**2
BOUNDARY_WEIGHT = 100.0
# one-sided collocation stencils, accurate enough not to fight the central rows
ODE_EDGE_ACCURACY = 4


class SolverInputError(ValueError):
    """Raised for an empty or inconsistent regression problem."""


class ConditioningError(NumericalError):
    """Raised when the dual system cannot be solved even after jitter and CG."""


@dataclass(frozen=True, slots=True)
class FunctionalRow:
    """Constraint inner_scaled(F, r) == target; weight scales its squared residual."""

    r: HyperVector
    target: float
    weight: float = 1.0

    def __post_init__(self) -> None:
        if not (math.isfinite(self.weight) and self.weight > 0):
            raise SolverInputError(f"row weight must be > 0, got {self.weight!r}")

    def with_vector(self, values: np.ndarray) -> FunctionalRow:
        return FunctionalRow(HyperVector(values), self.target, self.weight)


@dataclass(frozen=True, slots=True)
class RidgeProblem:
    rows: tuple[FunctionalRow, ...]
    ridge: float = 1.0

    def __post_init__(self) -> None:
        rows = tuple(self.rows)
        if not rows:
            raise SolverInputError("ridge problem needs at least one row")
        dims = {row.r.dim for row in rows}
        if len(dims) != 1:
            raise SolverInputError(f"rows have different dims: {sorted(dims)}")
        if not (math.isfinite(self.ridge) and self.ridge >= 0):
            raise SolverInputError(f"ridge must be >= 0, got {self.ridge!r}")
        object.__setattr__(self, "rows", rows)

    @property
    def dim(self) -> int:
        return self.rows[0].r.dim

    def penalties(self) -> np.ndarray:
        """Diagonal of the m x m dual system beyond G: ridge / w_i^2."""
        weights = np.array([row.weight for row in self.rows], dtype=np.float64)
        return self.ridge / weights**2

    def matrix(self) -> np.ndarray:
        return np.stack([row.r.values for row in self.rows])

    def targets(self) -> np.ndarray:
        return np.array([row.target for row in self.rows], dtype=np.float64)


@dataclass(frozen=True, slots=True)
class DualSolution:
    vector: HyperVector
    alpha: np.ndarray
    residual: float
    method: str


def _evaluate(c: Coefficient, x: float) -> float:
    return float(c(x)) if callable(c) else float(c)


def ode_row(
    enc: NormalizedEncoder,
    x: float,
    coeffs: Sequence[Coefficient],
    rhs: Coefficient,
    spec: DerivativeSpec,
) -> FunctionalRow:
    """Row for sum_k a_k(x) f^(k)(x) = b(x)."""
    if not coeffs:
        raise SolverInputError("ode_row needs at least one coefficient")
    r = np.zeros(enc.dim)
    for k, c in enumerate(coeffs):
        a = _evaluate(c, x)
        if a != 0.0:
            r += a * derivative_components(enc, x, spec.with_order(k))
    return FunctionalRow(HyperVector(r), _evaluate(rhs, x))


def boundary_row(
    enc: NormalizedEncoder,
    x: float,
    order: int,
    value: float,
    spec: DerivativeSpec,
    weight: float = BOUNDARY_WEIGHT,
) -> FunctionalRow:
    """Row for f^(order)(x) = value."""
    return FunctionalRow(
        HyperVector(derivative_components(enc, x, spec.with_order(order))), float(value), weight
    )


def data_row(enc: NormalizedEncoder, x: float, y: float) -> FunctionalRow:
    """Row for an observation f(x) = y."""
    return FunctionalRow(enc.encode_normalized(x), float(y))


def _gram(rows: np.ndarray) -> np.ndarray:
    m, dim = rows.shape
    gram = np.empty((m, m))
    for i in range(m):
        gram[i, i:] = np.sum(rows[i] * rows[i:], axis=1) / dim
        gram[i:, i] = gram[i, i:]
    return gram


def _cg(system: np.ndarray, targets: np.ndarray) -> np.ndarray:
    m = targets.size
    alpha, info = cg(system, targets, rtol=CG_RTOL, atol=0.0, maxiter=20 * m)
    if info != 0:
        raise ConditioningError(f"conjugate gradient did not converge (info={info})")
    return alpha


def solve_dual(p: RidgeProblem) -> DualSolution:
    """Dual ridge solve: Cholesky, one jitter retry, then conjugate gradient."""
    rows = p.matrix()
    targets = p.targets()
    m = targets.size
    gram = _gram(rows)
    system = gram + np.diag(p.penalties())

    if p.ridge == 0.0:
        logger.warning("ridge = 0: solving the unregularized system with conjugate gradient")
        alpha, method = _cg(system, targets), "cg"
    else:
        try:
            alpha, method = cho_solve(cho_factor(system, lower=True), targets), "cholesky"
        except LinAlgError:
            jitter = JITTER_SCALE * float(np.trace(gram)) / m
            logger.warning("Cholesky failed; retrying with diagonal jitter %.3e", jitter)
            try:
                alpha = cho_solve(cho_factor(system + jitter * np.eye(m), lower=True), targets)
                method = "cholesky+jitter"
            except LinAlgError:
                logger.warning("Cholesky failed after jitter; falling back to CG")
                alpha, method = _cg(system, targets), "cg"

    residual = float(np.max(np.abs(system @ alpha - targets)))
    vector = np.zeros(p.dim)
    for a, r in zip(alpha, rows):
        vector += a * r
    logger.info("dual solve m=%d method=%s residual=%.3e", m, method, residual)
    return DualSolution(HyperVector(vector), alpha, residual, method)


def ridge_solve(p: RidgeProblem) -> HyperVector:
    return solve_dual(p).vector


def solve_primal(p: RidgeProblem) -> HyperVector:
    """(R^T W R / D + ridge * I) F = R^T W B with W = diag(w_i^2); a D x D reference solve."""
    rows = p.matrix()
    w2 = np.array([row.weight for row in p.rows], dtype=np.float64) ** 2
    lhs = rows.T @ (w2[:, None] * rows) / p.dim + p.ridge * np.eye(p.dim)
    return HyperVector(np.linalg.solve(lhs, rows.T @ (w2 * p.targets())))


@dataclass(frozen=True, slots=True)
class OdePreset:
    """Linear ODE on [0, 1]: sum_k coeffs[k] f^(k) = 0 with boundary conditions."""

    name: str
    k: float
    beta: float
    coeffs: tuple[float, ...]
    bcs: tuple[tuple[float, int, float], ...]
    analytic: Callable[[float], float] = field(compare=False)


ODE_PRESETS = ("decay", "harmonic", "damped")


def ode_preset(name: str, k: float = 10.0, beta: float = 2.0) -> OdePreset:
    if name == "decay":
        return OdePreset(name, k, 0.0, (k, 1.0), ((0.0, 0, 1.0),), lambda x: math.exp(-k * x))
    if name == "harmonic":
        return OdePreset(
            name, k, 0.0, (k * k, 0.0, 1.0), ((0.0, 0, 1.0), (0.0, 1, 0.0)),
            lambda x: math.cos(k * x),
        )
    if name == "damped":
        if not 0 <= beta < k:
            raise SolverInputError(f"damped preset needs 0 <= beta < k, got beta={beta}, k={k}")
        omega = math.sqrt(k * k - beta * beta)
        return OdePreset(
            name, k, beta, (k * k, 2.0 * beta, 1.0), ((0.0, 0, 1.0), (0.0, 1, 0.0)),
            lambda x: math.exp(-beta * x)
            * (math.cos(omega * x) + beta / omega * math.sin(omega * x)),
        )
    raise SolverInputError(f"unknown ODE preset {name!r}; known: {ODE_PRESETS}")


def collocation_points(enc: NormalizedEncoder, m: int) -> np.ndarray:
    """m equidistant points including both endpoints."""
    return uniform_grid(enc.domain, m)


def span_basis(enc: NormalizedEncoder, points: Sequence[float]) -> np.ndarray:
    """Normalized encodings of the distinct points, one per row."""
    xs = np.unique(np.asarray(points, dtype=np.float64))
    return np.stack([enc.components(float(x)) for x in xs])


def project_rows(p: RidgeProblem, basis: np.ndarray) -> RidgeProblem:
    """
    Same constraints with every row replaced by its orthogonal projection onto span(basis).

    For F in that span inner_scaled(F, r) is unchanged, and the dual solution stays in it.
    """
    if basis.ndim != 2 or basis.shape[1] != p.dim:
        raise SolverInputError(f"basis must be k x {p.dim}, got shape {basis.shape}")
    q = orth(basis.T)
    projected = (p.matrix() @ q) @ q.T
    logger.debug("projected %d rows onto a span of rank %d", len(p.rows), q.shape[1])
    return RidgeProblem(
        tuple(row.with_vector(values) for row, values in zip(p.rows, projected)), p.ridge
    )


def ode_problem(
    enc: NormalizedEncoder,
    coeffs: Sequence[Coefficient],
    rhs: Coefficient,
    bcs: Sequence[tuple[float, int, float]],
    points: Sequence[float],
    spec: DerivativeSpec,
    ridge: float = 1.0,
    data: Sequence[tuple[float, float]] = (),
    bc_weight: float = BOUNDARY_WEIGHT,
    edge_accuracy: int = ODE_EDGE_ACCURACY,
    span: bool = True,
) -> RidgeProblem:
    """
    Collocation rows, then boundary rows, then data rows.

    With span=True the rows are projected onto the encodings at the collocation, boundary
    and data points. Without it the minimum-norm solution may move f~ at the off-grid
    stencil points independently of the collocation values, and oscillating solutions decay.
    """
    spec = replace(spec, edge_accuracy=edge_accuracy)
    rows = [ode_row(enc, float(x), coeffs, rhs, spec) for x in points]
    rows += [boundary_row(enc, x, order, value, spec, bc_weight) for x, order, value in bcs]
    rows += [data_row(enc, x, y) for x, y in data]
    problem = RidgeProblem(tuple(rows), ridge)
    if not span:
        return problem
    support = [*map(float, points), *(x for x, _, _ in bcs), *(x for x, _ in data)]
    return project_rows(problem, span_basis(enc, support))


def fredholm_rows(
    enc_pair: ProductEncoder,
    enc_f: NormalizedEncoder,
    K: HyperVector,
    lambda_f: float,
    b: SampledFunction,
    points: Sequence[float],
    ridge: float = 1.0,
    span: bool = True,
) -> RidgeProblem:
    """
    Rows for f(x) = b(x) + lambda_f * integral k(y, x) f(y) dy.

    K is the bivariate transform of k with y on the enc_pair.enc_x axis (the same encoder as
    enc_f) and x on the enc_pair.enc_y axis. The kernel term reads F correctly only when F
    is a transform of a function under enc_f, so with span=True the rows are projected onto
    the encodings of enc_f at the collocation points.
    """
    if enc_f.base != enc_pair.enc_x.base:
        raise SolverInputError("enc_f must be the encoder of the kernel's first (y) axis")
    if K.dim != enc_f.dim:
        raise SolverInputError(f"K has dim {K.dim}, encoders have dim {enc_f.dim}")
    points = np.asarray(points, dtype=np.float64)
    targets = b.sample(points)
    rows = []
    for x, target in zip(points, targets):
        x = float(x)
        r = enc_f.components(x) - lambda_f * K.values * enc_pair.enc_y.components(x)
        rows.append(FunctionalRow(HyperVector(r), float(target)))
    problem = RidgeProblem(tuple(rows), ridge)
    return project_rows(problem, span_basis(enc_f, points)) if span else problem
