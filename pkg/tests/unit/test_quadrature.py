from __future__ import annotations

import numpy as np
import pytest

from hd_transform.core.encodings import Domain1D
from hd_transform.core.quadrature import (
    Quadrature,
    default_node_count,
    trapezoid_weights,
    uniform_grid,
)


def test_midpoint_nodes_and_weights(unit_domain):
    q = Quadrature.midpoint(unit_domain, 4)
    np.testing.assert_allclose(q.nodes, [0.125, 0.375, 0.625, 0.875])
    np.testing.assert_allclose(q.weights, [0.25] * 4)
    assert q.size == 4
    assert q.total_weight == pytest.approx(1.0)


def test_midpoint_integrates_linear_functions_exactly():
    q = Quadrature.midpoint(Domain1D(-1.0, 3.0), 7)
    assert q.integrate(2.0 * q.nodes + 1.0) == pytest.approx(12.0, rel=1e-14)


@pytest.mark.parametrize("length_scale, count", [(0.25, 80), (0.125, 160), (1.0, 20)])
def test_node_count_follows_length_scale(unit_domain, length_scale, count):
    assert default_node_count(unit_domain, length_scale) == count
    assert Quadrature.for_length_scale(unit_domain, length_scale).size == count


def test_trapezoid_weights_sum_to_length():
    grid = np.array([0.0, 0.1, 0.4, 1.0])
    w = trapezoid_weights(grid)
    np.testing.assert_allclose(w, [0.05, 0.2, 0.45, 0.3])
    assert Quadrature.trapezoid(grid).total_weight == pytest.approx(1.0)


def test_uniform_grid_hits_both_endpoints():
    domain = Domain1D(0.1, 0.7)
    grid = uniform_grid(domain, 100)
    assert grid[0] == 0.1 and grid[-1] == 0.7
    assert grid.size == 100


def test_nodes_must_increase():
    with pytest.raises(ValueError) as exc:
        Quadrature(np.array([0.2, 0.1]), np.array([0.5, 0.5]))
    assert "strictly increasing" in str(exc.value)


def test_weights_must_be_positive():
    with pytest.raises(ValueError) as exc:
        Quadrature(np.array([0.1, 0.2]), np.array([0.5, 0.0]))
    assert "positive" in str(exc.value)


def test_arrays_are_read_only(unit_domain):
    q = Quadrature.midpoint(unit_domain, 3)
    with pytest.raises(ValueError):
        q.weights[0] = 1.0
