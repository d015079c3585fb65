from __future__ import annotations

import numpy as np
import pytest

from hd_transform.core.fuzzy import (
    PartitionError,
    TriangularPartition,
    fuzzy_inverse,
    fuzzy_transform,
)
from hd_transform.core.presets import get_function


def test_partition_nodes_and_basis(unit_domain):
    p = TriangularPartition(unit_domain, 5)
    np.testing.assert_allclose(p.nodes, [0.0, 0.25, 0.5, 0.75, 1.0])
    assert p.spacing == 0.25
    assert p.basis(2, 0.5) == 1.0
    assert p.basis(2, 0.625) == pytest.approx(0.5)
    assert p.basis(2, 0.8) == 0.0


def test_partition_needs_two_nodes(unit_domain):
    with pytest.raises(PartitionError) as exc:
        TriangularPartition(unit_domain, 1)
    assert "at least 2 nodes" in str(exc.value)


def test_interior_components_reproduce_linear_functions(unit_domain):
    p = TriangularPartition(unit_domain, 11)
    G = fuzzy_transform(get_function("linear"), p)
    np.testing.assert_allclose(G[1:-1], p.nodes[1:-1], atol=1e-10)


def test_inverse_interpolates_components(unit_domain):
    p = TriangularPartition(unit_domain, 5)
    G = np.array([0.0, 1.0, 0.0, -1.0, 0.0])
    np.testing.assert_allclose(fuzzy_inverse(G, p, p.nodes), G)
    assert fuzzy_inverse(G, p, 0.125) == pytest.approx(0.5)


def test_inverse_rejects_wrong_component_count(unit_domain):
    p = TriangularPartition(unit_domain, 5)
    with pytest.raises(PartitionError) as exc:
        fuzzy_inverse(np.zeros(4), p, 0.5)
    assert "expected 5 components" in str(exc.value)


def test_fuzzy_approximation_improves_with_more_nodes(unit_domain):
    f = get_function("x_sin_10x")
    xs = np.linspace(0.0, 1.0, 201)
    truth = f.sample(xs)
    errors = []
    for count in (6, 21):
        p = TriangularPartition(unit_domain, count)
        errors.append(np.max(np.abs(fuzzy_inverse(fuzzy_transform(f, p), p, xs) - truth)))
    assert errors[1] < errors[0]
