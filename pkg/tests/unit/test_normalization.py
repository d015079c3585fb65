from __future__ import annotations

import numpy as np
import pytest

from hd_transform.core.encodings import (
    DiscreteTripleEncoder,
    Domain1D,
    EpsilonMixedEncoder,
    PeriodicEncoder,
)
from hd_transform.core.normalization import (
    ConstantNormalization,
    NormalizationError,
    NormalizationFn,
    NormalizedEncoder,
    initial_guess,
    iterate_normalization,
    normalize_encoder,
    solve_normalization,
    tilde_one,
)
from hd_transform.core.quadrature import trapezoid_weights, uniform_grid


def test_default_iteration_reaches_one_percent(step_encoder, unit_domain):
    trace = iterate_normalization(step_encoder.expected_kernel, unit_domain)
    assert len(trace.iterates) == 11
    assert len(trace.residuals) == 11
    assert trace.residuals[-1] <= 0.01
    assert trace.residuals[-1] < trace.residuals[0]


def test_solve_returns_final_iterate_with_residual(step_encoder, unit_domain):
    trace = iterate_normalization(step_encoder.expected_kernel, unit_domain)
    norm = solve_normalization(step_encoder.expected_kernel, unit_domain)
    np.testing.assert_array_equal(norm.values, trace.iterates[-1])
    assert norm.residual == trace.residuals[-1]


def test_tolerance_stops_early(step_encoder, unit_domain):
    trace = iterate_normalization(step_encoder.expected_kernel, unit_domain, tolerance=0.5)
    assert len(trace.iterates) < 11
    assert trace.residuals[-1] < 0.5


def test_zero_iterations_keeps_initial_guess(step_encoder, unit_domain):
    trace = iterate_normalization(step_encoder.expected_kernel, unit_domain, iterations=0)
    guess = initial_guess(step_encoder.expected_kernel, unit_domain, trace.grid)
    assert len(trace.iterates) == 1
    np.testing.assert_array_equal(trace.iterates[0], guess.values)


def test_initial_guess_is_root_of_kernel_integral(step_encoder, unit_domain):
    grid = uniform_grid(unit_domain, 101)
    guess = initial_guess(step_encoder.expected_kernel, unit_domain, grid)
    # interior: the full triangle of area lambda
    assert guess.eval(0.5) == pytest.approx(np.sqrt(0.25), rel=1e-12)
    # endpoints: half the triangle
    assert guess.eval(0.0) == pytest.approx(np.sqrt(0.125), rel=1e-12)


def test_tilde_one_of_final_iterate_matches_residual(step_encoder, unit_domain):
    norm = solve_normalization(step_encoder.expected_kernel, unit_domain)
    t = tilde_one(step_encoder.expected_kernel, norm, unit_domain, norm.grid)
    assert np.max(np.abs(t - 1.0)) <= 0.01


def test_periodic_normalization_is_constant():
    domain = Domain1D(0.0, 1.0)
    enc = PeriodicEncoder(domain, 4, 16, 0)
    norm = normalize_encoder(enc).norm
    assert isinstance(norm, ConstantNormalization)
    for x in (0.0, 0.3, 0.999):
        assert abs(norm.eval(x) - np.sqrt(enc.length_scale)) <= 1e-6

    # the iterative solve on the default grid only agrees to quadrature accuracy
    solved = solve_normalization(enc.expected_kernel, domain)
    np.testing.assert_allclose(solved.values, 0.5, rtol=1e-3)


def test_degenerate_kernel_rejected(unit_domain):
    with pytest.raises(NormalizationError) as exc:
        iterate_normalization(lambda x, y: 0.0 * (x - y), unit_domain)
    assert "degenerate kernel" in str(exc.value)


def test_grid_must_span_domain(step_encoder, unit_domain):
    with pytest.raises(ValueError) as exc:
        initial_guess(step_encoder.expected_kernel, unit_domain, np.linspace(0.0, 0.9, 10))
    assert "must span" in str(exc.value)


def test_normalization_fn_interpolates_and_clamps():
    n = NormalizationFn(np.array([0.0, 1.0, 2.0]), np.array([1.0, 3.0, 4.0]))
    assert n.eval(0.5) == 2.0
    assert n.eval(5.0) == 4.0
    np.testing.assert_allclose(n.eval(np.array([0.0, 1.5])), [1.0, 3.5])
    assert n.slope(0.5) == 2.0
    assert n.slope(1.0) == 1.0
    assert n.slope(2.0) == 1.0


def test_normalization_fn_must_be_positive():
    with pytest.raises(NormalizationError):
        NormalizationFn(np.array([0.0, 1.0]), np.array([1.0, 0.0]))


def test_constant_normalization():
    c = ConstantNormalization(2.0)
    assert c.eval(0.3) == 2.0
    assert c.eval((0, 1, 0)) == 2.0
    np.testing.assert_array_equal(c.eval(np.zeros(3)), [2.0, 2.0, 2.0])
    assert c.slope(0.1) == 0.0
    with pytest.raises(NormalizationError):
        ConstantNormalization(0.0)


def test_discrete_encoder_uses_closed_form():
    enc = normalize_encoder(DiscreteTripleEncoder((2, 2, 2), 64, 1))
    assert isinstance(enc.norm, ConstantNormalization)
    assert enc.norm.eval((0, 1, 0)) == 2.0
    assert enc.domain is None


def test_normalized_encoder_divides_components(normalized_step, step_encoder):
    n = normalized_step.norm.eval(0.4)
    np.testing.assert_allclose(normalized_step.components(0.4), step_encoder.components(0.4) / n)
    assert normalized_step.dim == step_encoder.dim
    assert normalized_step.length_scale == 0.25


def test_normalized_kernel_integrates_to_about_one(normalized_step):
    grid = np.linspace(0.0, 1.0, 2001)
    w = trapezoid_weights(grid)
    for x in (0.0, 0.1, 0.5, 0.93, 1.0):
        area = float(np.sum(w * normalized_step.normalized_kernel(x, grid)))
        assert area == pytest.approx(1.0, abs=0.02)


def test_epsilon_mixing_drops_point_mass_from_normalization(step_encoder):
    mixed = normalize_encoder(EpsilonMixedEncoder(step_encoder, 0.36))
    plain = normalize_encoder(step_encoder)
    # integration kernel is 0.64 k, so n scales by 0.8
    assert mixed.norm.eval(0.5) == pytest.approx(0.8 * plain.norm.eval(0.5), rel=1e-9)


def test_normalize_encoder_wraps_base(step_encoder):
    enc = normalize_encoder(step_encoder, grid_size=50, iterations=3)
    assert isinstance(enc, NormalizedEncoder)
    assert enc.base is step_encoder
    assert enc.norm.grid.size == 50
