from __future__ import annotations

import numpy as np
import pytest

from hd_transform.core.calculus import (
    EXACT_SIGMOID,
    FINITE_DIFFERENCE,
    DerivativeError,
    DerivativeSpec,
    derivative_components,
    derivative_eval,
    encoding_derivative,
    integral,
    stencil,
)
from hd_transform.core.encodings import Domain1D, IntervalStepEncoder
from hd_transform.core.normalization import (
    ConstantNormalization,
    NormalizedEncoder,
    normalize_encoder,
)
from hd_transform.core.presets import get_function
from hd_transform.core.quadrature import Quadrature
from hd_transform.core.transform import forward, inverse_eval, ones_vector
from hd_transform.core.vectors import inner_scaled


@pytest.mark.parametrize(
    "kwargs, message",
    [
        ({"order": -1}, "non-negative integer"),
        ({"order": 1, "method": "spline"}, "method must be one of"),
        ({"order": 1, "h": 0.0}, "step h must be > 0"),
        ({"order": 3, "method": EXACT_SIGMOID}, "up to order 2"),
    ],
)
def test_invalid_spec_rejected(kwargs, message):
    with pytest.raises(DerivativeError) as exc:
        DerivativeSpec(**kwargs)
    assert message in str(exc.value)


def test_default_step_is_a_fifth_of_the_length_scale(normalized_step):
    assert DerivativeSpec(1).step_for(normalized_step) == pytest.approx(0.05)
    assert DerivativeSpec(1, h=0.01).step_for(normalized_step) == 0.01
    assert DerivativeSpec(1, h=0.01).with_order(2) == DerivativeSpec(2, FINITE_DIFFERENCE, 0.01)


def test_central_stencils_in_the_interior(unit_domain):
    st = stencil(unit_domain, 0.5, 1, 0.1)
    assert st.kind == "central"
    np.testing.assert_allclose(st.points, [0.4, 0.6])
    np.testing.assert_allclose(st.weights, [-5.0, 5.0])
    st2 = stencil(unit_domain, 0.5, 2, 0.1)
    np.testing.assert_allclose(st2.weights, [100.0, -200.0, 100.0])


def test_third_order_central_stencil_is_exact_on_cubics(unit_domain):
    st = stencil(unit_domain, 0.5, 3, 0.05)
    assert st.kind == "central"
    assert float(np.sum(st.weights * st.points**3)) == pytest.approx(6.0, rel=1e-8)


def test_one_sided_stencils_at_the_edges(unit_domain):
    fwd = stencil(unit_domain, 0.0, 1, 0.1)
    assert fwd.kind == "forward"
    np.testing.assert_allclose(fwd.points, [0.0, 0.1, 0.2])
    np.testing.assert_allclose(fwd.weights, [-15.0, 20.0, -5.0])
    back = stencil(unit_domain, 1.0, 2, 0.1)
    assert back.kind == "backward"
    assert back.points[-1] == 1.0
    # second derivative of x**2 is exact on the one-sided stencil
    assert float(np.sum(back.weights * back.points**2)) == pytest.approx(2.0, rel=1e-9)


def test_stencil_that_does_not_fit_raises(unit_domain):
    with pytest.raises(DerivativeError) as exc:
        stencil(unit_domain, 0.5, 1, 0.6)
    assert "does not fit" in str(exc.value)


def test_order_zero_is_the_encoding(normalized_step):
    spec = DerivativeSpec(0)
    assert encoding_derivative(normalized_step, 0.3, spec) == normalized_step.encode_normalized(0.3)


@pytest.mark.parametrize("order, x", [(1, 0.4), (2, 0.4), (1, 0.0), (2, 1.0), (3, 0.5)])
def test_derivative_eval_is_the_finite_difference_of_the_back_transform(
    normalized_step, order, x
):
    q = Quadrature.for_length_scale(normalized_step.domain, 0.25)
    F = forward(get_function("x_sin_10x"), normalized_step, q)
    spec = DerivativeSpec(order)
    st = stencil(normalized_step.domain, x, order, spec.step_for(normalized_step))
    enc = normalized_step
    expected = sum(w * inverse_eval(F, enc, float(p)) for p, w in zip(st.points, st.weights))
    assert derivative_eval(F, enc, x, spec) == pytest.approx(expected, rel=1e-9, abs=1e-9)


def test_component_slices_of_derivatives(normalized_step):
    spec = DerivativeSpec(2)
    full = derivative_components(normalized_step, 0.6, spec)
    part = derivative_components(normalized_step, 0.6, spec, 10, 20)
    np.testing.assert_allclose(part, full[10:20])


def test_exact_method_needs_sigmoid_encoder(normalized_step):
    with pytest.raises(DerivativeError) as exc:
        derivative_components(normalized_step, 0.5, DerivativeSpec(1, EXACT_SIGMOID))
    assert "need a sigmoid encoder" in str(exc.value)


def test_exact_sigmoid_without_normalization_is_the_component_derivative(sigmoid_encoder):
    enc = NormalizedEncoder(sigmoid_encoder, ConstantNormalization(1.0))
    np.testing.assert_array_equal(
        derivative_components(enc, 0.42, DerivativeSpec(1, EXACT_SIGMOID)),
        sigmoid_encoder.components(0.42, order=1),
    )


@pytest.mark.parametrize("order", [1, 2])
def test_exact_sigmoid_applies_the_quotient_rule(sigmoid_encoder, order):
    enc = normalize_encoder(sigmoid_encoder)
    # keep x and the difference points inside one grid segment, where n is linear
    x, h = 0.333, 1e-5
    exact = derivative_components(enc, x, DerivativeSpec(order, EXACT_SIGMOID))
    lower = DerivativeSpec(order - 1, EXACT_SIGMOID) if order == 2 else DerivativeSpec(0)
    above = derivative_components(enc, x + h, lower)
    below = derivative_components(enc, x - h, lower)
    fd = (above - below) / (2 * h)
    scale = float(np.max(np.abs(exact)))
    np.testing.assert_allclose(exact, fd, atol=1e-4 * scale)


def test_integral_of_back_transform(unit_domain):
    enc = normalize_encoder(IntervalStepEncoder(unit_domain, 0.1, 20000, 9))
    q = Quadrature.for_length_scale(unit_domain, 0.1)
    F = forward(get_function("linear"), enc, q)
    one = ones_vector(enc, q)
    assert integral(F, one) == inner_scaled(F, one)
    assert integral(F, one) == pytest.approx(0.5, abs=0.05)


def test_derivative_on_small_domain_uses_one_sided_stencils():
    enc = normalize_encoder(IntervalStepEncoder(Domain1D(0.0, 0.3), 0.1, 256, 2))
    spec = DerivativeSpec(2, h=0.02)
    assert derivative_components(enc, 0.0, spec).shape == (256,)


def test_higher_accuracy_edge_stencils(unit_domain):
    st = stencil(unit_domain, 0.0, 2, 0.1, edge_accuracy=4)
    assert st.kind == "forward"
    np.testing.assert_allclose(st.points, [0.0, 0.1, 0.2, 0.3, 0.4, 0.5])
    # exact on polynomials up to degree order + edge_accuracy - 1
    for degree, expected in [(2, 2.0), (4, 0.0), (5, 0.0)]:
        assert float(np.sum(st.weights * st.points**degree)) == pytest.approx(expected, abs=1e-8)
    assert DerivativeSpec(1, edge_accuracy=4).with_order(2).edge_accuracy == 4
    with pytest.raises(DerivativeError) as exc:
        DerivativeSpec(1, edge_accuracy=0)
    assert "edge_accuracy" in str(exc.value)
