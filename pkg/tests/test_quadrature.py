import math

import numpy as np
import pytest

import fracbern
from fracbern import QuadratureSpec


def test_smooth():
    result = fracbern.integrate_finite(np.exp, 0.0, 1.0)
    assert result.value == pytest.approx(math.e - 1, rel=1e-13)
    assert result.error_estimate < 1e-10
    assert float(result) == result.value


def test_endpoint_singularities():
    spec = QuadratureSpec(endpoint_exponent_left=-0.5)
    assert fracbern.integrate_finite(lambda t: t**-0.5, 0.0, 1.0, spec).value == pytest.approx(2.0)

    spec = QuadratureSpec(endpoint_exponent_left=-0.9)
    assert fracbern.integrate_finite(lambda t: t**-0.9, 0.0, 1.0, spec).value == pytest.approx(10.0)

    spec = QuadratureSpec(endpoint_exponent_right=-0.75)
    value = fracbern.integrate_finite(lambda t: (2 - t) ** -0.75, 1.0, 2.0, spec).value
    assert value == pytest.approx(4.0)

    # both ends singular: the arcsine density
    spec = QuadratureSpec().with_exponents(-0.5, -0.5)
    value = fracbern.integrate_finite(lambda t: (t * (1 - t)) ** -0.5, 0.0, 1.0, spec).value
    assert value == pytest.approx(math.pi, rel=1e-10)


def test_break_points():
    def step(t):
        return np.where(t > 1.0, 1.0, 0.0)

    assert fracbern.integrate_finite(step, 0.0, 2.0, points=[1.0]).value == pytest.approx(1.0, abs=1e-12)


def test_semi_infinite():
    assert fracbern.integrate_semi_infinite(lambda y: y**-2.0, 1.0, -2.0).value == pytest.approx(1.0)
    assert fracbern.integrate_semi_infinite(
        lambda y: (1 + y) ** -2.0, 0.0, -2.0
    ).value == pytest.approx(1.0)

    # slow decay with a singular start
    spec = QuadratureSpec(endpoint_exponent_left=-0.5)
    value = fracbern.integrate_semi_infinite(lambda y: y**-0.5 / (1 + y), 0.0, -1.5, spec).value
    assert value == pytest.approx(math.pi, rel=1e-9)

    # int_0^inf z**(-1/2) (z + 1/2)**(-3/2) dz = 4
    spec = QuadratureSpec(endpoint_exponent_left=-0.5)
    value = fracbern.integrate_semi_infinite(lambda z: z**-0.5 * (z + 0.5) ** -1.5, 0.0, -2.0, spec).value
    assert value == pytest.approx(4.0, rel=1e-9)

    # tails that decay like y**(-1.05)
    assert fracbern.integrate_semi_infinite(lambda y: y**-1.05, 1.0, -1.05).value == pytest.approx(20.0, rel=1e-9)
    value = fracbern.integrate_semi_infinite(lambda y: (1 + y) ** -1.05, 0.0, -1.05).value
    assert value == pytest.approx(20.0, rel=1e-9)

    with pytest.raises(fracbern.DomainError):
        fracbern.integrate_semi_infinite(lambda y: 1 / y, 1.0, -1.0)


def test_linearity():
    f = fracbern.integrate_finite(np.exp, 0.0, 2.0)
    g = fracbern.integrate_finite(np.cos, 0.0, 2.0)
    combined = fracbern.integrate_finite(lambda t: 2 * np.exp(t) - 3 * np.cos(t), 0.0, 2.0)
    bound = combined.error_estimate + 2 * f.error_estimate + 3 * g.error_estimate
    assert abs(combined.value - (2 * f.value - 3 * g.value)) <= bound + 1e-14


@pytest.mark.parametrize("middle", [0.1, 0.5, 1.7])
def test_additivity(middle):
    spec = QuadratureSpec(endpoint_exponent_left=-0.5)

    def f(t):
        return t**-0.5 * np.exp(-t)

    whole = fracbern.integrate_finite(f, 0.0, 2.0, spec)
    left = fracbern.integrate_finite(f, 0.0, middle, spec)
    right = fracbern.integrate_finite(f, middle, 2.0)
    bound = whole.error_estimate + left.error_estimate + right.error_estimate
    assert abs(whole.value - (left + right).value) <= bound + 1e-14


def test_complement():
    value = fracbern.integrate_complement(lambda y: y**-2.0, -1.0, 1.0, -2.0).value
    assert value == pytest.approx(2.0)

    # an asymmetric integrand checks the mirrored half
    value = fracbern.integrate_complement(
        lambda y: np.where(y < 0, 2.0, 1.0) * y**-2.0, -1.0, 2.0, -2.0
    ).value
    assert value == pytest.approx(2.5)


def test_errors():
    with pytest.raises(fracbern.DomainError):
        fracbern.integrate_finite(np.exp, 1.0, 0.0)
    with pytest.raises(fracbern.DomainError):
        QuadratureSpec(abs_tol=0)
    with pytest.raises(fracbern.DomainError):
        QuadratureSpec(endpoint_exponent_left=-1.0)
    with pytest.raises(fracbern.DomainError):
        QuadratureSpec(max_subdivisions=0)

    spec = QuadratureSpec(abs_tol=1e-14, rel_tol=1e-14, max_subdivisions=2)
    with pytest.raises(fracbern.AccuracyError) as info:
        fracbern.integrate_finite(lambda t: np.sin(500 * t), 0.0, 10.0, spec)
    assert info.value.estimate > 0

    with pytest.raises(fracbern.AccuracyError):
        fracbern.integrate_finite(lambda t: np.where(t > 0.5, np.nan, 1.0), 0.0, 1.0)


def test_spec_copies():
    spec = QuadratureSpec()
    assert spec.with_tol(1e-6).abs_tol == 1e-6
    assert spec.with_tol(1e-6).rel_tol == 1e-6
    assert spec.with_exponents(left=-0.25).endpoint_exponent_left == -0.25
    assert spec.endpoint_exponent_left == 0.0
    assert spec.target(1e3) == pytest.approx(1e-7)


def test_panel_rule():
    nodes, weights = fracbern.panel_rule([0.0, 1.0, 3.0])
    assert len(nodes) == len(weights) == 30
    assert np.all((nodes > 0) & (nodes < 3))
    assert weights.sum() == pytest.approx(3.0, rel=1e-14)
    assert np.dot(weights, nodes**3) == pytest.approx(81 / 4, rel=1e-13)


def test_geometric_points():
    assert fracbern.geometric_points(1.0, -0.1, 0.5) == pytest.approx([0.8, 0.6])
    assert fracbern.geometric_points(0.0, 1e-3, 0.5) == pytest.approx([2e-3 * 2**k for k in range(8)])
    assert fracbern.geometric_points(0.0, 0.3, 0.5) == []
    assert fracbern.geometric_points(0.0, 0.0, 0.5) == []
