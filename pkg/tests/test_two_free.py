import math

import numpy as np
import pytest

import fracbern
from fracbern import Interval, QuadratureSpec, SeriesSpec, make_alpha_context

COARSE = SeriesSpec(grid_points=64)


def test_series_spec():
    with pytest.raises(fracbern.DomainError):
        SeriesSpec(max_terms=0)
    with pytest.raises(fracbern.DomainError):
        SeriesSpec(tail_tol=0)
    with pytest.raises(fracbern.DomainError):
        SeriesSpec(grid_points=8)


def test_contraction():
    ctx = make_alpha_context(1.0)
    factors = [fracbern.contraction_delta(ctx, a) for a in (0.2, 0.5, 0.8)]
    assert all(0 < f < 1 for f in factors)
    # the farther apart the two components, the less mass crosses
    assert factors[0] > factors[1] > factors[2]

    with pytest.raises(fracbern.DomainError):
        fracbern.contraction_delta(ctx, 1.0)


def test_first_term_closed_form():
    assert fracbern.first_term_closed_form(0.34, 0.5) == pytest.approx(0.5730215, abs=1e-3)
    assert fracbern.first_term_closed_form(0.34, 0.34) == 1.0
    assert fracbern.first_term_closed_form(0.34, 1.0) == 0.0
    with pytest.raises(fracbern.DomainError):
        fracbern.first_term_closed_form(0.34, 0.2)

    solution = fracbern.neumann_f(make_alpha_context(1.0), 0.34, COARSE)
    expected = [fracbern.first_term_closed_form(0.34, y) for y in solution.node_x]
    assert solution.node_first == pytest.approx(expected, abs=1e-8)


@pytest.mark.parametrize("alpha", [0.5, 1.0, 1.5])
def test_neumann_f(alpha):
    ctx = make_alpha_context(alpha)
    solution = fracbern.neumann_f(ctx, 0.4, COARSE)

    assert len(solution.node_x) == 64
    assert np.all((solution.node_x > 0.4) & (solution.node_x < 1))
    assert np.all(solution.node_f >= solution.node_first)
    assert np.all((solution.node_f >= 0) & (solution.node_f <= 1))
    assert 0 < solution.delta < 1
    assert solution.tail_bound <= COARSE.tail_tol
    assert solution.terms_used >= 2

    g = fracbern.neumann_g(ctx, 0.4, COARSE)
    assert solution.node_f + g.node_f == pytest.approx(np.ones(64), abs=1e-4)


@pytest.mark.parametrize("alpha", [0.25, 0.5, 1.0, 1.5, 1.75])
def test_neumann_f_default_grid(alpha):
    ctx = make_alpha_context(alpha)
    solution = fracbern.neumann_f(ctx, 0.5)

    assert len(solution.node_x) == 256
    assert solution.tail_bound <= 1e-8
    assert np.all((solution.node_f >= 0) & (solution.node_f <= 1))
    assert np.all(solution.node_f >= solution.node_first)
    assert solution.node_first[0] > 0.5 > solution.node_first[-1]


def _fixed_point_profile(a, x, nodes=200):
    """``f_a`` for ``alpha = 1`` by plain fixed-point iteration on a dense Gauss-Legendre grid.

    The grid is uniform in ``theta`` with ``y = a + (1 - a) (1 - cos(theta)) / 2``, which makes
    the square-root behaviour of ``f_a`` at both ends smooth.
    """
    theta, weights = np.polynomial.legendre.leggauss(nodes)
    theta = 0.5 * np.pi * (theta + 1)
    y = a + (1 - a) * (1 - np.cos(theta)) / 2
    weights = 0.5 * np.pi * weights * (1 - a) * np.sin(theta) / 2

    def kernel(s, t):
        return np.sqrt((s - a) * (1 - s)) / (np.pi * np.sqrt((t + a) * (t + 1)) * (s + t))

    def first(s):
        return np.array([fracbern.first_term_closed_form(a, v) for v in s])

    first_y = first(y)
    matrix = kernel(y[:, None], y[None, :]) * weights[None, :]
    values = first_y
    for _ in range(1000):
        updated = first_y + matrix @ values
        if np.max(np.abs(updated - values)) < 1e-14:
            break
        values = updated
    return first(x) + kernel(x[:, None], y[None, :]) @ (weights * updated)


def test_neumann_f_against_fixed_point():
    a = 0.34
    solution = fracbern.neumann_f(make_alpha_context(1.0), a)
    x = np.array([0.35, 0.4, 0.5, 0.7, 0.9, 0.99])
    assert solution.profile(x) == pytest.approx(_fixed_point_profile(a, x), abs=1e-5)


def test_default_settings():
    ctx = make_alpha_context(1.0)
    f = fracbern.neumann_f(ctx, 0.34)
    g = fracbern.neumann_g(ctx, 0.34)
    assert f.node_f + g.node_f == pytest.approx(np.ones(256), abs=1e-5)

    value = fracbern.psi(ctx, 0.34, solution=f)
    assert 0.7957 < value < 1.03
    assert fracbern.psi(ctx, 0.34) == pytest.approx(value, rel=1e-14)
    assert fracbern.psi(ctx, 0.34, COARSE) == pytest.approx(value, rel=1e-3)
    assert fracbern.psi_complement(ctx, 0.34) == pytest.approx(value, rel=1e-4)
    assert fracbern.psi_from_profile(ctx, 0.34) == pytest.approx(value, rel=1e-3)


def test_profile_shape():
    solution = fracbern.neumann_f(make_alpha_context(1.0), 0.4, COARSE)
    x = np.linspace(-1.5, 1.5, 61)
    values = solution.profile(x)
    assert values == pytest.approx(solution.profile(-x), abs=1e-15)
    assert solution.profile(0.0) == 1.0
    assert solution.profile(0.4) == 1.0
    assert solution.profile(1.0) == 0.0
    assert solution.profile(1.2) == 0.0
    assert 0 < solution.profile(0.7) < 1


@pytest.mark.parametrize("alpha", [0.5, 1.0])
@pytest.mark.parametrize("a", [0.3, 0.6])
def test_harmonic(alpha, a):
    ctx = make_alpha_context(alpha)
    solution = fracbern.neumann_f(ctx, a, SeriesSpec(grid_points=256))
    sub = fracbern.OpenInterval(a + 0.25 * (1 - a), a + 0.6 * (1 - a))
    residual = fracbern.mean_value_residual(
        ctx,
        solution.profile,
        sub,
        sub.center,
        QuadratureSpec(abs_tol=1e-7, rel_tol=1e-7, max_subdivisions=2000),
        points=[-1.0, -a, a, 1.0],
    )
    assert abs(residual) < 1e-4


@pytest.mark.parametrize("alpha, a", [(0.5, 0.3), (1.0, 0.6), (1.5, 0.3), (1.0, 0.8)])
def test_tail_bound(alpha, a):
    ctx = make_alpha_context(alpha)
    loose = fracbern.neumann_f(ctx, a, SeriesSpec(tail_tol=1e-4, grid_points=64))
    tight = fracbern.neumann_f(ctx, a, SeriesSpec(tail_tol=1e-10, grid_points=64))
    assert tight.terms_used > loose.terms_used
    assert np.max(np.abs(tight.node_f - loose.node_f)) <= loose.tail_bound


def test_truncated_series():
    ctx = make_alpha_context(1.0)
    with pytest.raises(fracbern.AccuracyError) as info:
        fracbern.neumann_f(ctx, 0.3, SeriesSpec(max_terms=2, grid_points=64))
    two = info.value.partial
    assert two.terms_used == 2
    assert info.value.estimate == two.tail_bound

    with pytest.raises(fracbern.AccuracyError) as info:
        fracbern.neumann_f(ctx, 0.3, SeriesSpec(max_terms=4, grid_points=64))
    four = info.value.partial
    assert np.max(np.abs(four.node_f - two.node_f)) <= two.tail_bound


def test_psi():
    ctx = make_alpha_context(1.0)
    value = fracbern.psi(ctx, 0.34, COARSE)
    assert 0.7957 < value < 1.03

    assert fracbern.psi_complement(ctx, 0.34, COARSE) == pytest.approx(value, rel=1e-4)
    assert fracbern.psi_from_profile(ctx, 0.34, sspec=COARSE) == pytest.approx(value, rel=1e-3)

    solution = fracbern.neumann_f(ctx, 0.34, COARSE)
    assert fracbern.psi(ctx, 0.34, solution=solution) == value

    # psi replaces f by its first term in F2 and f is larger, so psi is smaller
    assert value < fracbern.f2(0.34)


@pytest.mark.parametrize("alpha", [0.5, 1.5])
def test_psi_complement(alpha):
    ctx = make_alpha_context(alpha)
    assert fracbern.psi_complement(ctx, 0.5, COARSE) == pytest.approx(
        fracbern.psi(ctx, 0.5, COARSE), rel=1e-4
    )


@pytest.mark.parametrize("alpha", [0.5, 1.0, 1.5])
def test_near_term(alpha):
    ctx = make_alpha_context(alpha)
    a = 0.3
    value = fracbern.integrate_semi_infinite(
        lambda y: ((y - a) * (y - 1)) ** -ctx.half / (y - a),
        1.0,
        -alpha - 1,
        QuadratureSpec(endpoint_exponent_left=-ctx.half),
    ).value
    assert value == pytest.approx(ctx.t_alpha * (1 - a) ** -alpha, rel=1e-8)


def test_bounds():
    ctx = make_alpha_context(1.0)
    lower, upper = fracbern.bounds_LU(ctx)
    assert lower == pytest.approx(2.5 / math.pi, abs=1e-7)
    assert upper == pytest.approx(2.5 * math.sqrt(2) / math.pi, abs=1e-7)
    assert lower == pytest.approx(0.7957747, abs=1e-7)
    assert upper == pytest.approx(1.1253954, abs=1e-7)

    assert fracbern.lower_bound_curve(ctx, 0.5) < fracbern.upper_bound_curve(ctx, 0.5)
    with pytest.raises(fracbern.DomainError):
        fracbern.lower_bound_curve(ctx, 1.0)
    with pytest.raises(fracbern.DomainError):
        fracbern.upper_bound_curve(ctx, 0.0)

    # the endpoint bound grows at both ends
    middle = fracbern.psi_endpoint_lower_bound(ctx, 0.5)
    assert fracbern.psi_endpoint_lower_bound(ctx, 1e-40) > middle
    assert fracbern.psi_endpoint_lower_bound(ctx, 1 - 1e-12) > middle


def test_psi_between_bounds():
    ctx = make_alpha_context(1.0)
    for a in (0.2, 0.5, 0.8):
        value = fracbern.psi(ctx, a, COARSE)
        assert fracbern.lower_bound_curve(ctx, a) <= value <= fracbern.upper_bound_curve(ctx, a)
        assert value >= fracbern.psi_endpoint_lower_bound(ctx, a)


@pytest.mark.slow
@pytest.mark.parametrize("alpha", [0.5, 1.0, 1.5])
def test_psi_curve_between_bounds(alpha):
    ctx = make_alpha_context(alpha)
    samples = fracbern.psi_curve(ctx, 64)
    assert len(samples) == 64
    for sample in samples:
        assert fracbern.lower_bound_curve(ctx, sample.a) <= sample.value
        assert sample.value <= fracbern.upper_bound_curve(ctx, sample.a)


def test_errors():
    ctx = make_alpha_context(1.0)
    with pytest.raises(fracbern.DomainError):
        fracbern.psi(ctx, 0.0)
    with pytest.raises(fracbern.DomainError):
        fracbern.psi_from_profile(ctx, 0.9, steps=(0.2,))
    with pytest.raises(fracbern.DomainError):
        fracbern.psi_curve(ctx, 0)
    with pytest.raises(fracbern.DomainError):
        fracbern.solve_two_free(ctx, Interval(0.0, 1.0), 0.0)
    with pytest.raises(fracbern.DomainError):
        fracbern.unimodality_scan(ctx, 0)


def test_unimodality_resolution():
    report = fracbern.unimodality_scan(make_alpha_context(1.0), 8, COARSE)
    assert not report.sufficient_resolution
    assert not report.consistent
    assert "insufficient" in report.message
    assert len(report.psi_values) == 8


@pytest.mark.slow
@pytest.mark.parametrize("alpha", [0.25, 0.5, 1.0, 1.5, 1.75])
def test_lambda_bracket(alpha):
    ctx = make_alpha_context(alpha)
    result = fracbern.lambda_constant(ctx, Interval(0.0, 1.0), scan_points=32)
    lower, upper = fracbern.bounds_LU(ctx)
    assert lower <= result.constant <= upper
    assert 0 < result.argmin_a < 1
    if alpha == 1.0:
        assert result.constant < 1.03


@pytest.mark.slow
def test_lambda_scaling():
    ctx = make_alpha_context(0.5)
    unit_domain = Interval(0.0, 1.0)
    unit = fracbern.lambda_constant(ctx, unit_domain, scan_points=16)
    scaled = fracbern.lambda_constant(ctx, unit_domain.scaled(4.0).shifted(-3.0), scan_points=16)
    assert scaled.constant == pytest.approx(4.0**-0.25 * unit.constant, rel=1e-9)


@pytest.mark.slow
def test_psi_endpoints():
    ctx = make_alpha_context(1.0)
    minimum = min(s.value for s in fracbern.psi_curve(ctx, 16))
    assert fracbern.psi(ctx, 0.01) > 3 * minimum
    assert fracbern.psi(ctx, 0.99) > 3 * minimum


@pytest.mark.slow
def test_solve_two_free():
    ctx = make_alpha_context(1.0)
    domain = Interval(0.0, 1.0)
    assert fracbern.solve_two_free(ctx, domain, 0.5, scan_points=32) == []

    solutions = fracbern.solve_two_free(ctx, domain, 1.2, scan_points=32)
    assert len(solutions) == 2
    for solution in solutions:
        lo, hi = solution.free_points
        assert lo == pytest.approx(-hi)
        assert solution.k == (lo, hi)
        assert fracbern.psi(ctx, solution.parameter) == pytest.approx(1.2, abs=1e-6)
        x, u = solution.profile_arrays()
        assert u[np.abs(x) <= hi] == pytest.approx(1.0)
        assert u[np.abs(x) >= 1] == pytest.approx(0.0)


@pytest.mark.slow
@pytest.mark.parametrize("alpha", [0.5, 1.0])
def test_solve_two_free_at_the_constant(alpha):
    ctx = make_alpha_context(alpha)
    domain = Interval(0.0, 1.0)
    constant = fracbern.lambda_constant(ctx, domain, scan_points=32)
    solutions = fracbern.solve_two_free(ctx, domain, constant.constant, scan_points=32)
    assert len(solutions) == 1
    assert solutions[0].parameter == pytest.approx(constant.argmin_a)


@pytest.mark.slow
@pytest.mark.parametrize("alpha", [0.5, 1.0])
def test_unimodality(alpha):
    report = fracbern.unimodality_scan(make_alpha_context(alpha), 32)
    assert report.sufficient_resolution
    assert report.consistent
    assert report.sign_changes == 1
