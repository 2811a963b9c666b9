import json
import math

import numpy as np
import pytest
from scipy import integrate

import fracbern
from fracbern import SeriesSpec, make_alpha_context


def _energies(a, b):
    def double(y_lo, y_hi, kernel):
        value, _ = integrate.dblquad(kernel, y_lo, y_hi, 1.0, np.inf, epsabs=1e-13, epsrel=1e-12)
        return value

    def right(x, y):
        return (x - y) ** -2

    def left(x, y):
        return (x + y) ** -2

    scale = 2 / (math.pi**2 * a)
    first = scale * (double(-a, a, right) + double(-a, a, left))
    second, _ = integrate.dblquad(right, -a, a, b, 1.0, epsabs=1e-13, epsrel=1e-12)
    second *= scale * 2 * 0.25
    third = scale * 2 * 0.25 * (double(a, b, right) + double(a, b, left))
    return first, second, third


def test_f1_terms():
    rng = np.random.default_rng(3)
    for _ in range(10):
        a, b = sorted(rng.uniform(0.05, 0.95, size=2))
        if b - a < 0.01:
            continue
        expected = _energies(a, b)
        assert fracbern.f1_terms(a, b) == pytest.approx(expected, rel=1e-8)
        assert fracbern.f1(a, b) == pytest.approx(sum(expected), rel=1e-8)


@pytest.mark.parametrize("a, b", [(0.0, 0.5), (0.5, 0.5), (0.6, 0.5), (0.5, 1.0)])
def test_f1_domain(a, b):
    with pytest.raises(fracbern.DomainError):
        fracbern.f1(a, b)


def test_f1_diverges():
    assert fracbern.f1(0.5, 0.5001) > fracbern.f1(0.5, 0.6)
    assert fracbern.f1(0.5, 0.9999) > fracbern.f1(0.5, 0.9)


def test_f1_infimum():
    value, (a, b) = fracbern.f1_infimum()
    assert value >= 1.1582
    assert math.sqrt(value) >= 1.0761
    assert 0 < a < b < 1
    assert fracbern.f1(a, b) == pytest.approx(value, rel=1e-12)

    coarse, _ = fracbern.f1_infimum(grid=100)
    assert coarse >= 1.1582 - 1e-3
    assert coarse == pytest.approx(value, abs=1e-3)

    with pytest.raises(fracbern.DomainError):
        fracbern.f1_infimum(grid=50)


def test_f2():
    value = fracbern.f2(0.34)
    assert 2.5 / math.pi < value < 1.03

    with pytest.raises(fracbern.DomainError):
        fracbern.f2(0.0)
    with pytest.raises(fracbern.DomainError):
        fracbern.f2(1.0)


def test_f2_is_psi_of_first_term():
    ctx = make_alpha_context(1.0)
    with pytest.raises(fracbern.AccuracyError) as info:
        fracbern.neumann_f(ctx, 0.5, SeriesSpec(max_terms=1, grid_points=64))
    first_only = info.value.partial
    assert first_only.terms_used == 1
    assert fracbern.psi(ctx, 0.5, solution=first_only) == pytest.approx(fracbern.f2(0.5), rel=1e-4)


def test_f2_scan():
    minimum, argmin = fracbern.f2_scan(points=16)
    assert 0 < argmin < 1
    assert minimum < 1.03
    assert minimum <= fracbern.f2(0.34) + 1e-12


def test_check_inequality():
    report = fracbern.check_inequality(grid=100, scan_points=16)
    assert report.conclusion_holds
    assert report.lambda_lower_from_f1 == pytest.approx(math.sqrt(report.f1_infimum_estimate))
    assert report.lambda_lower_from_f1 > report.f2_minimum_estimate
    assert report.f2_at_034 < 1.03

    data = json.loads(json.dumps(report.to_dict()))
    assert data["conclusion_holds"] is True
    assert data["f1_grid_minimum_location"] == list(report.f1_grid_minimum_location)


@pytest.mark.slow
def test_check_inequality_defaults():
    report = fracbern.check_inequality()
    assert report.conclusion_holds
    assert report.f1_infimum_estimate >= 1.1582
    assert report.lambda_lower_from_f1 >= 1.0761
    assert report.f2_at_034 < 1.03
