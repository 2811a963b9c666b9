"""Two free points: ``K = (x0 - a r, x0 + a r)`` inside ``D = (x0 - r, x0 + r)``.

The reference domain is ``(-1, 1)`` with ``K = (-a, a)``. The profile ``f_a`` is found on ``(a, 1)``
as the Neumann series of successive exits between the two components of ``D \\ K``, and
``Psi(a)`` is the level realized at the free points.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Callable
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
from scipy.interpolate import PchipInterpolator

from .errors import AccuracyError, BracketError, DomainError
from .internal.search import (
    bisect_root,
    golden_section,
    grid_minimum,
    interior_grid,
    sign_changes,
)
from .internal.workers import parallel_map
from .kernels import OpenInterval, _phi, _poisson, exit_mass
from .one_free import (
    BernoulliResult,
    CurveSample,
    FreeBoundarySolution,
    Interval,
    normal_derivative_estimate,
)
from .quadrature import (
    QuadratureSpec,
    geometric_points,
    integrate_finite,
    integrate_semi_infinite,
    panel_rule,
)
from .specialfn import AlphaContext

__all__ = (
    "SeriesSpec",
    "NeumannSolution",
    "UnimodalityReport",
    "contraction_delta",
    "first_term_closed_form",
    "neumann_f",
    "neumann_g",
    "psi",
    "psi_complement",
    "psi_from_profile",
    "psi_curve",
    "lower_bound_curve",
    "upper_bound_curve",
    "psi_endpoint_lower_bound",
    "bounds_LU",
    "lambda_constant",
    "solve_two_free",
    "unimodality_scan",
)

log = logging.getLogger(__name__)

EQUALITY_TOL = 1e-6
SCAN_POINTS = 64
DELTA_GRID = 128
MIN_UNIMODAL_GRID = 32
ROOT_XTOL = 1e-10
FD_STEPS = (1e-4, 1e-5, 1e-6)


@dataclass(frozen=True)
class SeriesSpec:
    """Stopping rule and discretization of the Neumann series.

    Parameters
    ----------
    max_terms:
        The maximum amount of terms. Defaults to ``500``.
    tail_tol:
        The series stops once the geometric bound on the remaining terms is below this value.
        Defaults to ``1e-8``.
    grid_points:
        The amount of Chebyshev nodes on ``(a, 1)``. Defaults to ``256``.
    """

    max_terms: int = 500
    tail_tol: float = 1e-8
    grid_points: int = 256

    def __post_init__(self):
        if self.max_terms < 1:
            raise DomainError(f"max_terms must be at least 1, got {self.max_terms!r}.")
        if not self.tail_tol > 0:
            raise DomainError(f"tail_tol must be positive, got {self.tail_tol!r}.")
        if self.grid_points < 16:
            raise DomainError(f"grid_points must be at least 16, got {self.grid_points!r}.")


@dataclass(frozen=True, eq=False)
class NeumannSolution:
    """A Neumann series solution on the nodes of ``(a, 1)``.

    The values at ``a`` and ``1`` are ``inner_value`` and ``outer_value``. Off the nodes the
    solution is the monotone cubic interpolant of the node values, extended by ``inner_value``
    on ``[-a, a]``, by ``outer_value`` outside ``(-1, 1)`` and evenly to ``(-1, -a)``.

    Attributes
    ----------
    a:
        The free point.
    node_x:
        The Chebyshev nodes in ``(a, 1)``.
    node_f:
        The partial sum at the nodes.
    node_first:
        The first term at the nodes.
    terms_used:
        The amount of summed terms.
    delta:
        ``1`` minus the contraction factor of one exit from ``(a, 1)`` to ``(-1, -a)``.
    tail_bound:
        The bound ``(1 - delta)**terms_used / delta`` on the terms left out.
    """

    a: float
    node_x: np.ndarray
    node_f: np.ndarray
    node_first: np.ndarray
    terms_used: int
    delta: float
    tail_bound: float
    inner_value: float = 1.0
    outer_value: float = 0.0

    @cached_property
    def knots(self) -> tuple[np.ndarray, np.ndarray]:
        x = np.concatenate([[self.a], self.node_x, [1.0]])
        f = np.concatenate([[self.inner_value], self.node_f, [self.outer_value]])
        return x, f

    @cached_property
    def interpolant(self) -> PchipInterpolator:
        return PchipInterpolator(*self.knots, extrapolate=False)

    def profile(self, x):
        """The solution on the whole line, vectorized over ``x``."""
        x = np.asarray(x, dtype=float)
        s = np.abs(x)
        inside = (s > self.a) & (s < 1)
        values = np.where(s <= self.a, self.inner_value, self.outer_value)
        if np.any(inside):
            values = np.where(inside, self.interpolant(np.where(inside, s, 0.5 * (1 + self.a))), values)
        return values if values.ndim else float(values)

    def weighted_integral(self, weight: Callable[[np.ndarray], np.ndarray]) -> float:
        """``int_a^1 weight(y) f(y) dy`` for a weight that is smooth on ``[a, 1]``.

        The interpolant is cubic between knots, so the 15-point rule on every knot panel is
        accurate to the smoothness of ``weight``.
        """
        y, w = panel_rule(self.knots[0])
        return float(np.sum(weight(y) * self.interpolant(y) * w))


@dataclass(frozen=True)
class UnimodalityReport:
    """Whether ``Psi`` sampled on a grid has a single local minimum."""

    alpha: float
    a_values: tuple[float, ...]
    psi_values: tuple[float, ...]
    sign_changes: int
    sufficient_resolution: bool
    consistent: bool
    message: str = field(default="")


def _check_a(a: float):
    if not 0 < a < 1:
        raise DomainError(f"a must lie in (0, 1), got {a!r}.")


def _chebyshev_nodes(a: float, points: int) -> np.ndarray:
    k = np.arange(points)
    return a + (1 - a) * (1 - np.cos(np.pi * (k + 0.5) / points)) / 2


def _reflected_kernel(ctx: AlphaContext, a: float, x, y):
    """``P_(a,1)(x, -y)`` for ``y`` in ``(a, 1)``. Smooth in ``y``."""
    h = ctx.half
    return ctx.c_alpha * ((x - a) * (1 - x)) ** h * ((y + a) * (y + 1)) ** -h / (x + y)


def _reflected_mass(ctx: AlphaContext, a: float, x: float, spec: QuadratureSpec) -> float:
    return integrate_finite(lambda y: _reflected_kernel(ctx, a, x, y), a, 1.0, spec).value


def contraction_delta(ctx: AlphaContext, a: float, spec: QuadratureSpec | None = None) -> float:
    """``sup_x int_a^1 P_(a,1)(x, -y) dy`` over ``x`` in ``(a, 1)``.

    This is the largest probability of jumping from ``(a, 1)`` straight to ``(-1, -a)``, the
    factor by which every term of the Neumann series shrinks. It is the maximum over a
    128-point grid refined by golden-section search around the best grid point.

    Raises
    ------
    :exc:`DomainError`
        ``a`` is not in ``(0, 1)``.
    """
    _check_a(a)
    spec = spec or QuadratureSpec()
    grid = interior_grid(DELTA_GRID, a, 1.0)
    masses = [_reflected_mass(ctx, a, x, spec) for x in grid]
    best = int(np.argmax(masses))

    lo = grid[best - 1] if best > 0 else a + 0.5 * (grid[0] - a)
    hi = grid[best + 1] if best + 1 < len(grid) else 1 - 0.5 * (1 - grid[-1])
    result = golden_section(lambda x: -_reflected_mass(ctx, a, x, spec), lo, hi, tol=1e-8)
    return max(masses[best], -result.minimum)


def first_term_closed_form(a: float, y: float) -> float:
    """The first Neumann term ``f_a^(1)(y)`` for ``alpha = 1`` and ``y`` in ``[a, 1]``."""
    _check_a(a)
    if not a <= y <= 1:
        raise DomainError(f"y={y!r} is not in [{a!r}, 1].")
    if y == a:
        return 1.0
    if y == 1:
        return 0.0
    ratio = math.sqrt(1 + a) * math.sqrt(y - a) / (math.sqrt(2 * a) * math.sqrt(1 - y))
    return 1 - 2 / math.pi * math.atan(ratio)


def _first_term_f(ctx: AlphaContext, a: float, x: float, spec: QuadratureSpec) -> float:
    return exit_mass(ctx, OpenInterval(a, 1.0), x, -a, a, spec)


def _first_term_g(ctx: AlphaContext, a: float, x: float, spec: QuadratureSpec) -> float:
    """The exit mass from ``(a, 1)`` into ``(-inf, -1) U (1, inf)``."""
    tail = -ctx.alpha - 1
    right = integrate_semi_infinite(
        lambda y: _poisson(ctx, a, 1.0, x, y),
        1.0,
        tail,
        spec.with_exponents(left=-ctx.half),
        points=geometric_points(1.0, 1.0 - x, 0.5),
    )
    left = integrate_semi_infinite(lambda t: _poisson(ctx, a, 1.0, x, -t), 1.0, tail, spec)
    return (left + right).value


def _neumann(
    ctx: AlphaContext,
    a: float,
    first: Callable[[float], float],
    ends: tuple[float, float],
    sspec: SeriesSpec,
    qspec: QuadratureSpec,
) -> NeumannSolution:
    nodes = _chebyshev_nodes(a, sspec.grid_points)
    node_first = np.array(parallel_map(first, nodes))

    factor = contraction_delta(ctx, a, qspec)
    delta = 1 - factor
    if not 0 < delta < 1:
        raise AccuracyError(f"The contraction factor {factor!r} at a={a!r} is not in (0, 1).")

    # Nystrom matrix of the reflected kernel on the knot panels
    knots = np.concatenate([[a], nodes, [1.0]])
    y, w = panel_rule(knots)
    matrix = _reflected_kernel(ctx, a, nodes[:, None], y[None, :]) * w[None, :]

    term = node_first
    term_ends = ends
    total = node_first.copy()
    terms = 1
    # every term is at most 1 - delta times the previous one and the first is at most 1
    tail_bound = factor / delta
    while tail_bound > sspec.tail_tol and terms < sspec.max_terms:
        interpolant = PchipInterpolator(
            knots, np.concatenate([[term_ends[0]], term, [term_ends[1]]])
        )
        term = matrix @ interpolant(y)
        term_ends = (0.0, 0.0)
        total += term
        terms += 1
        tail_bound = factor**terms / delta

    solution = NeumannSolution(
        a=a,
        node_x=nodes,
        node_f=np.clip(total, 0.0, 1.0),
        node_first=node_first,
        terms_used=terms,
        delta=delta,
        tail_bound=tail_bound,
        inner_value=ends[0],
        outer_value=ends[1],
    )
    log.debug("Neumann series at a=%.6g: %d terms, delta=%.6g, tail=%.3g", a, terms, delta, tail_bound)
    if tail_bound > sspec.tail_tol:
        raise AccuracyError(
            f"The Neumann series at a={a!r} needs more than {sspec.max_terms} terms.",
            value=float(np.max(total)),
            estimate=tail_bound,
            partial=solution,
        )
    return solution


def neumann_f(
    ctx: AlphaContext,
    a: float,
    sspec: SeriesSpec | None = None,
    qspec: QuadratureSpec | None = None,
) -> NeumannSolution:
    """The profile ``f_a`` on ``(a, 1)`` as the sum of its Neumann series.

    ``f^(1)(x)`` is the exit mass from ``(a, 1)`` into ``(-a, a)``, and ``f^(n)`` integrates
    ``f^(n-1)`` against the reflected kernel ``P_(a,1)(x, -y)``. Summation stops once
    ``(1 - delta)**N / delta`` is below ``sspec.tail_tol``, with ``1 - delta`` from
    :func:`contraction_delta`.

    Parameters
    ----------
    ctx:
        The order and its constants.
    a:
        The free point, in ``(0, 1)``.
    sspec:
        Series settings. Defaults to :class:`SeriesSpec()`.
    qspec:
        Quadrature settings. Defaults to :class:`QuadratureSpec()`.

    Returns
    -------
    :class:`NeumannSolution`

    Raises
    ------
    :exc:`DomainError`
        ``a`` is not in ``(0, 1)``.
    :exc:`AccuracyError`
        The tail bound was not met within ``sspec.max_terms``. The truncated solution is
        attached as ``partial``.
    """
    _check_a(a)
    sspec = sspec or SeriesSpec()
    qspec = qspec or QuadratureSpec()
    return _neumann(ctx, a, lambda x: _first_term_f(ctx, a, x, qspec), (1.0, 0.0), sspec, qspec)


def neumann_g(
    ctx: AlphaContext,
    a: float,
    sspec: SeriesSpec | None = None,
    qspec: QuadratureSpec | None = None,
) -> NeumannSolution:
    """The complement ``g_a = 1 - f_a`` from its own Neumann series.

    The first term is the exit mass into ``(-1, 1)^c``, the recursion is the one of
    :func:`neumann_f`.
    """
    _check_a(a)
    sspec = sspec or SeriesSpec()
    qspec = qspec or QuadratureSpec()
    return _neumann(ctx, a, lambda x: _first_term_g(ctx, a, x, qspec), (0.0, 1.0), sspec, qspec)


def _prefactor(ctx: AlphaContext, a: float) -> float:
    return ctx.c_alpha * (1 - a) ** ctx.half


def _far_mass(ctx: AlphaContext, a: float, lo: float, spec: QuadratureSpec) -> float:
    """``int_lo^inf Phi(a, -y) dy``."""
    return integrate_semi_infinite(lambda y: _phi(ctx, a, -y), lo, -ctx.alpha - 1, spec).value


def psi(
    ctx: AlphaContext,
    a: float,
    sspec: SeriesSpec | None = None,
    qspec: QuadratureSpec | None = None,
    *,
    solution: NeumannSolution | None = None,
) -> float:
    """The rate ``Psi(a)`` of two free points ``-a`` and ``a`` on the reference domain.

    ``Psi(a) = C_alpha (1-a)**(alpha/2) (T_alpha (1-a)**(-alpha) + int_a^inf Phi(a,-y) dy
    - int_a^1 Phi(a,-y) f_a(y) dy)``.

    Parameters
    ----------
    solution:
        A result of :func:`neumann_f` at ``a`` to reuse.

    Raises
    ------
    :exc:`DomainError`
        ``a`` is not in ``(0, 1)``.
    :exc:`AccuracyError`
        The series or a quadrature did not converge.
    """
    _check_a(a)
    qspec = qspec or QuadratureSpec()
    solution = solution or neumann_f(ctx, a, sspec, qspec)

    near = ctx.t_alpha * (1 - a) ** -ctx.alpha
    far = _far_mass(ctx, a, a, qspec)
    inner = solution.weighted_integral(lambda y: _phi(ctx, a, -y))
    return _prefactor(ctx, a) * (near + far - inner)


def psi_complement(
    ctx: AlphaContext,
    a: float,
    sspec: SeriesSpec | None = None,
    qspec: QuadratureSpec | None = None,
) -> float:
    """``Psi(a)`` from :func:`neumann_g`, with only positive contributions.

    ``C_alpha (1-a)**(alpha/2) (int_1^inf Phi(a,y) dy + int_1^inf Phi(a,-y) dy
    + int_a^1 Phi(a,-y) g_a(y) dy)``.
    """
    _check_a(a)
    qspec = qspec or QuadratureSpec()
    solution = neumann_g(ctx, a, sspec, qspec)

    near = ctx.t_alpha * (1 - a) ** -ctx.alpha
    far = _far_mass(ctx, a, 1.0, qspec)
    inner = solution.weighted_integral(lambda y: _phi(ctx, a, -y))
    return _prefactor(ctx, a) * (near + far + inner)


def psi_from_profile(
    ctx: AlphaContext,
    a: float,
    steps=FD_STEPS,
    sspec: SeriesSpec | None = None,
    qspec: QuadratureSpec | None = None,
) -> float:
    """``Psi(a)`` as ``lim (1 - f_a(a + t)) / t**(alpha/2)``, extrapolated from ``steps``.

    ``1 - f_a(a + t)`` is evaluated directly from the exit masses, using the interpolated
    :func:`neumann_g` only under the smooth reflected kernel.
    """
    _check_a(a)
    if not all(0 < t < 1 - a for t in steps):
        raise DomainError(f"Every step must lie in (0, {1 - a!r}).")
    qspec = qspec or QuadratureSpec()
    solution = neumann_g(ctx, a, sspec, qspec)

    values = []
    for t in steps:
        x = a + t
        step_spec = QuadratureSpec(abs_tol=1e-12 * t**ctx.half, rel_tol=1e-11, max_subdivisions=400)
        first = _first_term_g(ctx, a, x, step_spec)
        rest = solution.weighted_integral(lambda y: _reflected_kernel(ctx, a, x, y))
        values.append(first + rest)
    return normal_derivative_estimate(values, steps, ctx.alpha)


def psi_curve(
    ctx: AlphaContext,
    grid: int,
    sspec: SeriesSpec | None = None,
    qspec: QuadratureSpec | None = None,
) -> list[CurveSample]:
    """``Psi`` on ``grid`` uniformly spaced interior points of ``(0, 1)``."""
    if grid < 1:
        raise DomainError(f"The grid needs at least one point, got {grid!r}.")
    points = interior_grid(grid)
    values = parallel_map(lambda a: psi(ctx, a, sspec, qspec), points)
    return [CurveSample(a, value) for a, value in zip(points, values)]


def lower_bound_curve(ctx: AlphaContext, a: float) -> float:
    """``L(a) = C_alpha (1-a)**(alpha/2) (T_alpha (1-a)**(-alpha) + 1 / (alpha 2**alpha))``."""
    if not 0 <= a < 1:
        raise DomainError(f"a must lie in [0, 1), got {a!r}.")
    return _prefactor(ctx, a) * (
        ctx.t_alpha * (1 - a) ** -ctx.alpha + 1 / (ctx.alpha * 2**ctx.alpha)
    )


def upper_bound_curve(ctx: AlphaContext, a: float) -> float:
    """``U(a) = C_alpha (1-a)**(-alpha/2) (T_alpha + (1/a - 1)**alpha / (alpha 2**alpha))``."""
    _check_a(a)
    return (
        ctx.c_alpha
        * (1 - a) ** -ctx.half
        * (ctx.t_alpha + (1 / a - 1) ** ctx.alpha / (ctx.alpha * 2**ctx.alpha))
    )


def psi_endpoint_lower_bound(ctx: AlphaContext, a: float) -> float:
    """A lower bound of ``Psi(a)`` that shows the growth at both ends of ``(0, 1)``.

    ``C_alpha / (alpha (1-a)**(alpha/2))`` everywhere, and for ``a < 1/4`` also
    ``C_alpha**2 2**(-2 alpha) 3**(-alpha/2) (log(3/4 + a) - log(3 a)) / alpha``.
    The larger one is returned.
    """
    _check_a(a)
    bound = ctx.c_alpha / (ctx.alpha * (1 - a) ** ctx.half)
    if a < 0.25:
        logarithmic = (
            ctx.c_alpha**2
            * 2 ** (-2 * ctx.alpha)
            * 3**-ctx.half
            * (math.log(0.75 + a) - math.log(3 * a))
            / ctx.alpha
        )
        bound = max(bound, logarithmic)
    return bound


def bounds_LU(ctx: AlphaContext) -> tuple[float, float]:
    """Closed-form bounds ``L(0) <= lambda_(alpha,(-1,1)) <= U(1 - alpha/2)``.

    Example
    -------
    >>> bounds_LU(make_alpha_context(1.0))
    (0.7957747154594768, 1.1253953951963828)
    """
    lower = lower_bound_curve(ctx, 0.0)
    upper = upper_bound_curve(ctx, 1 - ctx.half)
    return lower, upper


def _level_scale(ctx: AlphaContext, domain: Interval) -> float:
    return domain.radius**-ctx.half


@dataclass
class _Scan:
    """The samples of ``Psi`` behind a located minimum."""

    points: list[float]
    values: list[float]
    argmin: float
    minimum: float
    evaluations: int
    bracket_width: float

    def samples(self) -> list[tuple[float, float]]:
        merged = dict(zip(self.points, self.values))
        merged[self.argmin] = self.minimum
        return sorted(merged.items())


def _locate_minimum(
    ctx: AlphaContext, sspec: SeriesSpec, qspec: QuadratureSpec, scan_points: int
) -> _Scan:
    points = interior_grid(scan_points)
    values = parallel_map(lambda a: psi(ctx, a, sspec, qspec), points)
    best = grid_minimum(values)

    lo = points[best - 1] if best > 0 else 0.5 * points[0]
    hi = points[best + 1] if best + 1 < len(points) else 0.5 * (1 + points[-1])
    result = golden_section(lambda a: psi(ctx, a, sspec, qspec), lo, hi, tol=EQUALITY_TOL)
    if result.minimum <= values[best]:
        argmin, minimum = result.argmin, result.minimum
    else:
        argmin, minimum = points[best], values[best]

    log.debug("min Psi = %.12g at a = %.8g", minimum, argmin)
    return _Scan(
        points, values, argmin, minimum, len(points) + result.evaluations, result.bracket_width
    )


def lambda_constant(
    ctx: AlphaContext,
    domain: Interval,
    sspec: SeriesSpec | None = None,
    qspec: QuadratureSpec | None = None,
    *,
    scan_points: int = SCAN_POINTS,
) -> BernoulliResult:
    """The Bernoulli constant ``lambda`` of ``domain`` for two symmetric free points.

    ``Psi`` is scanned on ``scan_points`` grid points and the best grid cell is refined by
    golden-section search to a bracket of ``1e-6``. No convexity of ``Psi`` is assumed.
    """
    scan = _locate_minimum(ctx, sspec or SeriesSpec(), qspec or QuadratureSpec(), scan_points)
    return BernoulliResult(
        constant=_level_scale(ctx, domain) * scan.minimum,
        argmin_a=scan.argmin,
        evaluations=scan.evaluations,
        bracket_width=scan.bracket_width,
    )


def _extend_to_level(
    f: Callable[[float], float], a: float, value: float, toward_zero: bool
) -> tuple[float, float]:
    """Push ``a`` toward ``0`` or ``1`` until ``f`` is positive there."""
    while value <= 0:
        a = a / 4 if toward_zero else 1 - (1 - a) / 4
        if a < 1e-6 or 1 - a < 1e-6:
            raise BracketError("Psi does not reach the level near the boundary.", value=a)
        log.warning("Extending the root scan to a = %.3g", a)
        value = f(a)
    return a, value


def _profile_nodes(a: float, solution: NeumannSolution) -> np.ndarray:
    outside = np.array([1.25, 1.5])
    on_k = np.linspace(0, a, 5)
    right = np.concatenate([on_k, solution.node_x, [1.0], outside])
    return np.unique(np.concatenate([-right, right]))


def _solution(
    ctx: AlphaContext,
    domain: Interval,
    lam: float,
    a: float,
    sspec: SeriesSpec,
    qspec: QuadratureSpec,
) -> FreeBoundarySolution:
    neumann = neumann_f(ctx, a, sspec, qspec)
    s = _profile_nodes(a, neumann)
    u = neumann.profile(s)
    x = domain.center + domain.radius * s
    lo, hi = domain.center - a * domain.radius, domain.center + a * domain.radius
    return FreeBoundarySolution(
        domain=domain,
        free_points=(lo, hi),
        level=lam,
        k=(lo, hi),
        parameter=a,
        profile=tuple(zip(x.tolist(), u.tolist())),
    )


def solve_two_free(
    ctx: AlphaContext,
    domain: Interval,
    lam: float,
    sspec: SeriesSpec | None = None,
    qspec: QuadratureSpec | None = None,
    *,
    scan_points: int = SCAN_POINTS,
) -> list[FreeBoundarySolution]:
    """Every located solution with two symmetric free points on ``domain`` at level ``lam``.

    The roots of ``Psi(a) = lam r**(alpha/2)`` are bracketed by the sign changes on the scan
    of :func:`lambda_constant`, with the refined minimum inserted. The scan is extended toward
    ``0`` and ``1`` when its end points are still below the level.

    Returns
    -------
    :class:`list`
        The solutions ordered by ``a``. Empty below the constant, a single solution when
        ``lam`` equals the constant within ``1e-6``.

    Raises
    ------
    :exc:`DomainError`
        ``lam`` is not positive.
    :exc:`BracketError`
        ``Psi`` stayed below the level near an end of ``(0, 1)``.
    """
    if not (math.isfinite(lam) and lam > 0):
        raise DomainError(f"The level must be positive, got {lam!r}.")
    sspec = sspec or SeriesSpec()
    qspec = qspec or QuadratureSpec()

    scan = _locate_minimum(ctx, sspec, qspec, scan_points)
    level = lam / _level_scale(ctx, domain)

    if abs(level - scan.minimum) <= EQUALITY_TOL:
        log.info("The level equals the constant, one solution at a = %.8g", scan.argmin)
        return [_solution(ctx, domain, lam, scan.argmin, sspec, qspec)]
    if level < scan.minimum:
        log.info("The level %.10g is below the constant", lam)
        return []

    def f(a: float) -> float:
        return psi(ctx, a, sspec, qspec) - level

    samples = [(a, value - level) for a, value in scan.samples()]
    first, last = samples[0], samples[-1]
    samples[0] = _extend_to_level(f, *first, toward_zero=True)
    samples[-1] = _extend_to_level(f, *last, toward_zero=False)

    diffs = [value for _, value in samples]
    roots = []
    for i in sign_changes(diffs):
        (lo, f_lo), (hi, f_hi) = samples[i], samples[i + 1]
        roots.append(bisect_root(f, lo, hi, f_lo=f_lo, f_hi=f_hi, xtol=ROOT_XTOL))

    if len(roots) > 2:
        log.warning("Psi crosses the level %d times: %s", len(roots), roots)
    log.debug("Roots of Psi(a) = %.10g: %s", level, roots)
    return [_solution(ctx, domain, lam, a, sspec, qspec) for a in roots]


def unimodality_scan(
    ctx: AlphaContext,
    grid_points: int,
    sspec: SeriesSpec | None = None,
    qspec: QuadratureSpec | None = None,
) -> UnimodalityReport:
    """Check whether ``Psi`` on ``grid_points`` interior points has a single local minimum.

    This is a diagnostic, not a proof. Grids below 32 points are sampled but flagged as
    insufficient.
    """
    if grid_points < 1:
        raise DomainError(f"The grid needs at least one point, got {grid_points!r}.")
    curve = psi_curve(ctx, grid_points, sspec, qspec)
    a_values = tuple(s.a for s in curve)
    values = tuple(s.value for s in curve)
    changes = len(sign_changes(np.diff(values).tolist())) if len(values) > 1 else 0

    sufficient = grid_points >= MIN_UNIMODAL_GRID
    consistent = sufficient and changes == 1
    if not sufficient:
        message = f"insufficient resolution: {grid_points} points, at least {MIN_UNIMODAL_GRID} needed"
    elif consistent:
        message = "consistent with unimodal"
    else:
        message = f"not unimodal on this grid: {changes} monotonicity changes"
        log.warning("Psi at alpha=%s: %s", ctx.alpha, message)

    return UnimodalityReport(
        alpha=ctx.alpha,
        a_values=a_values,
        psi_values=values,
        sign_changes=changes,
        sufficient_resolution=sufficient,
        consistent=consistent,
        message=message,
    )
