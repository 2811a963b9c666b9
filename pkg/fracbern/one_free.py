"""One free point: ``K = (a, x0 + r)`` inside ``D = (x0 - r, x0 + r)``.

All computations run on the reference domain ``(0, 1)`` with ``K = (a, 1)``. A general interval
is reached by translating and scaling, which multiplies every level by ``(2 r)**(-alpha/2)``.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from .errors import BracketError, DomainError
from .internal.search import bisect_root, golden_section, interior_grid
from .internal.workers import parallel_map
from .kernels import _poisson
from .quadrature import (
    QuadratureSpec,
    geometric_points,
    integrate_finite,
    integrate_semi_infinite,
)
from .specialfn import AlphaContext, hyp2f1

__all__ = (
    "Interval",
    "BernoulliResult",
    "FreeBoundarySolution",
    "CurveSample",
    "profile_u",
    "profile_w",
    "rate_R",
    "closed_form_rate",
    "closed_form_profile",
    "closed_form_free_points",
    "normal_derivative_estimate",
    "rate_from_profile",
    "rate_curve",
    "mu_constant",
    "solve_one_free",
)

log = logging.getLogger(__name__)

EQUALITY_TOL = 1e-8
BRACKET_EPS = 1e-9
PROFILE_POINTS = 512
FD_STEPS = (1e-4, 1e-5, 1e-6)


@dataclass(frozen=True)
class Interval:
    """The domain ``D = (center - radius, center + radius)``."""

    center: float
    radius: float

    def __post_init__(self):
        if not (math.isfinite(self.center) and math.isfinite(self.radius)):
            raise DomainError("The interval center and radius must be finite.")
        if not self.radius > 0:
            raise DomainError(f"The radius must be positive, got {self.radius!r}.")

    @property
    def lo(self) -> float:
        return self.center - self.radius

    @property
    def hi(self) -> float:
        return self.center + self.radius

    def scaled(self, s: float) -> Interval:
        """The image of the domain under ``x -> s x`` for ``s > 0``.

        Every Bernoulli constant of the image is ``s**(-alpha/2)`` times the one of the domain.
        """
        if not s > 0:
            raise DomainError(f"The scaling factor must be positive, got {s!r}.")
        return Interval(s * self.center, s * self.radius)

    def shifted(self, t: float) -> Interval:
        return Interval(self.center + t, self.radius)

    def contains(self, x: float) -> bool:
        return self.lo < x < self.hi

    def __str__(self):
        return f"({self.lo:g}, {self.hi:g})"


@dataclass(frozen=True)
class BernoulliResult:
    """A Bernoulli constant and where the rate function attains it.

    Attributes
    ----------
    constant:
        The constant for the requested domain.
    argmin_a:
        The minimizing parameter in reference coordinates, inside ``(0, 1)``.
    evaluations:
        The amount of rate function evaluations.
    bracket_width:
        The width of the final search bracket.
    """

    constant: float
    argmin_a: float
    evaluations: int
    bracket_width: float


@dataclass(frozen=True)
class FreeBoundarySolution:
    """One solution of a free boundary problem on ``domain``.

    Attributes
    ----------
    domain:
        The domain ``D``.
    free_points:
        The points of the free boundary, in domain coordinates.
    level:
        The level ``lambda`` the solution was computed for.
    k:
        The set ``K`` where the profile equals ``1``, as ``(lo, hi)``.
    parameter:
        The reference parameter ``a`` of the solution.
    profile:
        ``(x, u)`` samples of the solution. The point ``x0 + r`` is never sampled.
    """

    domain: Interval
    free_points: tuple[float, ...]
    level: float
    k: tuple[float, float]
    parameter: float
    profile: tuple[tuple[float, float], ...] = ()

    def __post_init__(self):
        for point in self.free_points:
            if not self.domain.contains(point):
                raise DomainError(f"The free point {point!r} is not inside {self.domain}.")

    def profile_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        """The profile samples as two arrays ``x`` and ``u``."""
        if not self.profile:
            return np.empty(0), np.empty(0)
        x, u = zip(*self.profile)
        return np.array(x), np.array(u)


@dataclass(frozen=True)
class CurveSample:
    a: float
    value: float


def _check_a(a: float):
    if not 0 < a < 1:
        raise DomainError(f"a must lie in (0, 1), got {a!r}.")


def profile_u(ctx: AlphaContext, a: float, x: float, spec: QuadratureSpec | None = None) -> float:
    """The profile ``u_a`` on the reference domain ``(0, 1)`` with ``K = (a, 1)``.

    ``u_a`` is ``0`` outside ``(0, 1)``, ``1`` on ``[a, 1)`` and equal to the exit probability
    ``int_a^1 P_(0,a)(x, y) dy`` on ``(0, a)``.

    Parameters
    ----------
    ctx:
        The order and its constants.
    a:
        The free point, in ``(0, 1)``.
    x:
        Where to evaluate.
    spec:
        Quadrature tolerances. Defaults to :class:`QuadratureSpec()`.

    Raises
    ------
    :exc:`DomainError`
        ``a`` is not in ``(0, 1)``.
    :exc:`AccuracyError`
        The quadrature did not converge.
    """
    _check_a(a)
    if x <= 0 or x >= 1:
        return 0.0
    if x >= a:
        return 1.0

    spec = (spec or QuadratureSpec()).with_exponents(left=-ctx.half)
    points = geometric_points(a, a - x, 0.5 * (1 - a))
    value = integrate_finite(
        lambda y: _poisson(ctx, 0.0, a, x, y), a, 1.0, spec, points=points
    ).value
    return min(max(value, 0.0), 1.0)


def profile_w(ctx: AlphaContext, a: float, x: float, spec: QuadratureSpec | None = None) -> float:
    """``w_a = 1 - u_a``, computed from the exit mass into ``(0, 1)^c``.

    Unlike ``1 - profile_u`` this keeps its relative accuracy next to the free point,
    where ``w_a`` behaves like ``(a - x)**(alpha/2)``.
    """
    _check_a(a)
    if x <= 0 or x >= 1:
        return 1.0
    if x >= a:
        return 0.0

    spec = spec or QuadratureSpec()
    tail = -ctx.alpha - 1
    left = integrate_semi_infinite(
        lambda t: _poisson(ctx, 0.0, a, x, -t),
        0.0,
        tail,
        spec.with_exponents(left=-ctx.half),
        points=geometric_points(0.0, x, 0.5),
    )
    right = integrate_semi_infinite(
        lambda y: _poisson(ctx, 0.0, a, x, y),
        1.0,
        tail,
        spec,
        points=geometric_points(1.0, 1.0 - a, 0.5),
    )
    return (left + right).value


def rate_R(ctx: AlphaContext, a: float) -> float:
    """The rate ``R(a) = C_alpha (T_alpha a**(-alpha/2) + a**(alpha/2) F(a) / alpha)``.

    ``F(a) = 2F1(alpha/2 + 1, alpha; alpha + 1; a)``. ``R(a)`` is the level the free point
    ``a`` realizes on the reference domain, i.e. minus the generalized normal derivative of
    :func:`profile_u` at ``a``.

    Raises
    ------
    :exc:`DomainError`
        ``a`` is not in ``(0, 1)``.

    Example
    -------
    >>> rate_R(make_alpha_context(1.0), 0.5)
    1.2732395447351628
    """
    _check_a(a)
    h = ctx.half
    f = hyp2f1(h + 1, ctx.alpha, ctx.alpha + 1, a)
    return ctx.c_alpha * (ctx.t_alpha * a**-h + a**h * f / ctx.alpha)


def closed_form_rate(a: float) -> float:
    """``R(a)`` for ``alpha = 1``: ``2 / (pi sqrt(a (1 - a)))``."""
    _check_a(a)
    return 2 / (math.pi * math.sqrt(a * (1 - a)))


def closed_form_profile(a: float, x: float) -> float:
    """``u_a(x)`` for ``alpha = 1``."""
    _check_a(a)
    if x <= 0 or x >= 1:
        return 0.0
    if x >= a:
        return 1.0
    return 2 / math.pi * math.atan(math.sqrt(x) * math.sqrt(1 - a) / math.sqrt(a - x))


def closed_form_free_points(domain: Interval, lam: float) -> list[float]:
    """The free points of every ``alpha = 1`` solution on ``domain`` at level ``lam``.

    With ``mu = 2 sqrt(2) / (pi sqrt(r))`` they are ``x0 +- r sqrt(1 - mu**2 / lam**2)``.
    """
    if not lam > 0:
        raise DomainError(f"The level must be positive, got {lam!r}.")
    mu = 2 * math.sqrt(2) / (math.pi * math.sqrt(domain.radius))
    if lam < mu:
        return []
    offset = domain.radius * math.sqrt(1 - (mu / lam) ** 2)
    if offset == 0:
        return [domain.center]
    return [domain.center - offset, domain.center + offset]


def normal_derivative_estimate(values: Sequence[float], steps: Sequence[float], alpha: float) -> float:
    """Extrapolate ``lim w(t) / t**(alpha/2)`` as ``t -> 0`` from samples at ``steps``.

    The quotients are assumed to have a correction linear in ``t``; a least-squares line in
    ``t`` is fitted and its value at ``t = 0`` returned.
    """
    if len(values) != len(steps) or len(steps) < 2:
        raise DomainError("Need at least two steps and one value per step.")
    t = np.asarray(steps, dtype=float)
    q = np.asarray(values, dtype=float) / t ** (alpha / 2)
    slope, intercept = np.polyfit(t, q, 1)
    return float(intercept)


def rate_from_profile(
    ctx: AlphaContext,
    a: float,
    steps: Sequence[float] = FD_STEPS,
    spec: QuadratureSpec | None = None,
) -> float:
    """``R(a)`` estimated from :func:`profile_w` next to the free point.

    Independent of the hypergeometric closed form, so it serves as a check of :func:`rate_R`.
    """
    _check_a(a)
    if not all(0 < t < a for t in steps):
        raise DomainError(f"Every step must lie in (0, a={a!r}).")

    values = []
    for t in steps:
        # w(a - t) is of order t**(alpha/2), so the absolute tolerance follows it
        scale = t**ctx.half
        step_spec = spec or QuadratureSpec(abs_tol=1e-12 * scale, rel_tol=1e-11, max_subdivisions=400)
        values.append(profile_w(ctx, a, a - t, step_spec))
    return normal_derivative_estimate(values, steps, ctx.alpha)


def rate_curve(ctx: AlphaContext, grid: int) -> list[CurveSample]:
    """``R`` on ``grid`` uniformly spaced interior points of ``(0, 1)``."""
    if grid < 1:
        raise DomainError(f"The grid needs at least one point, got {grid!r}.")
    points = interior_grid(grid)
    values = parallel_map(lambda a: rate_R(ctx, a), points)
    return [CurveSample(a, value) for a, value in zip(points, values)]


def _level_scale(ctx: AlphaContext, domain: Interval) -> float:
    """The factor turning a reference level into a level on ``domain``."""
    return (2 * domain.radius) ** -ctx.half


def mu_constant(ctx: AlphaContext, domain: Interval) -> BernoulliResult:
    """The Bernoulli constant ``mu`` of ``domain`` for one free point.

    ``R`` is strictly convex, so golden-section search on ``(0, 1)`` finds its minimum.

    Example
    -------
    >>> mu_constant(make_alpha_context(1.0), Interval(0.5, 0.5)).constant
    1.2732395447351628
    """
    result = golden_section(lambda a: rate_R(ctx, a), 0.0, 1.0, tol=1e-10)
    log.debug(
        "min R = %.17g at a = %.12g after %d evaluations",
        result.minimum,
        result.argmin,
        result.evaluations,
    )
    return BernoulliResult(
        constant=_level_scale(ctx, domain) * result.minimum,
        argmin_a=result.argmin,
        evaluations=result.evaluations,
        bracket_width=result.bracket_width,
    )


def _reference_nodes(a: float, points: int) -> list[float]:
    cheb = [a * (1 - math.cos(math.pi * (k + 0.5) / points)) / 2 for k in range(points)]
    outside = [-0.5, -0.25, 0.0]
    on_k = [a + (1 - a) * k / 8 for k in range(8)]
    return outside + cheb + on_k + [1.25, 1.5]


def _sample_profile(
    ctx: AlphaContext, domain: Interval, a: float, spec: QuadratureSpec | None, points: int
) -> tuple[tuple[float, float], ...]:
    nodes = _reference_nodes(a, points)
    values = parallel_map(lambda x: profile_u(ctx, a, x, spec), nodes)
    return tuple((domain.lo + 2 * domain.radius * x, u) for x, u in zip(nodes, values))


def _solution(
    ctx: AlphaContext,
    domain: Interval,
    lam: float,
    a: float,
    spec: QuadratureSpec | None,
    profile_points: int,
) -> FreeBoundarySolution:
    point = domain.lo + 2 * domain.radius * a
    profile = _sample_profile(ctx, domain, a, spec, profile_points) if profile_points else ()
    return FreeBoundarySolution(
        domain=domain,
        free_points=(point,),
        level=lam,
        k=(point, domain.hi),
        parameter=a,
        profile=profile,
    )


def _outer_end(f, inside: float, end: float) -> tuple[float, float]:
    """Move ``end`` geometrically toward the boundary until ``f`` is positive there."""
    left = end < inside
    value = f(end)
    while value <= 0:
        if (left and end < 1e-300) or (not left and 1 - end < 1e-15):
            raise BracketError("The rate never reaches the level near the boundary.", value=end)
        end = end / 10 if left else 1 - (1 - end) / 10
        log.warning("Refining the root bracket end point to %.3g", end)
        value = f(end)
    return end, value


def solve_one_free(
    ctx: AlphaContext,
    domain: Interval,
    lam: float,
    spec: QuadratureSpec | None = None,
    *,
    profile_points: int = PROFILE_POINTS,
    constant: BernoulliResult | None = None,
) -> list[FreeBoundarySolution]:
    """Every solution with one free point on ``domain`` at level ``lam``.

    There is no solution below the constant ``mu``, one at ``mu`` and two above it. The free points
    are the roots of ``R(a) = lam (2 r)**(alpha/2)`` on either side of the minimum of ``R``.

    Parameters
    ----------
    ctx:
        The order and its constants.
    domain:
        The domain ``D``.
    lam:
        The level.
    spec:
        Quadrature tolerances of the profile samples.
    profile_points:
        The amount of Chebyshev samples of the profile on ``(x0 - r, free point)``. ``0`` skips
        the profile. Defaults to ``512``.
    constant:
        A result of :func:`mu_constant` for ``domain`` to reuse.

    Returns
    -------
    :class:`list`
        Zero, one or two :class:`FreeBoundarySolution`, ordered by free point.

    Raises
    ------
    :exc:`DomainError`
        ``lam`` is not positive.
    :exc:`BracketError`
        A root could not be bracketed.
    """
    if not (math.isfinite(lam) and lam > 0):
        raise DomainError(f"The level must be positive, got {lam!r}.")

    constant = constant or mu_constant(ctx, domain)
    level = lam / _level_scale(ctx, domain)
    minimum = constant.constant / _level_scale(ctx, domain)
    argmin = constant.argmin_a

    if abs(level - minimum) <= EQUALITY_TOL:
        log.info("The level equals the constant, one solution at a = %.12g", argmin)
        return [_solution(ctx, domain, lam, argmin, spec, profile_points)]
    if level < minimum:
        log.info("The level %.10g is below the constant %.10g", lam, constant.constant)
        return []

    def f(a: float) -> float:
        return rate_R(ctx, a) - level

    f_argmin = f(argmin)
    roots = []
    for end in (BRACKET_EPS, 1 - BRACKET_EPS):
        end, f_end = _outer_end(f, argmin, end)
        lo, hi = sorted((end, argmin))
        f_lo, f_hi = (f_end, f_argmin) if end < argmin else (f_argmin, f_end)
        roots.append(bisect_root(f, lo, hi, f_lo=f_lo, f_hi=f_hi))

    log.debug("Roots of R(a) = %.12g: %s", level, roots)
    return [_solution(ctx, domain, lam, a, spec, profile_points) for a in roots]
