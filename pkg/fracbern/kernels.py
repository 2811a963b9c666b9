"""The Poisson kernel of an interval and the Dirichlet problem it solves."""

from __future__ import annotations

from collections.abc import Callable, Iterable
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .quadrature import QuadratureSpec, geometric_points, integrate_complement, integrate_finite
from .specialfn import AlphaContext

__all__ = (
    "OpenInterval",
    "poisson_interval",
    "phi",
    "exit_mass",
    "dirichlet_eval",
    "mean_value_residual",
)

BoundaryData = Callable[[np.ndarray], "np.ndarray | float"]


@dataclass(frozen=True)
class OpenInterval:
    """An open interval ``(lo, hi)``."""

    lo: float
    hi: float

    def __post_init__(self):
        if not self.lo < self.hi:
            raise DomainError(f"An interval needs lo < hi, got ({self.lo!r}, {self.hi!r}).")

    @property
    def length(self) -> float:
        return self.hi - self.lo

    @property
    def center(self) -> float:
        return 0.5 * (self.lo + self.hi)

    def contains(self, x: float) -> bool:
        return self.lo < x < self.hi

    def scaled(self, s: float) -> OpenInterval:
        """The image of the interval under ``x -> s x`` for ``s > 0``."""
        if not s > 0:
            raise DomainError(f"The scaling factor must be positive, got {s!r}.")
        return OpenInterval(s * self.lo, s * self.hi)

    def shifted(self, t: float) -> OpenInterval:
        return OpenInterval(self.lo + t, self.hi + t)


def _poisson(ctx: AlphaContext, lo: float, hi: float, x, y):
    """The kernel without argument checks. ``x`` and ``y`` may be arrays."""
    h = ctx.half
    return (
        ctx.c_alpha
        * ((x - lo) * (hi - x)) ** h
        * ((y - lo) * (y - hi)) ** -h
        / np.abs(x - y)
    )


def poisson_interval(ctx: AlphaContext, iv: OpenInterval, x: float, y: float) -> float:
    """The Poisson kernel of ``iv`` for the fractional Laplacian of order ``alpha``.

    ``P(x, y) = C_alpha ((x-lo)(hi-x))**(alpha/2) ((y-lo)(y-hi))**(-alpha/2) / |x-y|``,
    the density at ``y`` of the first exit position from ``iv`` of the process started at ``x``.

    Raises
    ------
    :exc:`DomainError`
        ``x`` is not in the open interval or ``y`` is in the closed interval.
    """
    if not iv.contains(x):
        raise DomainError(f"x={x!r} is not inside ({iv.lo!r}, {iv.hi!r}).")
    if iv.lo <= y <= iv.hi:
        raise DomainError(f"y={y!r} lies in the closed interval [{iv.lo!r}, {iv.hi!r}].")
    return float(_poisson(ctx, iv.lo, iv.hi, x, y))


def _phi(ctx: AlphaContext, a: float, y):
    return ((y - a) * (y - 1)) ** -ctx.half / np.abs(y - a)


def phi(ctx: AlphaContext, a: float, y: float) -> float:
    """The weight ``Phi(a, y) = ((y-a)(y-1))**(-alpha/2) / |y-a|``.

    Defined for ``a`` in ``(0, 1)`` and ``y`` outside ``[a, 1]``.

    Raises
    ------
    :exc:`DomainError`
        ``a`` is not in ``(0, 1)`` or ``y`` lies in ``[a, 1]``.
    """
    if not 0 < a < 1:
        raise DomainError(f"a must lie in (0, 1), got {a!r}.")
    if a <= y <= 1:
        raise DomainError(f"y={y!r} lies in [{a!r}, 1].")
    return float(_phi(ctx, a, y))


def exit_mass(
    ctx: AlphaContext,
    iv: OpenInterval,
    x: float,
    lo_y: float,
    hi_y: float,
    spec: QuadratureSpec | None = None,
) -> float:
    """The probability ``int_{lo_y}^{hi_y} P_iv(x, y) dy`` of exiting into a bounded set.

    ``[lo_y, hi_y]`` must lie on one side of ``iv``. An end point that touches ``iv`` is
    declared as a ``-alpha/2`` singularity.
    """
    if not iv.contains(x):
        raise DomainError(f"x={x!r} is not inside ({iv.lo!r}, {iv.hi!r}).")
    if not (hi_y <= iv.lo or lo_y >= iv.hi):
        raise DomainError(f"[{lo_y!r}, {hi_y!r}] overlaps ({iv.lo!r}, {iv.hi!r}).")

    spec = spec or QuadratureSpec()
    left = -ctx.half if lo_y == iv.hi else 0.0
    right = -ctx.half if hi_y == iv.lo else 0.0
    # the kernel peaks at a touching end point with the width of the distance from x to it
    extent = 0.5 * (hi_y - lo_y)
    points = []
    if right:
        points += geometric_points(hi_y, iv.lo - x, extent)
    if left:
        points += geometric_points(lo_y, iv.hi - x, extent)

    return integrate_finite(
        lambda y: _poisson(ctx, iv.lo, iv.hi, x, y),
        lo_y,
        hi_y,
        spec.with_exponents(left, right),
        points=points,
    ).value


def dirichlet_eval(
    ctx: AlphaContext,
    iv: OpenInterval,
    boundary_data: BoundaryData,
    x: float,
    spec: QuadratureSpec | None = None,
    *,
    points: Iterable[float] = (),
) -> float:
    """The solution at ``x`` of the Dirichlet problem on ``iv`` with exterior data ``boundary_data``.

    Computes ``int_{[lo,hi]^c} P_iv(x, y) g(y) dy``.

    Parameters
    ----------
    boundary_data:
        A vectorized bounded function on the complement of ``[lo, hi]``.
    points:
        Break points of ``boundary_data`` (jumps, kinks), so the quadrature splits there.

    Raises
    ------
    :exc:`DomainError`
        ``x`` is not in the interval.
    :exc:`AccuracyError`
        The quadrature did not converge.
    """
    if not iv.contains(x):
        raise DomainError(f"x={x!r} is not inside ({iv.lo!r}, {iv.hi!r}).")

    points = (
        list(points)
        + geometric_points(iv.lo, iv.lo - x, iv.length)
        + geometric_points(iv.hi, iv.hi - x, iv.length)
    )
    return integrate_complement(
        lambda y: _poisson(ctx, iv.lo, iv.hi, x, y) * boundary_data(y),
        iv.lo,
        iv.hi,
        -ctx.alpha - 1,
        spec,
        edge_exponent=-ctx.half,
        points=points,
    ).value


def mean_value_residual(
    ctx: AlphaContext,
    u: BoundaryData,
    sub: OpenInterval,
    x: float,
    spec: QuadratureSpec | None = None,
    *,
    points: Iterable[float] = (),
) -> float:
    """``u(x)`` minus its Poisson average over the complement of ``sub``.

    Close to zero when ``u`` is alpha-harmonic on a neighbourhood of ``sub``.
    ``points`` are break points of ``u``, as in :func:`dirichlet_eval`.
    """
    value = float(np.asarray(u(np.array([x])), dtype=float).ravel()[0])
    return value - dirichlet_eval(ctx, sub, u, x, spec, points=points)
