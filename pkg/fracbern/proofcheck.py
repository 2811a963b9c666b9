"""The computer-assisted comparison of the variational and the Bernoulli constant for ``alpha = 1``.

A lower bound of the variational constant comes from ``inf F1(a, b)`` and an upper bound of the
Bernoulli constant from ``F2(a) >= Psi(a)``, where ``F2`` replaces ``f_a`` by its first
Neumann term. The variational constant is larger when ``sqrt(inf F1) > min F2``.
"""

from __future__ import annotations

import logging
import math
from dataclasses import asdict, dataclass

import numpy as np

from .errors import DomainError
from .internal.search import golden_section, grid_minimum, interior_grid
from .internal.workers import parallel_map
from .kernels import _phi
from .quadrature import QuadratureSpec, integrate_finite, integrate_semi_infinite
from .specialfn import make_alpha_context

__all__ = (
    "ProofReport",
    "f1",
    "f1_terms",
    "f1_infimum",
    "f2",
    "f2_scan",
    "check_inequality",
)

log = logging.getLogger(__name__)

GRID_MARGIN = 1e-4
REFINE_ITERS = 40
PROOF_GRID = 400
F2_SCAN_POINTS = 64
F2_PROBE = 0.34


@dataclass(frozen=True)
class ProofReport:
    """The outcome of :func:`check_inequality`.

    Attributes
    ----------
    f1_infimum_estimate:
        The smallest value of ``F1`` found. It bounds the infimum from above, so it is an estimate.
    f1_grid_minimum_location:
        Where that value was found.
    f2_at_034:
        ``F2(0.34)``.
    lambda_lower_from_f1:
        ``sqrt(f1_infimum_estimate)``, the lower bound of the variational constant.
    f2_minimum_estimate:
        The smallest value of ``F2`` found, an upper bound of the Bernoulli constant.
    f2_argmin:
        Where that value was found.
    conclusion_holds:
        Whether ``lambda_lower_from_f1 > f2_minimum_estimate``.
    """

    f1_infimum_estimate: float
    f1_grid_minimum_location: tuple[float, float]
    f2_at_034: float
    lambda_lower_from_f1: float
    f2_minimum_estimate: float
    f2_argmin: float
    conclusion_holds: bool

    def to_dict(self) -> dict:
        data = asdict(self)
        data["f1_grid_minimum_location"] = list(self.f1_grid_minimum_location)
        return data


def _check_triangle(a: float, b: float):
    if not 0 < a < b < 1:
        raise DomainError(f"Expected 0 < a < b < 1, got a={a!r}, b={b!r}.")


def _terms(a, b):
    scale = 1 / (math.pi**2 * a)
    first = 2 * scale * np.log((1 + a) ** 2 / (1 - a) ** 2)
    second = scale * np.log((1 - a) * (a + b) / ((1 + a) * (b - a)))
    third = scale * np.log((1 - a) * (1 + b) / ((1 + a) * (1 - b)))
    return first, second, third


def f1_terms(a: float, b: float) -> tuple[float, float, float]:
    """The three logarithmic terms of :func:`f1`.

    They are the energies between ``(-a, a)`` and ``(-1, 1)^c``, between ``(-a, a)`` and
    ``(b, 1)`` and its mirror image, and between ``(a, b)`` and ``(-1, 1)^c`` and its mirror image.
    """
    _check_triangle(a, b)
    return tuple(float(t) for t in _terms(a, b))


def f1(a: float, b: float) -> float:
    """``F1(a, b)``, a lower bound of the squared variational constant for ``0 < a < b < 1``.

    Raises
    ------
    :exc:`DomainError`
        ``0 < a < b < 1`` does not hold.
    """
    return math.fsum(f1_terms(a, b))


def f1_infimum(grid: int = PROOF_GRID, refine_iters: int = REFINE_ITERS) -> tuple[float, tuple[float, float]]:
    """The smallest value of ``F1`` on the open triangle ``0 < a < b < 1``.

    A ``grid x grid`` scan keeps ``1e-4`` away from the triangle's edges. The best grid point is
    refined by coordinate descent, halving the step ``refine_iters`` times.

    Raises
    ------
    :exc:`DomainError`
        ``grid < 100``.
    """
    if grid < 100:
        raise DomainError(f"The F1 grid needs at least 100 points, got {grid!r}.")

    axis = np.linspace(GRID_MARGIN, 1 - GRID_MARGIN, grid)
    a, b = np.meshgrid(axis, axis, indexing="ij")
    inside = b - a >= GRID_MARGIN
    with np.errstate(divide="ignore", invalid="ignore"):
        values = np.where(inside, sum(_terms(a, b)), np.inf)
    i, j = np.unravel_index(np.argmin(values), values.shape)
    best_a, best_b = float(axis[i]), float(axis[j])
    best = float(values[i, j])
    log.debug("F1 grid minimum %.10g at (%.6g, %.6g)", best, best_a, best_b)

    step = axis[1] - axis[0]
    for _ in range(refine_iters):
        for da, db in ((step, 0), (-step, 0), (0, step), (0, -step)):
            ca, cb = best_a + da, best_b + db
            if 0 < ca < cb < 1:
                value = f1(ca, cb)
                if value < best:
                    best, best_a, best_b = value, ca, cb
        step *= 0.5

    return best, (best_a, best_b)


def _first_term(a: float, y):
    ratio = np.sqrt(1 + a) * np.sqrt(y - a) / (np.sqrt(2 * a) * np.sqrt(1 - y))
    return 1 - 2 / np.pi * np.arctan(ratio)


def f2(a: float, spec: QuadratureSpec | None = None) -> float:
    """``F2(a)``, an upper bound of ``Psi(a)`` for ``alpha = 1``.

    ``Psi(a)`` with the first Neumann term in place of ``f_a``; the first term has the closed
    form ``1 - (2/pi) arctan(sqrt(1+a) sqrt(y-a) / (sqrt(2a) sqrt(1-y)))``.

    Raises
    ------
    :exc:`DomainError`
        ``a`` is not in ``(0, 1)``.
    """
    if not 0 < a < 1:
        raise DomainError(f"a must lie in (0, 1), got {a!r}.")
    ctx = make_alpha_context(1.0)
    spec = spec or QuadratureSpec()

    near = ctx.t_alpha / (1 - a)
    far = integrate_semi_infinite(lambda y: _phi(ctx, a, -y), a, -2.0, spec).value
    # the arctan argument equals 1 at the break point
    crossing = a * (3 + a) / (1 + 3 * a)
    inner = integrate_finite(
        lambda y: _phi(ctx, a, -y) * _first_term(a, y),
        a,
        1.0,
        spec.with_tol(1e-11),
        points=[crossing],
    ).value
    return math.sqrt(1 - a) / math.pi * (near + far - inner)


def f2_scan(points: int = F2_SCAN_POINTS, spec: QuadratureSpec | None = None) -> tuple[float, float]:
    """The minimum of :func:`f2` on ``(0, 1)`` and where it is attained.

    ``points`` grid values are refined by golden-section search around the best one.
    """
    grid = interior_grid(points)
    values = parallel_map(lambda a: f2(a, spec), grid)
    best = grid_minimum(values)

    lo = grid[best - 1] if best > 0 else 0.5 * grid[0]
    hi = grid[best + 1] if best + 1 < len(grid) else 0.5 * (1 + grid[-1])
    result = golden_section(lambda a: f2(a, spec), lo, hi, tol=1e-8)
    if result.minimum < values[best]:
        return result.minimum, result.argmin
    return values[best], grid[best]


def check_inequality(
    grid: int = PROOF_GRID, refine_iters: int = REFINE_ITERS, scan_points: int = F2_SCAN_POINTS
) -> ProofReport:
    """Run both estimates and compare them.

    Example
    -------
    >>> check_inequality().conclusion_holds
    True
    """
    f1_value, location = f1_infimum(grid, refine_iters)
    f2_min, f2_argmin = f2_scan(scan_points)
    lower = math.sqrt(f1_value)

    report = ProofReport(
        f1_infimum_estimate=f1_value,
        f1_grid_minimum_location=location,
        f2_at_034=f2(F2_PROBE),
        lambda_lower_from_f1=lower,
        f2_minimum_estimate=f2_min,
        f2_argmin=f2_argmin,
        conclusion_holds=lower > f2_min,
    )
    log.info(
        "sqrt(inf F1) = %.6f, min F2 = %.6f, conclusion holds: %s",
        lower,
        f2_min,
        report.conclusion_holds,
    )
    return report
