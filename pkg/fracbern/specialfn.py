"""Gamma, beta and Gauss hypergeometric functions and the constants that depend on ``alpha``."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from functools import cache

from .errors import AccuracyError, DomainError
from .quadrature import QuadratureSpec, geometric_points, integrate_finite

__all__ = (
    "AlphaContext",
    "gamma_fn",
    "log_gamma_fn",
    "beta_fn",
    "hyp2f1",
    "hyp2f1_series",
    "hyp2f1_integral",
    "make_alpha_context",
)

log = logging.getLogger(__name__)

# Lanczos approximation with g = 7 and 9 coefficients
_LANCZOS_G = 7
_LANCZOS_COEFFICIENTS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_SQRT_TWO_PI = math.sqrt(2 * math.pi)
_GAMMA_OVERFLOW = 171.62

SERIES_SWITCH = 0.9
SERIES_MAX_TERMS = 20_000
SERIES_REL_TOL = 1e-16
INTEGRAL_SPEC = QuadratureSpec(abs_tol=1e-13, rel_tol=1e-12, max_subdivisions=400)


def _check_positive(name: str, x: float):
    if not (math.isfinite(x) and x > 0):
        raise DomainError(f"{name} must be a positive finite number, got {x!r}.")


def _lanczos_sum(z: float) -> float:
    total = _LANCZOS_COEFFICIENTS[0]
    for i, coefficient in enumerate(_LANCZOS_COEFFICIENTS[1:], start=1):
        total += coefficient / (z + i)
    return total


def gamma_fn(x: float) -> float:
    """The gamma function for positive arguments.

    Uses the Lanczos approximation, with the reflection formula below ``1/2``.
    Arguments beyond ``171.62`` overflow to ``inf``.

    Parameters
    ----------
    x:
        A positive real number.

    Raises
    ------
    :exc:`DomainError`
        ``x`` is not positive.

    Example
    -------
    >>> gamma_fn(0.5)
    1.7724538509055159
    """
    _check_positive("x", x)
    return _gamma(x)


def _gamma(x: float) -> float:
    if x < 0.5:
        return math.pi / (math.sin(math.pi * x) * _gamma(1.0 - x))
    if x > _GAMMA_OVERFLOW:
        return math.inf

    z = x - 1.0
    t = z + _LANCZOS_G + 0.5
    # split the power so that t**(z + 1/2) does not overflow before exp(-t) is applied
    half_power = t ** (0.5 * (z + 0.5))
    return _SQRT_TWO_PI * half_power * (half_power * math.exp(-t)) * _lanczos_sum(z)


def log_gamma_fn(x: float) -> float:
    """The natural logarithm of :func:`gamma_fn`, finite for every positive argument."""
    _check_positive("x", x)
    if x < 0.5:
        return math.log(math.pi / math.sin(math.pi * x)) - log_gamma_fn(1.0 - x)

    z = x - 1.0
    t = z + _LANCZOS_G + 0.5
    return math.log(_SQRT_TWO_PI) + (z + 0.5) * math.log(t) - t + math.log(_lanczos_sum(z))


def beta_fn(p: float, q: float) -> float:
    """The beta function ``B(p, q) = Gamma(p) Gamma(q) / Gamma(p + q)``.

    Raises
    ------
    :exc:`DomainError`
        ``p`` or ``q`` is not positive.
    """
    _check_positive("p", p)
    _check_positive("q", q)
    if p + q < _GAMMA_OVERFLOW:
        return _gamma(p) * _gamma(q) / _gamma(p + q)
    return math.exp(log_gamma_fn(p) + log_gamma_fn(q) - log_gamma_fn(p + q))


def _check_hyp2f1(r: float, z: float):
    if r <= 0 and float(r).is_integer():
        raise DomainError(f"r must not be a non-positive integer, got {r!r}.")
    if not 0 <= z < 1:
        raise DomainError(f"z must lie in [0, 1), got {z!r}.")


def hyp2f1_series(
    p: float, q: float, r: float, z: float, *, max_terms: int = SERIES_MAX_TERMS
) -> float:
    """The power series of ``2F1(p, q; r; z)``.

    Terms are added until the geometric bound on the remaining tail is below
    ``1e-16`` relative to the partial sum.

    Raises
    ------
    :exc:`DomainError`
        ``r`` is a non-positive integer or ``z`` is outside ``[0, 1)``.
    :exc:`AccuracyError`
        The tail bound was not met within ``max_terms``. The partial sum and the bound are
        attached to the exception.
    """
    _check_hyp2f1(r, z)
    term = 1.0
    total = 1.0
    bound = math.inf
    settled = abs(p) + abs(q) + abs(r) + 2

    for n in range(max_terms):
        term *= (p + n) * (q + n) / ((r + n) * (n + 1)) * z
        total += term
        if term == 0:
            return total
        if n < settled:
            continue

        # later ratios approach z monotonically, so they stay below this one or below z
        ratio = abs((p + n + 1) * (q + n + 1) / ((r + n + 1) * (n + 2)) * z)
        rho = max(ratio, z)
        if rho < 1:
            bound = abs(term) * rho / (1 - rho)
            if bound <= SERIES_REL_TOL * abs(total):
                return total

    raise AccuracyError(
        f"The hypergeometric series did not converge in {max_terms} terms at z={z!r}.",
        value=total,
        estimate=bound,
    )


def hyp2f1_integral(
    p: float,
    q: float,
    r: float,
    z: float,
    *,
    representation: int = 1,
    spec: QuadratureSpec | None = None,
) -> float:
    """``2F1(p, q; r; z)`` from one of its two Euler-type integrals, for ``r > q > 0``.

    ``representation=1`` integrates ``t**(p-r) (t-1)**(r-q-1) (t-z)**(-p)`` over ``(1, inf)``,
    ``representation=2`` integrates ``t**(r-q-1) (t+1)**(p-r) (t-z+1)**(-p)`` over ``(0, inf)``.
    Both equal ``B(q, r-q) 2F1(p, q; r; z)``.

    The half-lines are mapped onto ``(0, 1)``, by ``t = 1/s`` and by ``t = s/(1-s)``, which
    turns the slowly decaying tail ``t**(-q-1)`` into the end point singularity ``s**(q-1)``
    or ``(1-s)**(q-1)``. The factor ``(1-zs)**(-p)`` peaks at ``s = 1`` (or ``s = 0``) with width
    ``1-z``, the quadrature is split geometrically towards it.

    Raises
    ------
    :exc:`DomainError`
        ``r > q > 0`` does not hold, ``z`` is outside ``[0, 1)`` or the representation is unknown.
    """
    _check_hyp2f1(r, z)
    if not r > q > 0:
        raise DomainError(f"The integral representation needs r > q > 0, got q={q!r}, r={r!r}.")

    spec = spec or INTEGRAL_SPEC
    if representation == 1:
        result = integrate_finite(
            lambda s: s ** (q - 1) * (1 - s) ** (r - q - 1) * (1 - z * s) ** -p,
            0.0,
            1.0,
            spec.with_exponents(left=q - 1, right=r - q - 1),
            points=geometric_points(1.0, z - 1.0, 0.5),
        )
    elif representation == 2:
        result = integrate_finite(
            lambda s: s ** (r - q - 1) * (1 - s) ** (q - 1) * (1 - z + z * s) ** -p,
            0.0,
            1.0,
            spec.with_exponents(left=r - q - 1, right=q - 1),
            points=geometric_points(0.0, 1.0 - z, 0.5),
        )
    else:
        raise DomainError(f"Unknown representation {representation!r}, expected 1 or 2.")

    return result.value / beta_fn(q, r - q)


def hyp2f1(p: float, q: float, r: float, z: float) -> float:
    """The Gauss hypergeometric function ``2F1(p, q; r; z)`` for ``0 <= z < 1``.

    The power series is used up to ``z = 0.9``. Above that the integral representation is
    used whenever ``r > q > 0``, since the series converges slowly as ``z`` approaches ``1``.

    Parameters
    ----------
    p, q, r:
        The parameters. ``r`` must not be a non-positive integer.
    z:
        The argument in ``[0, 1)``.

    Raises
    ------
    :exc:`DomainError`
        ``z >= 1``, ``z < 0`` or ``r`` is a non-positive integer.
    :exc:`AccuracyError`
        The series did not converge.

    Example
    -------
    >>> hyp2f1(1.5, 1, 2, 0.75)
    2.666666666666667
    """
    _check_hyp2f1(r, z)
    if z == 0:
        return 1.0
    if z > SERIES_SWITCH and r > q > 0:
        return hyp2f1_integral(p, q, r, z)
    return hyp2f1_series(p, q, r, z)


@dataclass(frozen=True)
class AlphaContext:
    """The order ``alpha`` of the fractional Laplacian with its derived constants.

    Attributes
    ----------
    alpha:
        The order, in ``(0, 2)``.
    c_alpha:
        ``sin(pi alpha / 2) / pi``, the constant of the interval Poisson kernel.
    t_alpha:
        ``B(alpha, 1 - alpha/2)``.
    a_alpha:
        The normalizing constant of the one-dimensional fractional Laplacian,
        ``alpha 2**alpha Gamma((1+alpha)/2) / (2 sqrt(pi) Gamma(1 - alpha/2))``.
    """

    alpha: float
    c_alpha: float
    t_alpha: float
    a_alpha: float

    @property
    def half(self) -> float:
        """``alpha / 2``, the exponent that appears in every kernel."""
        return 0.5 * self.alpha


@cache
def make_alpha_context(alpha: float) -> AlphaContext:
    """Build (once per value) the :class:`AlphaContext` for ``alpha``.

    Raises
    ------
    :exc:`DomainError`
        ``alpha`` is not in ``(0, 2)``.
    """
    if not (math.isfinite(alpha) and 0 < alpha < 2):
        raise DomainError(f"alpha must lie in (0, 2), got {alpha!r}.")

    alpha = float(alpha)
    c_alpha = math.sin(math.pi * alpha / 2) / math.pi
    t_alpha = beta_fn(alpha, 1 - alpha / 2)
    a_alpha = (
        alpha
        * 2**alpha
        * gamma_fn((1 + alpha) / 2)
        / (2 * math.sqrt(math.pi) * gamma_fn(1 - alpha / 2))
    )
    log.debug("Constants for alpha=%s: C=%.17g, T=%.17g, A=%.17g", alpha, c_alpha, t_alpha, a_alpha)
    return AlphaContext(alpha, c_alpha, t_alpha, a_alpha)
