"""Adaptive Gauss-Kronrod quadrature for integrands with algebraic endpoint singularities.

Every integral of the free boundary problems has the form ``(y - lo)**beta * smooth`` near an
end point, with ``beta`` typically ``-alpha/2``. Declaring ``beta`` in the
:class:`QuadratureSpec` lets the integrator substitute ``t = lo + (hi - lo) * s**(1/(1+beta))``,
which removes the singularity before the adaptive 7/15-point Gauss-Kronrod rule is applied.

Integrands are vectorized: they receive a :class:`numpy.ndarray` of abscissae and return an array
of the same shape (or a scalar, which is broadcast).
"""

from __future__ import annotations

import dataclasses
import heapq
import logging
import math
from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass

import numpy as np

from .errors import AccuracyError, DomainError

__all__ = (
    "QuadratureSpec",
    "IntegralResult",
    "integrate_finite",
    "integrate_semi_infinite",
    "integrate_complement",
    "geometric_points",
    "panel_rule",
)

log = logging.getLogger(__name__)

Integrand = Callable[[np.ndarray], "np.ndarray | float"]

# 15-point Kronrod abscissae on [-1, 1] and the weights of the embedded 7-point Gauss rule
_XK = np.array(
    [
        0.991455371120812639206854697526329,
        0.949107912342758524526189684047851,
        0.864864423359769072789712788640926,
        0.741531185599394439863864773280788,
        0.586087235467691130294144845693013,
        0.405845151377397166906606412076961,
        0.207784955007898467600689403773245,
        0.000000000000000000000000000000000,
    ]
)
_WK = np.array(
    [
        0.022935322010529224963732008058970,
        0.063092092629978553290700663189204,
        0.104790010322250183839876322541518,
        0.140653259715525918745189590510238,
        0.169004726639267902826583426598550,
        0.190350578064785409913256402421014,
        0.204432940075298892414161999234649,
        0.209482141084727828012999174891714,
    ]
)
_WG = np.array(
    [
        0.0,
        0.129484966168869693270611432679082,
        0.0,
        0.279705391489276667901467771423780,
        0.0,
        0.381830050505118944950369775488975,
        0.0,
        0.417959183673469387755102040816327,
    ]
)

NODES = np.concatenate([-_XK[:-1], _XK[::-1]])
KRONROD_WEIGHTS = np.concatenate([_WK[:-1], _WK[::-1]])
GAUSS_WEIGHTS = np.concatenate([_WG[:-1], _WG[::-1]])

_EPS = np.finfo(float).eps


@dataclass(frozen=True)
class QuadratureSpec:
    """Tolerances and singularity declarations for one integral.

    Parameters
    ----------
    abs_tol:
        Absolute tolerance. Defaults to ``1e-10``.
    rel_tol:
        Relative tolerance. Defaults to ``1e-10``.
    max_subdivisions:
        The maximum amount of subintervals of the adaptive rule. Defaults to ``200``.
    endpoint_exponent_left:
        The exponent ``beta`` of ``(t - lo)**beta`` at the left end point. Defaults to ``0``.
    endpoint_exponent_right:
        The exponent of ``(hi - t)**beta`` at the right end point. Defaults to ``0``.
    """

    abs_tol: float = 1e-10
    rel_tol: float = 1e-10
    max_subdivisions: int = 200
    endpoint_exponent_left: float = 0.0
    endpoint_exponent_right: float = 0.0

    def __post_init__(self):
        if not self.abs_tol > 0 or not self.rel_tol > 0:
            raise DomainError("Quadrature tolerances must be positive.")
        if self.max_subdivisions < 1:
            raise DomainError("max_subdivisions must be at least 1.")
        if not (self.endpoint_exponent_left > -1 and self.endpoint_exponent_right > -1):
            raise DomainError("Endpoint exponents must be greater than -1 to be integrable.")

    def with_exponents(self, left: float = 0.0, right: float = 0.0) -> QuadratureSpec:
        """A copy of this spec with other endpoint exponents."""
        return dataclasses.replace(
            self, endpoint_exponent_left=left, endpoint_exponent_right=right
        )

    def with_tol(self, tol: float) -> QuadratureSpec:
        """A copy of this spec with ``abs_tol = rel_tol = tol``."""
        return dataclasses.replace(self, abs_tol=tol, rel_tol=tol)

    def target(self, value: float) -> float:
        return max(self.abs_tol, self.rel_tol * abs(value))


@dataclass(frozen=True)
class IntegralResult:
    value: float
    error_estimate: float
    evaluations: int

    def __float__(self):
        return self.value

    def __add__(self, other: IntegralResult) -> IntegralResult:
        return IntegralResult(
            self.value + other.value,
            self.error_estimate + other.error_estimate,
            self.evaluations + other.evaluations,
        )


def _evaluate(f: Integrand, x: np.ndarray) -> np.ndarray:
    return np.broadcast_to(np.asarray(f(x), dtype=float), x.shape)


def _substituted(f: Integrand, fixed: float, width: float, q: float) -> Integrand:
    """``t = fixed + width * s**q`` on ``s in [0, 1]``, weighted by ``|dt/ds|``.

    ``width`` is negative for a singularity at the right end. Abscissae that round onto
    ``fixed`` contribute nothing, the transformed integrand is bounded there.
    """
    if q == 1.0:
        return lambda s: _evaluate(f, fixed + width * s) * abs(width)

    def g(s: np.ndarray) -> np.ndarray:
        t = fixed + width * s**q
        out = np.zeros_like(s)
        safe = (t != fixed) & (s > 0)
        if safe.any():
            out[safe] = _evaluate(f, t[safe]) * (abs(width) * q * s[safe] ** (q - 1))
        return out

    return g


def _power(beta: float) -> float:
    return 1.0 / (1.0 + beta) if beta < 0 else 1.0


def _segments(
    f: Integrand, lo: float, hi: float, spec: QuadratureSpec, points: Iterable[float]
) -> list[tuple[Integrand, float, float]]:
    """Split ``[lo, hi]`` into segments ``(g, s_lo, s_hi)`` with regularized integrands."""
    breaks = [lo] + sorted({p for p in points if lo < p < hi}) + [hi]
    q_left = _power(spec.endpoint_exponent_left)
    q_right = _power(spec.endpoint_exponent_right)

    pieces = list(zip(breaks[:-1], breaks[1:]))
    segments: list[tuple[Integrand, float, float]] = []
    for index, (a, b) in enumerate(pieces):
        left = q_left if index == 0 else 1.0
        right = q_right if index == len(pieces) - 1 else 1.0

        if left != 1.0 and right != 1.0:
            mid = 0.5 * (a + b)
            segments.append((_substituted(f, a, mid - a, left), 0.0, 1.0))
            segments.append((_substituted(f, b, mid - b, right), 0.0, 1.0))
        elif left != 1.0:
            segments.append((_substituted(f, a, b - a, left), 0.0, 1.0))
        elif right != 1.0:
            segments.append((_substituted(f, b, a - b, right), 0.0, 1.0))
        else:
            segments.append((f, a, b))
    return segments


def _kronrod(g: Integrand, a: float, b: float) -> tuple[float, float]:
    """One 7/15-point Gauss-Kronrod step with the QUADPACK error heuristic."""
    half = 0.5 * (b - a)
    center = 0.5 * (a + b)
    fx = _evaluate(g, center + half * NODES)
    if not np.all(np.isfinite(fx)):
        raise AccuracyError(f"The integrand is not finite on [{a!r}, {b!r}].")

    kronrod = float(np.dot(KRONROD_WEIGHTS, fx))
    gauss = float(np.dot(GAUSS_WEIGHTS, fx))
    mean = 0.5 * kronrod
    resasc = abs(half) * float(np.dot(KRONROD_WEIGHTS, np.abs(fx - mean)))
    resabs = abs(half) * float(np.dot(KRONROD_WEIGHTS, np.abs(fx)))

    error = abs(half * (kronrod - gauss))
    if resasc != 0 and error != 0:
        error = resasc * min(1.0, (200 * error / resasc) ** 1.5)
    if resabs > np.finfo(float).tiny / (50 * _EPS):
        error = max(50 * _EPS * resabs, error)
    return kronrod * half, error


def _adaptive(segments: Sequence[tuple[Integrand, float, float]], spec: QuadratureSpec):
    limit = spec.max_subdivisions + len(segments)
    heap = []
    total = 0.0
    error = 0.0
    for index, (g, a, b) in enumerate(segments):
        value, err = _kronrod(g, a, b)
        total += value
        error += err
        heapq.heappush(heap, (-err, index, a, b, value))
    evaluations = 15 * len(segments)

    # intervals at machine resolution, they can not be split any further
    exhausted = []
    while heap and error > spec.target(total):
        if len(heap) + len(exhausted) >= limit:
            break
        neg_err, index, a, b, value = heapq.heappop(heap)
        mid = 0.5 * (a + b)
        if not a < mid < b:
            exhausted.append((neg_err, index, a, b, value))
            log.debug("Subinterval [%r, %r] is at machine resolution.", a, b)
            continue

        g = segments[index][0]
        left_value, left_err = _kronrod(g, a, mid)
        right_value, right_err = _kronrod(g, mid, b)
        evaluations += 30

        total += left_value + right_value - value
        error += left_err + right_err + neg_err
        heapq.heappush(heap, (-left_err, index, a, mid, left_value))
        heapq.heappush(heap, (-right_err, index, mid, b, right_value))

    # recompute the sums to remove the drift of the running updates
    intervals = heap + exhausted
    total = math.fsum(item[4] for item in intervals)
    error = math.fsum(-item[0] for item in intervals)
    if error > spec.target(total):
        raise AccuracyError(
            f"Tolerance not met after {len(intervals)} subintervals "
            f"(estimate {error:.3g}, target {spec.target(total):.3g}).",
            value=total,
            estimate=error,
        )
    return total, error, evaluations


def integrate_finite(
    f: Integrand,
    lo: float,
    hi: float,
    spec: QuadratureSpec | None = None,
    *,
    points: Iterable[float] = (),
) -> IntegralResult:
    """Integrate ``f`` over ``[lo, hi]``.

    Parameters
    ----------
    f:
        A vectorized integrand.
    lo:
        The lower limit.
    hi:
        The upper limit.
    spec:
        Tolerances and endpoint exponents. Defaults to :class:`QuadratureSpec()`.
    points:
        Interior break points (discontinuities, kinks, peaks). They are used as the initial
        subdivision.

    Returns
    -------
    :class:`IntegralResult`

    Raises
    ------
    :exc:`DomainError`
        ``lo >= hi``.
    :exc:`AccuracyError`
        The tolerance was not met within ``max_subdivisions``. The exception carries the best
        value and its error estimate.

    Example
    -------
    >>> spec = QuadratureSpec(endpoint_exponent_left=-0.5)
    >>> integrate_finite(lambda t: t**-0.5, 0.0, 1.0, spec).value
    2.0
    """
    spec = spec or QuadratureSpec()
    if not lo < hi:
        raise DomainError(f"Expected lo < hi, got [{lo!r}, {hi!r}].")

    value, error, evaluations = _adaptive(_segments(f, lo, hi, spec, points), spec)
    return IntegralResult(value, error, evaluations)


def _scalar(f: Integrand, y: float) -> float:
    return float(_evaluate(f, np.array([y]))[0])


def _tail_coefficients(f: Integrand, y: float, tail_exponent: float) -> tuple[float, float, float]:
    """Fit ``f(t) t**-tail_exponent = A + B (y/t) + C (y/t)**2`` at ``t = y, 2y, 4y``."""
    c1, c2, c4 = (_scalar(f, k * y) * (k * y) ** -tail_exponent for k in (1, 2, 4))
    near = c1 - c2
    far = c2 - c4
    quadratic = 8.0 * (near - 2.0 * far) / 3.0
    linear = 8.0 * far - 2.0 * near
    return c1 - linear - quadratic, linear, quadratic


def integrate_semi_infinite(
    f: Integrand,
    lo: float,
    tail_exponent: float,
    spec: QuadratureSpec | None = None,
    *,
    points: Iterable[float] = (),
) -> IntegralResult:
    """Integrate ``f`` over ``[lo, inf)`` for an integrand with a power-law tail.

    ``f(t)`` must have the expansion ``t**tail_exponent (A + B/t + C/t**2 + ...)`` for large
    ``t``. The three coefficients are fitted at ``Y``, ``2 Y`` and ``4 Y``, and the tail beyond
    ``Y`` is integrated term by term. ``Y`` is doubled until the quadratic term of the tail,
    the error estimate of the fit, is below ``abs_tol / 2``. ``[lo, Y]`` is integrated on
    geometrically growing panels.

    The left endpoint exponent of ``spec`` applies at ``lo``, the right one is ignored.

    Raises
    ------
    :exc:`DomainError`
        ``tail_exponent >= -1``.
    :exc:`AccuracyError`
        The tail could not be made small enough or the finite part did not converge.
    """
    spec = spec or QuadratureSpec()
    if not tail_exponent < -1:
        raise DomainError(f"The tail exponent must be below -1, got {tail_exponent}.")

    points = sorted(p for p in points if p > lo)
    start = max(lo + 1.0, 2.0 * abs(lo), 1.0)
    if points:
        start = max(start, 2.0 * points[-1])

    decay = -(1.0 + tail_exponent)
    breaks = [start]
    y = start
    samples = 0
    while True:
        lead, linear, quadratic = _tail_coefficients(f, y, tail_exponent)
        samples += 3
        scale = y**-decay
        tail_value = scale * (lead / decay + linear / (decay + 1) + quadratic / (decay + 2))
        tail_error = scale * abs(quadratic) / (decay + 2) + 50 * _EPS * abs(tail_value)
        if tail_error < 0.5 * spec.abs_tol:
            break
        y *= 2.0
        breaks.append(y)
        if y > 1e150:
            raise AccuracyError(
                f"The tail of the integral from {lo!r} does not decay fast enough.",
                value=tail_value,
                estimate=tail_error,
            )

    finite_spec = dataclasses.replace(
        spec,
        abs_tol=0.5 * spec.abs_tol,
        max_subdivisions=spec.max_subdivisions + len(breaks),
        endpoint_exponent_right=0.0,
    )
    finite = integrate_finite(f, lo, y, finite_spec, points=points + breaks[:-1])
    log.debug("Semi-infinite integral from %r split at Y=%.3g with tail %.3g.", lo, y, tail_value)
    return IntegralResult(
        finite.value + tail_value,
        finite.error_estimate + tail_error,
        finite.evaluations + samples,
    )


def integrate_complement(
    f: Integrand,
    lo: float,
    hi: float,
    tail_exponent: float,
    spec: QuadratureSpec | None = None,
    *,
    edge_exponent: float = 0.0,
    points: Iterable[float] = (),
) -> IntegralResult:
    """Integrate ``f`` over ``(-inf, lo) U (hi, inf)``.

    The left half-line is mirrored onto ``(-lo, inf)``. ``edge_exponent`` is the exponent of the
    singularity of ``f`` at ``lo`` and ``hi``; both tails decay with ``tail_exponent``.
    Each half gets half of the absolute tolerance.
    """
    spec = spec or QuadratureSpec()
    half = dataclasses.replace(
        spec,
        abs_tol=0.5 * spec.abs_tol,
        endpoint_exponent_left=edge_exponent,
        endpoint_exponent_right=0.0,
    )
    points = list(points)
    right = integrate_semi_infinite(
        f, hi, tail_exponent, half, points=[p for p in points if p > hi]
    )
    left = integrate_semi_infinite(
        lambda t: f(-t), -lo, tail_exponent, half, points=[-p for p in points if p < lo]
    )
    return left + right


def geometric_points(edge: float, width: float, extent: float) -> list[float]:
    """Break points ``edge + width * 2**k``, ``k >= 1``, closer to ``edge`` than ``extent``.

    Splits an integral towards a peak of width ``|width|`` at ``edge``, so that every panel
    sees the integrand vary by a bounded factor. ``width`` is negative for points left of
    ``edge``.

    Example
    -------
    >>> geometric_points(1.0, -0.1, 0.5)
    [0.8, 0.6]
    """
    points: list[float] = []
    if width == 0:
        return points
    step = 2.0 * width
    while abs(step) < extent:
        points.append(edge + step)
        step *= 2.0
    return points


def panel_rule(breaks: Sequence[float] | np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """The 15-point Kronrod rule on every panel between consecutive break points.

    Returns
    -------
    :class:`tuple`
        The abscissae and the weights as two flat arrays.
    """
    breaks = np.asarray(breaks, dtype=float)
    half = 0.5 * np.diff(breaks)
    center = 0.5 * (breaks[1:] + breaks[:-1])
    nodes = center[:, None] + half[:, None] * NODES[None, :]
    weights = half[:, None] * KRONROD_WEIGHTS[None, :]
    return nodes.ravel(), weights.ravel()
