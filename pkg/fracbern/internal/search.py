"""Scalar searches: golden-section minimization, bisection and grid scans."""

from __future__ import annotations

import math
from collections.abc import Callable, Sequence
from dataclasses import dataclass

from ..errors import BracketError

__all__ = (
    "PHI_RATIO",
    "MinimumResult",
    "golden_section",
    "bisect_root",
    "grid_minimum",
    "sign_changes",
    "interior_grid",
)

PHI_RATIO = 2 / (1 + math.sqrt(5))


@dataclass(frozen=True)
class MinimumResult:
    argmin: float
    minimum: float
    evaluations: int
    bracket_width: float
    converged: bool


def golden_section(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    *,
    tol: float = 1e-10,
    max_iterations: int = 200,
) -> MinimumResult:
    """Minimize a unimodal function on ``[lo, hi]`` by golden-section search.

    The bracket shrinks by the golden ratio every step until it is at most ``tol`` wide.
    If an end point of the original bracket beats the interior estimate, that end point is
    returned instead.

    Parameters
    ----------
    f:
        The function to minimize.
    lo:
        The left end of the bracket.
    hi:
        The right end of the bracket.
    tol:
        The final bracket width. Defaults to ``1e-10``.
    max_iterations:
        The maximum amount of steps. Defaults to ``200``.
    """
    x1 = hi - PHI_RATIO * (hi - lo)
    x2 = lo + PHI_RATIO * (hi - lo)
    f1, f2 = f(x1), f(x2)
    evaluations = 2

    iteration = 0
    while iteration < max_iterations and hi - lo > tol:
        if f2 > f1:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - PHI_RATIO * (hi - lo)
            f1 = f(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + PHI_RATIO * (hi - lo)
            f2 = f(x2)
        evaluations += 1
        iteration += 1

    if f1 <= f2:
        argmin, minimum = x1, f1
    else:
        argmin, minimum = x2, f2

    converged = hi - lo <= tol and not (math.isnan(f1) or math.isnan(f2))
    return MinimumResult(argmin, minimum, evaluations, hi - lo, converged)


def bisect_root(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    *,
    f_lo: float | None = None,
    f_hi: float | None = None,
    xtol: float = 1e-14,
    max_iterations: int = 200,
) -> float:
    """Find a root of ``f`` in ``[lo, hi]`` by bisection.

    Raises
    ------
    :exc:`BracketError`
        ``f`` has the same sign at both ends.
    """
    f_lo = f(lo) if f_lo is None else f_lo
    f_hi = f(hi) if f_hi is None else f_hi
    if f_lo == 0:
        return lo
    if f_hi == 0:
        return hi
    if (f_lo > 0) == (f_hi > 0):
        raise BracketError(
            f"No sign change on [{lo!r}, {hi!r}]: f = {f_lo!r} and {f_hi!r}.",
            value=lo if abs(f_lo) < abs(f_hi) else hi,
        )

    for _ in range(max_iterations):
        if hi - lo <= xtol * max(1.0, abs(lo)):
            break
        mid = 0.5 * (lo + hi)
        f_mid = f(mid)
        if f_mid == 0:
            return mid
        if (f_mid > 0) == (f_lo > 0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def grid_minimum(values: Sequence[float]) -> int:
    """The index of the smallest finite value."""
    best = None
    for index, value in enumerate(values):
        if math.isfinite(value) and (best is None or value < values[best]):
            best = index
    if best is None:
        raise BracketError("No finite value on the grid.")
    return best


def sign_changes(values: Sequence[float]) -> list[int]:
    """Indices ``i`` where ``values[i]`` and ``values[i + 1]`` have opposite signs.

    Zeros count as a change on their left side only.
    """
    changes = []
    for i in range(len(values) - 1):
        left, right = values[i], values[i + 1]
        if left == 0 or (right != 0 and (left > 0) != (right > 0)):
            changes.append(i)
    return changes


def interior_grid(points: int, lo: float = 0.0, hi: float = 1.0) -> list[float]:
    """A uniform grid of ``points`` values strictly inside ``(lo, hi)``."""
    step = (hi - lo) / (points + 1)
    return [lo + step * (k + 1) for k in range(points)]
