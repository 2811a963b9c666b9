"""SVG line charts of rate curves and solution profiles."""

from __future__ import annotations

import logging
import os
from collections.abc import Sequence
from pathlib import Path

import matplotlib
from matplotlib.figure import Figure

from .one_free import CurveSample, FreeBoundarySolution

__all__ = ("plot_curve", "plot_profiles")

log = logging.getLogger(__name__)

WIDTH, HEIGHT, DPI = 800, 600, 72


def _figure():
    fig = Figure(figsize=(WIDTH / DPI, HEIGHT / DPI), dpi=DPI)
    return fig, fig.add_subplot()


def _save(fig: Figure, path: str | os.PathLike) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    # no date and a fixed id salt, so the same data gives the same file
    with matplotlib.rc_context({"svg.hashsalt": "fracbern"}):
        fig.savefig(path, format="svg", metadata={"Date": None})
    log.info("Plot written to **%s**", path)
    return path


def plot_curve(
    samples: Sequence[CurveSample],
    path: str | os.PathLike,
    *,
    label: str = "R(a)",
    title: str | None = None,
    bounds: tuple[float, float] | None = None,
) -> Path:
    """Plot a rate curve ``a -> value`` to an SVG file.

    Parameters
    ----------
    samples:
        The curve samples, ordered by ``a``.
    path:
        The SVG file to write.
    label:
        The name of the curve, used for the y axis.
    title:
        The title of the chart.
    bounds:
        Horizontal lines to draw, e.g. the closed-form bounds of the constant.
    """
    fig, ax = _figure()
    ax.plot([s.a for s in samples], [s.value for s in samples], lw=1.5, color="royalblue")
    if bounds:
        for bound in bounds:
            ax.axhline(bound, color="gray", lw=0.8, linestyle="--")
    ax.set_xlim(0, 1)
    ax.set_xlabel("a")
    ax.set_ylabel(label)
    if title:
        ax.set_title(title)
    ax.grid(True, lw=0.3)
    return _save(fig, path)


def plot_profiles(
    solutions: Sequence[FreeBoundarySolution],
    path: str | os.PathLike,
    *,
    title: str | None = None,
) -> Path:
    """Overlay the profiles of several solutions in one SVG chart."""
    fig, ax = _figure()
    for index, solution in enumerate(solutions):
        x, u = solution.profile_arrays()
        points = ", ".join(f"{p:.6g}" for p in solution.free_points)
        ax.plot(x, u, lw=1.5, label=f"solution {index} ({points})")
    if solutions:
        domain = solutions[0].domain
        ax.set_xlim(domain.lo - 0.5 * domain.radius, domain.hi + 0.5 * domain.radius)
        ax.legend(loc="upper right")
    ax.set_ylim(-0.05, 1.05)
    ax.set_xlabel("x")
    ax.set_ylabel("u(x)")
    if title:
        ax.set_title(title)
    ax.grid(True, lw=0.3)
    return _save(fig, path)
