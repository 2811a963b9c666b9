"""The ``fracbern`` command line.

Results go to stdout as CSV or JSON, logs go to stderr. Exit codes: ``0`` success, ``1`` the
proof check ran but its conclusion failed, ``2`` invalid input, ``3`` a tolerance was not met.
"""

from __future__ import annotations

import argparse
import logging
import math
import os
import sys
from collections.abc import Callable, Sequence
from typing import Any, TextIO

from dotenv import load_dotenv

from . import __version__
from .enums import OutputFormat, Problem
from .errors import AccuracyError, DomainError
from .internal.config import LOG_LEVEL_ENV, FracConfig, RunConfig, resolve_config
from .internal.tables import record_table, summary_table
from .logs import DEFAULT_LOG, custom_log, set_log
from .one_free import (
    FreeBoundarySolution,
    Interval,
    mu_constant,
    rate_curve,
    solve_one_free,
)
from .plotting import plot_curve, plot_profiles
from .proofcheck import check_inequality
from .quadrature import QuadratureSpec
from .specialfn import make_alpha_context
from .two_free import SeriesSpec, bounds_LU, lambda_constant, psi_curve, solve_two_free
from .utils import csv_text, json_text

__all__ = (
    "build_parser",
    "main",
    "cmd_constant",
    "cmd_curve",
    "cmd_solve",
    "cmd_profile",
    "cmd_bounds",
    "cmd_proofcheck",
)

log = logging.getLogger(DEFAULT_LOG)

EXIT_OK = 0
EXIT_CONCLUSION_FAILED = 1
EXIT_DOMAIN = 2
EXIT_ACCURACY = 3

CURVE_HEADER = ("a", "value")
PROFILE_HEADER = ("x", "u", "solution_index")
SOLVE_HEADER = ("solution_index", "free_point", "k_lo", "k_hi", "level")

# argparse destinations mapped to RunConfig fields
_FLAG_FIELDS = {
    "alpha": "alpha",
    "center": "domain_center",
    "radius": "domain_radius",
    "lam": "lambda_",
    "grid": "grid",
    "quad_tol": "quad_tol",
    "tail_tol": "series_tail_tol",
    "format": "output_format",
    "plot": "plot_path",
    "threads": "threads",
    "series_grid": "series_grid",
}


def _options() -> argparse.ArgumentParser:
    options = argparse.ArgumentParser(add_help=False)
    group = options.add_argument_group("options")
    group.add_argument("--alpha", type=float, help="order of the fractional Laplacian, in (0, 2)")
    group.add_argument("--center", type=float, help="center x0 of the domain")
    group.add_argument("--radius", type=float, help="radius r of the domain")
    group.add_argument("--lambda", dest="lam", type=float, help="the level (solve, profile)")
    group.add_argument("--grid", type=int, help="amount of curve points or the F1 grid")
    group.add_argument("--quad-tol", type=float, help="quadrature tolerance")
    group.add_argument("--tail-tol", type=float, help="Neumann series tail tolerance")
    group.add_argument("--series-grid", type=int, help="amount of Neumann series nodes")
    group.add_argument("--format", type=OutputFormat, choices=list(OutputFormat))
    group.add_argument("--plot", metavar="PATH", help="write an SVG chart to PATH")
    group.add_argument("--config", metavar="PATH", help="read settings from a config file")
    group.add_argument("--verify", action="store_true", default=None, help="add consistency checks")
    group.add_argument("--threads", type=int, help="worker threads, 0 for one per CPU")
    group.add_argument("-v", "--verbose", action="count", default=0, help="-v for info, -vv for debug")
    return options


def build_parser() -> argparse.ArgumentParser:
    """The argument parser with one subcommand per result type."""
    options = _options()
    parser = argparse.ArgumentParser(
        prog="fracbern",
        description="Bernoulli constants and free boundaries of the fractional Laplacian on an interval.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    commands = parser.add_subparsers(dest="command", required=True, metavar="command")

    problems = [str(p) for p in Problem]
    for name, text in (
        ("constant", "the Bernoulli constant of the domain"),
        ("curve", "the rate function R or Psi on a grid"),
        ("solve", "free points of every solution at --lambda"),
        ("profile", "sampled profiles of every solution at --lambda"),
    ):
        sub = commands.add_parser(name, parents=[options], help=text, description=text)
        sub.add_argument("problem", type=Problem, choices=list(Problem), metavar="{" + ",".join(problems) + "}")

    commands.add_parser("bounds", parents=[options], help="closed-form bounds of the two-free constant")
    commands.add_parser("proofcheck", parents=[options], help="compare the variational and the Bernoulli constant")
    return parser


def _flags(args: argparse.Namespace) -> dict[str, Any]:
    flags = {field: getattr(args, dest) for dest, field in _FLAG_FIELDS.items()}
    flags["verify"] = args.verify
    return flags


def _log_level(verbose: int) -> int:
    if verbose >= 2:
        return logging.DEBUG
    if verbose == 1:
        return logging.INFO
    level = os.getenv(LOG_LEVEL_ENV, "").strip().upper()
    return logging.getLevelName(level) if level in ("DEBUG", "INFO", "WARNING", "ERROR") else logging.WARNING


def _specs(config: RunConfig) -> tuple[QuadratureSpec, SeriesSpec]:
    qspec = QuadratureSpec(abs_tol=config.quad_tol, rel_tol=config.quad_tol)
    sspec = SeriesSpec(tail_tol=config.series_tail_tol, grid_points=config.series_grid)
    return qspec, sspec


def _domain(config: RunConfig) -> Interval:
    return Interval(config.domain_center, config.domain_radius)


def _emit(
    out: TextIO,
    config: RunConfig,
    header: Sequence[str],
    rows: list[Sequence[Any]],
    meta: dict[str, Any],
):
    if config.output_format == OutputFormat.json:
        data = [dict(zip(header, row)) for row in rows]
        out.write(json_text({**config.to_meta(), **meta}, data))
    else:
        out.write(csv_text(header, rows))


def _meta(command: str, problem: Problem | None = None) -> dict[str, Any]:
    meta: dict[str, Any] = {"command": command, "version": __version__}
    if problem is not None:
        meta["problem"] = str(problem)
    return meta


def cmd_constant(problem: Problem, config: RunConfig, out: TextIO) -> int:
    """Write the Bernoulli constant of the configured domain."""
    ctx = make_alpha_context(config.alpha)
    domain = _domain(config)
    qspec, sspec = _specs(config)

    if problem == Problem.one_free:
        result = mu_constant(ctx, domain)
    else:
        result = lambda_constant(ctx, domain, sspec, qspec)

    record: dict[str, Any] = {
        "alpha": config.alpha,
        "center": domain.center,
        "radius": domain.radius,
        "constant": result.constant,
        "argmin": result.argmin_a,
        "bracket_width": result.bracket_width,
        "evaluations": result.evaluations,
    }
    if config.verify:
        if problem == Problem.two_free:
            lower, upper = (domain.radius**-ctx.half * b for b in bounds_LU(ctx))
            record.update(lower=lower, upper=upper, in_bracket=lower <= result.constant <= upper)
        elif config.alpha == 1:
            exact = 2 * math.sqrt(2) / (math.pi * math.sqrt(domain.radius))
            record.update(exact=exact, error=abs(result.constant - exact))

    custom_log("RESULT", f"{problem} constant on {domain}\n" + summary_table(record))
    _emit(out, config, list(record), [list(record.values())], _meta("constant", problem))
    return EXIT_OK


def cmd_curve(problem: Problem, config: RunConfig, out: TextIO) -> int:
    """Write ``R`` or ``Psi`` on ``config.grid`` interior points of ``(0, 1)``."""
    ctx = make_alpha_context(config.alpha)
    qspec, sspec = _specs(config)

    if problem == Problem.one_free:
        samples = rate_curve(ctx, config.grid)
        label, bounds = "R(a)", None
    else:
        samples = psi_curve(ctx, config.grid, sspec, qspec)
        label, bounds = "Psi(a)", bounds_LU(ctx)

    if config.plot_path:
        plot_curve(samples, config.plot_path, label=label, title=f"alpha = {config.alpha:g}", bounds=bounds)
    _emit(out, config, CURVE_HEADER, [(s.a, s.value) for s in samples], _meta("curve", problem))
    return EXIT_OK


def _solve(problem: Problem, config: RunConfig) -> list[FreeBoundarySolution]:
    ctx = make_alpha_context(config.alpha)
    domain = _domain(config)
    qspec, sspec = _specs(config)
    if problem == Problem.one_free:
        solutions = solve_one_free(ctx, domain, config.lambda_, qspec)
    else:
        solutions = solve_two_free(ctx, domain, config.lambda_, sspec, qspec)
    log.info("Found **%d** solution(s) at lambda = %g", len(solutions), config.lambda_)

    if config.plot_path:
        title = f"alpha = {config.alpha:g}, D = {domain}, lambda = {config.lambda_:g}"
        plot_profiles(solutions, config.plot_path, title=title)
    return solutions


def cmd_solve(problem: Problem, config: RunConfig, out: TextIO) -> int:
    """Write one record per free point of every solution."""
    solutions = _solve(problem, config)
    rows = [
        (index, point, solution.k[0], solution.k[1], solution.level)
        for index, solution in enumerate(solutions)
        for point in solution.free_points
    ]
    if rows:
        custom_log("RESULT", "\n" + record_table(SOLVE_HEADER, rows))
    _emit(out, config, SOLVE_HEADER, rows, _meta("solve", problem))
    return EXIT_OK


def cmd_profile(problem: Problem, config: RunConfig, out: TextIO) -> int:
    """Write the sampled profile of every solution."""
    solutions = _solve(problem, config)
    rows = [
        (x, u, index)
        for index, solution in enumerate(solutions)
        for x, u in solution.profile
    ]
    _emit(out, config, PROFILE_HEADER, rows, _meta("profile", problem))
    return EXIT_OK


def cmd_bounds(config: RunConfig, out: TextIO) -> int:
    """Write the closed-form bounds of the two-free constant on ``(-1, 1)``.

    With ``--verify`` the constant itself is computed and checked against them.
    """
    ctx = make_alpha_context(config.alpha)
    lower, upper = bounds_LU(ctx)
    record: dict[str, Any] = {"alpha": config.alpha, "lower": lower, "upper": upper}

    if config.verify:
        qspec, sspec = _specs(config)
        constant = lambda_constant(ctx, Interval(0.0, 1.0), sspec, qspec).constant
        record.update(constant=constant, in_bracket=lower <= constant <= upper)
        if not record["in_bracket"]:
            log.warning("The constant %.10g is outside [%.10g, %.10g]", constant, lower, upper)

    custom_log("RESULT", "\n" + summary_table(record))
    _emit(out, config, list(record), [list(record.values())], _meta("bounds"))
    return EXIT_OK


def cmd_proofcheck(config: RunConfig, out: TextIO, *, grid: int | None = None) -> int:
    """Write the proof report as JSON. Exits with ``1`` if the conclusion fails."""
    report = check_inequality(grid or config.proof_grid)
    data = report.to_dict()
    custom_log("RESULT", "\n" + summary_table(data, color="green" if report.conclusion_holds else "red"))
    out.write(json_text({**config.to_meta(), **_meta("proofcheck")}, data))
    return EXIT_OK if report.conclusion_holds else EXIT_CONCLUSION_FAILED


def _run(args: argparse.Namespace, config: RunConfig, out: TextIO) -> int:
    commands: dict[str, Callable[..., int]] = {
        "constant": cmd_constant,
        "curve": cmd_curve,
        "solve": cmd_solve,
        "profile": cmd_profile,
    }
    if args.command in commands:
        return commands[args.command](args.problem, config, out)
    if args.command == "bounds":
        return cmd_bounds(config, out)
    return cmd_proofcheck(config, out, grid=args.grid)


def main(argv: Sequence[str] | None = None, *, out: TextIO | None = None) -> int:
    """Run the command line and return the exit code.

    Parameters
    ----------
    argv:
        The arguments without the program name. Defaults to ``sys.argv[1:]``.
    out:
        Where results are written. Defaults to ``sys.stdout``.
    """
    load_dotenv()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_DOMAIN

    set_log(DEFAULT_LOG, _log_level(args.verbose))
    out = out or sys.stdout
    try:
        config = resolve_config(_flags(args), config_path=args.config)
        config.validate(needs_lambda=args.command in ("solve", "profile"))
        FracConfig.threads = config.threads
        log.debug("Resolved config from %s: %s", config.sources or ["defaults"], config.to_meta())
        return _run(args, config, out)
    except DomainError as e:
        log.error("%s", e)
        return EXIT_DOMAIN
    except AccuracyError as e:
        log.error("%s", e)
        if e.estimate is not None:
            log.error("Best value %r with error estimate %.3g", e.value, e.estimate)
        return EXIT_ACCURACY
