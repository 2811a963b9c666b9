from __future__ import annotations

import dataclasses
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import yaml

from ..enums import OutputFormat
from ..errors import ConfigError

THREADS_ENV = "FRACBERN_THREADS"
LOG_LEVEL_ENV = "FRACBERN_LOG_LEVEL"


class FracConfig:
    """A class to store process-wide settings.

    These values are usually set only once by the command line, but are used throughout the run.
    """

    threads: int = 0

    @classmethod
    def worker_count(cls) -> int:
        """The number of worker threads, resolving ``0`` to the CPU count."""
        if cls.threads > 0:
            return cls.threads
        return os.cpu_count() or 1


def threads_from_env() -> int | None:
    """Reads ``FRACBERN_THREADS``. Returns ``None`` if the variable is not set.

    Raises
    ------
    :exc:`ConfigError`
        The variable is not a non-negative integer.
    """
    raw = os.getenv(THREADS_ENV)
    if raw is None or raw.strip() == "":
        return None
    try:
        threads = int(raw)
    except ValueError:
        raise ConfigError(f"{THREADS_ENV} must be an integer, got '{raw}'.")
    if threads < 0:
        raise ConfigError(f"{THREADS_ENV} must be 0 (auto) or positive, got {threads}.")
    return threads


@dataclass
class RunConfig:
    """The fully resolved settings of one command line run."""

    alpha: float = 1.0
    domain_center: float = 0.0
    domain_radius: float = 1.0
    lambda_: float | None = None
    grid: int = 128
    quad_tol: float = 1e-10
    series_tail_tol: float = 1e-8
    output_format: OutputFormat = OutputFormat.csv
    plot_path: str | None = None
    verify: bool = False
    threads: int = 0
    series_grid: int = 256
    proof_grid: int = 400
    sources: list[str] = field(default_factory=list, compare=False)

    def validate(self, *, needs_lambda: bool = False) -> RunConfig:
        """Checks every numeric constraint and returns the config itself.

        Parameters
        ----------
        needs_lambda:
            Whether ``lambda_`` is required. Only the solve commands need it.

        Raises
        ------
        :exc:`ConfigError`
            A value is out of range or missing.
        """
        if not 0 < self.alpha < 2:
            raise ConfigError(f"alpha must lie in (0, 2), got {self.alpha}.")
        if not self.domain_radius > 0:
            raise ConfigError(f"radius must be positive, got {self.domain_radius}.")
        if self.lambda_ is not None and not self.lambda_ > 0:
            raise ConfigError(f"lambda must be positive, got {self.lambda_}.")
        if needs_lambda and self.lambda_ is None:
            raise ConfigError("This command needs --lambda.")
        if self.grid < 16:
            raise ConfigError(f"grid must be at least 16, got {self.grid}.")
        if self.series_grid < 16:
            raise ConfigError(f"series grid must be at least 16, got {self.series_grid}.")
        if self.proof_grid < 100:
            raise ConfigError(f"proof grid must be at least 100, got {self.proof_grid}.")
        if not self.quad_tol > 0 or not self.series_tail_tol > 0:
            raise ConfigError("Tolerances must be positive.")
        if self.threads < 0:
            raise ConfigError(f"threads must be 0 (auto) or positive, got {self.threads}.")
        return self

    def to_meta(self) -> dict[str, Any]:
        """The resolved config as plain JSON types, used as the ``meta`` block of JSON output."""
        meta = {}
        for f in dataclasses.fields(self):
            if f.name == "sources":
                continue
            value = getattr(self, f.name)
            if isinstance(value, OutputFormat):
                value = value.value
            meta["lambda" if f.name == "lambda_" else f.name] = value
        return meta


# config keys mapped to (field name, type)
_KEYS: dict[str, tuple[str, type]] = {
    "alpha": ("alpha", float),
    "center": ("domain_center", float),
    "domain_center": ("domain_center", float),
    "radius": ("domain_radius", float),
    "domain_radius": ("domain_radius", float),
    "lambda": ("lambda_", float),
    "grid": ("grid", int),
    "quad_tol": ("quad_tol", float),
    "tail_tol": ("series_tail_tol", float),
    "series_tail_tol": ("series_tail_tol", float),
    "format": ("output_format", OutputFormat),
    "output_format": ("output_format", OutputFormat),
    "plot": ("plot_path", str),
    "plot_path": ("plot_path", str),
    "verify": ("verify", bool),
    "threads": ("threads", int),
    "series_grid": ("series_grid", int),
    "proof_grid": ("proof_grid", int),
}


def _convert(key: str, value: Any, kind: type) -> Any:
    if kind is bool:
        if isinstance(value, bool):
            return value
        text = str(value).strip().lower()
        if text in ("1", "true", "yes", "on"):
            return True
        if text in ("0", "false", "no", "off"):
            return False
        raise ConfigError(f"'{key}' must be a boolean, got '{value}'.")
    try:
        return kind(value)
    except (TypeError, ValueError):
        raise ConfigError(f"'{key}' has an invalid value '{value}'.")


def _parse_key_value(text: str, path: Path) -> dict[str, Any]:
    data = {}
    for number, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{number}: expected 'key = value', got '{line}'.")
        key, value = (part.strip() for part in line.split("=", 1))
        data[key] = value
    return data


def read_config_file(path: str | os.PathLike) -> dict[str, Any]:
    """Reads a config file and returns the values keyed by field name.

    Files ending in ``.yaml`` or ``.yml`` are parsed as YAML, every other file as
    ``key = value`` lines. Keys are the flag names, with ``-`` or ``_``.

    Parameters
    ----------
    path:
        The path of the config file.

    Raises
    ------
    :exc:`ConfigError`
        The file could not be read or contains an unknown key or an invalid value.
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ConfigError(f"Could not read config file '{path}': {e}")

    if path.suffix.lower() in (".yaml", ".yml"):
        try:
            raw = yaml.safe_load(text) or {}
        except yaml.YAMLError as e:
            raise ConfigError(f"Invalid YAML in '{path}': {e}")
        if not isinstance(raw, dict):
            raise ConfigError(f"'{path}' must contain a mapping of keys to values.")
    else:
        raw = _parse_key_value(text, path)

    values = {}
    for key, value in raw.items():
        normalized = str(key).strip().replace("-", "_").lower()
        if normalized not in _KEYS:
            raise ConfigError(f"Unknown config key '{key}' in '{path}'.")
        name, kind = _KEYS[normalized]
        values[name] = None if value is None else _convert(str(key), value, kind)
    return values


def resolve_config(
    flags: dict[str, Any], *, config_path: str | os.PathLike | None = None
) -> RunConfig:
    """Builds a :class:`RunConfig` from defaults, a config file, the environment and flags.

    Later sources win: defaults < config file < ``FRACBERN_THREADS`` < flags.
    Flags with the value ``None`` count as not given.
    """
    config = RunConfig()
    if config_path is not None:
        config = dataclasses.replace(config, **read_config_file(config_path))
        config.sources.append(str(config_path))

    env_threads = threads_from_env()
    if env_threads is not None:
        config.threads = env_threads
        config.sources.append(THREADS_ENV)

    given = {key: value for key, value in flags.items() if value is not None}
    if given:
        config = dataclasses.replace(config, **given)
        config.sources.append("flags")
    return config
