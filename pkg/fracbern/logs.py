"""Logging utilities used by the library and the command line."""

from __future__ import annotations

import logging
import os
import re
import sys
from typing import TextIO

from colorama import Fore

from .enums import LogFormat, TimeFormat
from .internal.colors import DEFAULT_COLOR, DEFAULT_LOG_COLORS, get_escape_code, highlight

__all__ = ("DEFAULT_LOG", "log", "custom_log", "set_log")

DEFAULT_LOG = "fracbern"
log = logging.getLogger(DEFAULT_LOG)


def custom_log(
    key: str, message: str, *, color: str | None = DEFAULT_COLOR, level: int = logging.INFO
):
    """Log a message with a custom label instead of the level name.

    Parameters
    ----------
    key:
        The label that replaces the level name, e.g. ``RESULT``.
    message:
        The message to log.
    color:
        The color to use for the label. Defaults to ``Fore.MAGENTA``.
    level:
        The log level. Defaults to ``logging.INFO``.
    """
    color = get_escape_code(color)
    logging.getLogger(DEFAULT_LOG).log(level, message, extra={"key": key, "color": color})


def _format_colors(colors: dict[int, str] | str | None = None) -> dict[int, str]:
    """Overwrite the default colors for the given log levels."""

    final_colors = DEFAULT_LOG_COLORS.copy()
    if colors is None:
        return final_colors

    if isinstance(colors, str):
        color = get_escape_code(colors)
        for level in final_colors:
            final_colors[level] = color
    else:
        for level in colors:
            final_colors[level] = get_escape_code(colors[level])

    return final_colors


def _color_format(log_format: str, color: str, plain: bool) -> str:
    """Fill the ``{color}``, ``{end}`` and ``{red}``-style placeholders of a log format."""
    placeholders = [p for p in re.findall(r"{.*?}", log_format) if p not in ("{color}", "{end}")]

    if plain:
        for placeholder in placeholders:
            log_format = log_format.replace(placeholder, "")
        return log_format.format(color="", end="")

    if "{end}" not in log_format:
        return color + log_format + Fore.RESET

    for placeholder in placeholders:
        log_format = log_format.replace(placeholder, get_escape_code(placeholder.strip("{}")))
    return log_format.format(color=color, end=Fore.RESET)


class _ColorFormatter(logging.Formatter):
    """A logging formatter that adds colors to the output. This is used by :func:`set_log`."""

    def __init__(
        self,
        plain: bool,
        log_format: str,
        time_format: str,
        spacing: int,
        colors: dict[int, str] | str | None = None,
    ):
        super().__init__()
        self.plain = plain
        self.colors = _format_colors(colors)
        self.spacing = spacing
        self.log_format = str(log_format)
        self.time_format = str(time_format)

    def format(self, record: logging.LogRecord):
        """Adds colors to a log record and formats it.

        Parameters
        ----------
        record:
            The log record to format.
        """
        color = record.__dict__.get("color") or self.colors.get(record.levelno, DEFAULT_COLOR)
        label = record.__dict__.get("key", record.levelname)

        new_record = logging.makeLogRecord(record.__dict__)
        new_record.levelname = label + " " * max(self.spacing - len(label), 0)

        fully_colored = "{end}" not in self.log_format
        new_record.msg = highlight(str(record.msg), color, self.plain or fully_colored)

        log_format = _color_format(self.log_format, color, self.plain)
        return logging.Formatter(log_format, self.time_format).format(new_record)


def set_log(
    name: str = DEFAULT_LOG,
    log_level: int = logging.WARNING,
    *,
    console: bool = True,
    stream: TextIO | None = None,
    file: bool | str = False,
    file_mode: str = "w",
    log_format: str | LogFormat = LogFormat.default,
    time_format: str | TimeFormat = TimeFormat.default,
    level_spacing: int = 8,
    colors: dict[int, str] | str | None = None,
) -> logging.Logger:
    """Creates a logger. If this logger already exists, it will return the existing logger.

    Console output goes to ``sys.stderr`` by default, so that tables written to stdout stay clean.

    Parameters
    ----------
    name:
        The name of the logger.
    log_level:
        The log level. Defaults to ``logging.WARNING``.
    console:
        Whether to log to the console. Defaults to ``True``.
    stream:
        The stream for console logs. Defaults to ``sys.stderr``.
    file:
        Whether to log to a file. Defaults to ``False``.
        You can also pass a path to a log file.
    file_mode:
        The file mode for the log file. Defaults to ``w``.
    log_format:
        The log format. Defaults to :attr:`.LogFormat.default`.
    time_format:
        The time format. Defaults to :attr:`.TimeFormat.default`.
    level_spacing:
        The width the level name is padded to. Defaults to ``8``.
    colors:
        A dictionary of log levels and their corresponding colors. If only one color is given,
        all log levels will be colored with that color.

    Returns
    -------
    :class:`logging.Logger`

    Example
    -------
    .. code-block:: python

        import logging
        import fracbern

        fracbern.set_log(log_level=logging.DEBUG, colors={logging.DEBUG: "blue"})
    """
    logger = logging.getLogger(name)
    if logger.handlers:
        return logger
    logger.setLevel(log_level)

    handlers: list[logging.Handler] = []
    if isinstance(file, bool) and file:
        os.makedirs("logs", exist_ok=True)
        filename = name.split(".")[-1]
        handlers.append(
            logging.FileHandler(f"logs/{filename}.log", mode=file_mode, encoding="utf-8")
        )
    elif isinstance(file, str):
        handlers.append(logging.FileHandler(file, mode=file_mode, encoding="utf-8"))

    if console:
        handlers.append(logging.StreamHandler(stream or sys.stderr))

    for handler in handlers:
        plain = isinstance(handler, logging.FileHandler)
        handler.setFormatter(
            _ColorFormatter(plain, log_format, time_format, level_spacing, colors)
        )
        handler.setLevel(log_level)
        logger.addHandler(handler)

    return logger
