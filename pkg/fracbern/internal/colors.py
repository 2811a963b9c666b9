from __future__ import annotations

import logging
import re

from colorama import Fore

__all__ = ("DEFAULT_COLOR", "DEFAULT_LOG_COLORS", "get_escape_code", "remove_escapes", "highlight")

DEFAULT_COLOR = Fore.MAGENTA

DEFAULT_LOG_COLORS: dict[int, str] = {
    logging.DEBUG: Fore.GREEN,
    logging.INFO: Fore.CYAN,
    logging.WARNING: Fore.YELLOW,
    logging.ERROR: Fore.RED,
    logging.CRITICAL: Fore.RED,
}

_ESCAPE = re.compile(r"\x1b\[[0-9;]*m")


def get_escape_code(color_string: str | None) -> str:
    """Converts a color string like ``"red"`` to an ansi escape code using colorama.

    If the string already is an escape code, it will be returned.

    Raises
    ------
    ValueError
        The string is not the name of a colorama color.
    """
    if not isinstance(color_string, str):
        return DEFAULT_COLOR

    if color_string.startswith("\x1b["):
        return color_string

    try:
        return getattr(Fore, color_string.upper())
    except AttributeError:
        raise ValueError(
            f"'{color_string}' is not a valid color string. Use either colorama or a name like 'red'."
        )


def remove_escapes(string: str) -> str:
    """Removes ansi escape codes from a string."""
    return _ESCAPE.sub("", string)


def highlight(string: str, color: str | None = None, plain: bool = False) -> str:
    """Replaces ``**text**`` markup with the given color.

    If ``plain`` is ``True`` (log files, fully colored lines), the markup is removed instead.

    Example
    -------
    >>> highlight("constant **1.2732**", Fore.RED)
    """
    color = get_escape_code(color)

    if plain:
        return remove_escapes(string.replace("**", ""))

    while "**" in string:
        string = string.replace("**", color, 1)
        string = string.replace("**", Fore.RESET, 1)
    return string
