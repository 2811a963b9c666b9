from enum import Enum

__all__ = ("LogFormat", "TimeFormat", "OutputFormat", "Problem")


class LogFormat(str, Enum):
    """Presets for logging formats that can be used in :func:`.set_log`.

    ``{color}`` and ``{end}`` are used to add the default color of the current log level.
    Specific colors like ``{red}`` and ``{green}`` can also be used.

    If no colors are used, the whole log message will be colored.
    """

    full_color = "[%(levelname)s] %(message)s"
    color_level = "[{color}%(levelname)s{end}] %(message)s"
    default = "[{color}%(levelname)s{end}] %(message)s"

    def __str__(self):
        return self.value


class TimeFormat(str, Enum):
    """Presets for the time format that is used in :func:`.set_log`."""

    time = "%H:%M:%S"
    default = "%H:%M:%S"

    def __str__(self):
        return self.value


class OutputFormat(str, Enum):
    """Table formats the command line can write to stdout."""

    csv = "csv"
    json = "json"

    default = csv

    def __str__(self):
        return self.value


class Problem(str, Enum):
    """The two free boundary problems on an interval.

    - ``one-free``: one free point, ``K = (a, x0 + r)``.
    - ``two-free``: two free points placed symmetrically, ``K = (x0 - a r, x0 + a r)``.
    """

    one_free = "one-free"
    two_free = "two-free"

    def __str__(self):
        return self.value
