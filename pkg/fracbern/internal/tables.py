"""Box-drawn tables for result summaries in the logs."""

from __future__ import annotations

from collections.abc import Mapping, Sequence

from colorama import Fore

from .colors import get_escape_code

__all__ = ("Style", "Bold", "format_value", "tables", "summary_table", "record_table")


class Style:
    TL = "╭"  # top left
    TR = "╮"  # top right
    BL = "╰"  # bottom left
    BR = "╯"  # bottom right
    H = "─"  # horizontal
    V = "│"  # vertical
    M = "┼"  # middle
    L = "├"  # left
    R = "┤"  # right
    T = "┬"  # top
    B = "┴"  # bottom


class Bold(Style):
    TL, TR, BL, BR, H, V, M, L, R, T, B = "╔", "╗", "╚", "╝", "═", "║", "╬", "╠", "╣", "╦", "╩"


def format_value(value: object, digits: int = 10) -> str:
    """Format a cell. Floats are shown with ``digits`` significant digits."""
    if isinstance(value, bool) or value is None:
        return str(value)
    if isinstance(value, float):
        return f"{value:.{digits}g}"
    return str(value)


def tables(rows: list[list[str]], color_rows: list[list[str]] | None = None, s: Style = Style()):
    """Create a table from a list of rows.

    Parameters
    ----------
    rows:
        The rows of the table. This is used to calculate the length of each column.
    color_rows:
        The rows of the table with color. This is used as the actual content of the table.
        If this is None, the content of the table will be taken from ``rows``.
    s:
        The style of the table.
    """
    if color_rows is None:
        color_rows = rows

    length = [max([len(value) for value in column]) for column in zip(*rows)]
    table = ""
    for index, (row, color_row) in enumerate(zip(rows, color_rows)):
        table += s.V

        middle_row = ""
        for max_length, content, color_content in zip(length, row, color_row):
            table += f" {color_content} " + " " * (max_length - len(content)) + s.V
            middle_row += s.H * (max_length + 2) + s.M

        middle_row = middle_row[:-1]
        if index == 0:
            table = s.TL + middle_row.replace(s.M, s.T) + s.TR + "\n" + table

        if index != len(rows) - 1:
            table += "\n" + s.L + middle_row + s.R + "\n"
        else:
            table += "\n" + s.BL + middle_row.replace(s.M, s.B) + s.BR

    return table


def summary_table(
    info: Mapping[str, object], *, color: str | None = "cyan", bold: bool = False
) -> str:
    """A two-column key/value table, values colored.

    Example
    -------
    >>> print(summary_table({"constant": 1.2732395447, "argmin": 0.5}))
    """
    rows = [[key, format_value(value)] for key, value in info.items()]
    escape = get_escape_code(color)
    color_rows = [[key, escape + value + Fore.RESET] for key, value in rows]
    return tables(rows, color_rows, Bold() if bold else Style())


def record_table(header: Sequence[str], records: Sequence[Sequence[object]]) -> str:
    """A table with a header row followed by one row per record."""
    rows = [list(header)] + [[format_value(v) for v in record] for record in records]
    return tables(rows)
