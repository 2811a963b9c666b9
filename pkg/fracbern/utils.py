"""Writers for the tables the command line produces."""

from __future__ import annotations

import csv
import io
import json
from collections.abc import Iterable, Mapping, Sequence
from typing import Any

__all__ = (
    "format_float",
    "csv_text",
    "json_text",
)


def format_float(value: float) -> str:
    """Format a float with 17 significant digits, enough to read back the same 64-bit value."""
    return format(value, ".17g")


def _cell(value: Any) -> str:
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, float):
        return format_float(value)
    return str(value)


def csv_text(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    """Create CSV text from a header and rows.

    Floats are written with :func:`format_float` and ``.`` as the decimal separator.

    Parameters
    ----------
    header:
        The column names, e.g. ``("a", "value")``.
    rows:
        The rows, in the order they should appear.

    Returns
    -------
    :class:`str`
    """
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_cell(value) for value in row])
    return buffer.getvalue()


def json_text(meta: Mapping[str, Any], data: Any, *, indent: int = 2, **kwargs) -> str:
    """Create a JSON document ``{"meta": meta, "data": data}``.

    Parameters
    ----------
    meta:
        The resolved settings of the run.
    data:
        The result, made of JSON types.
    indent:
        The indent to use for the JSON document.
    **kwargs:
        Additional keyword arguments for :py:func:`json.dumps`.
    """
    return json.dumps({"meta": dict(meta), "data": data}, indent=indent, **kwargs) + "\n"
