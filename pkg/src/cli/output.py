"""
Table and JSON emission for command output.

Every number is printed with 12 significant digits and negative zero is
normalised, so identical invocations give byte-identical output.
"""

import csv
import io
import json
import math
from collections.abc import Sequence
from pathlib import Path
from typing import Any

import click

from src.models.base import OutputFormat

Cell = float | str


def format_number(x: float) -> str:
    """``.12g`` with ``-0`` folded to ``0``."""
    if not math.isfinite(x):
        return str(x)
    text = f"{x:.12g}"
    # Tiny negatives can round to "-0"
    return "0" if text in ("-0", "-0.0") else text


def round_number(x: float) -> float | None:
    """Float carrying exactly the digits of ``format_number``; None for inf/nan."""
    if not math.isfinite(x):
        return None
    return float(format_number(x)) + 0.0


def _cell(value: Cell) -> str:
    return value if isinstance(value, str) else format_number(value)


def render_csv(columns: Sequence[str], rows: Sequence[Sequence[Cell]]) -> str:
    """CSV text with LF line endings."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_cell(value) for value in row])
    return buffer.getvalue()


def _jsonable(value: Any) -> Any:
    if isinstance(value, float):
        return round_number(value)
    if isinstance(value, dict):
        return {key: _jsonable(item) for key, item in value.items()}
    if isinstance(value, list | tuple):
        return [_jsonable(item) for item in value]
    return value


def render_json(payload: Any) -> str:
    return json.dumps(_jsonable(payload), indent=2, ensure_ascii=False) + "\n"


def render(
    fmt: OutputFormat,
    columns: Sequence[str],
    rows: Sequence[Sequence[Cell]],
    payload: Any = None,
) -> str:
    """
    Render a result as CSV, or as JSON.

    JSON uses ``payload`` when given, otherwise one object per row.
    """
    if fmt == OutputFormat.CSV:
        return render_csv(columns, rows)
    if payload is None:
        payload = [dict(zip(columns, row, strict=True)) for row in rows]
    return render_json(payload)


def emit(text: str, output: Path | None) -> None:
    """Write UTF-8 text to ``output``, or to stdout when it is None."""
    if output is None:
        click.echo(text, nl=False)
        return
    output.parent.mkdir(parents=True, exist_ok=True)
    output.write_text(text, encoding="utf-8", newline="\n")
