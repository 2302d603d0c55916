"""
Emitters for the csv, json and svg output formats.

Floats are written in their shortest round-trip form so that identical runs
produce byte-identical files. Files are written to a temporary sibling and
moved into place, so a failed run never leaves a partial file behind.
"""

import csv
import io
import json
import logging
import math
import os
import sys
import tempfile
from pathlib import Path
from typing import Any, Iterable, Mapping, Optional, Sequence

import matplotlib
from matplotlib.figure import Figure

from magsteklov.models import SpectrumTable

logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1
CSV_COLUMNS = ("t", "model", "k", "p1", "p2", "sign", "value", "multiplicity")

Row = dict[str, Any]


def format_float(value: float) -> str:
    """
    Shortest decimal that reads back to the same float.

    >>> format_float(0.1), format_float(2.0)
    ('0.1', '2.0')
    """
    return repr(float(value))


def spectrum_rows(tables: Iterable[SpectrumTable]) -> list[Row]:
    """One row per mode and table, with the csv columns as keys."""
    rows = []
    for table in tables:
        for entry in table.entries:
            label = entry.label
            rows.append({
                "t": table.t,
                "model": table.model.value,
                "k": label.k,
                "p1": label.p1,
                "p2": label.p2,
                "sign": label.sign.value if label.sign else None,
                "value": entry.value,
                "multiplicity": entry.multiplicity,
            })
    return rows


def _cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return format_float(value)
    return str(value)


def render_csv(rows: Sequence[Row], columns: Sequence[str] = CSV_COLUMNS) -> str:
    """UTF-8 comma-separated text with a header row, unused cells left empty."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_cell(row.get(column)) for column in columns])
    return buffer.getvalue()


def jsonable(value: Any) -> Any:
    """Replaces non-finite floats by None, recursively."""
    if isinstance(value, float) and not math.isfinite(value):
        return None
    if isinstance(value, Mapping):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    return value


def render_json(command: str, config: Mapping[str, Any], body_key: str, body: Any) -> str:
    """The versioned top-level object {schema_version, command, config, rows|report}."""
    payload = {"schema_version": SCHEMA_VERSION, "command": command, "config": config, body_key: body}
    return json.dumps(jsonable(payload), indent=2, allow_nan=False) + "\n"


def render_svg(
    series: Mapping[str, Sequence[tuple[float, float]]], title: str, x_label: str = "t", y_label: str = "eigenvalue"
) -> str:
    """
    A static line plot with one polyline per series label.

    The hash salt is fixed and the date metadata dropped so the text is stable.
    """
    with matplotlib.rc_context({"svg.hashsalt": "magsteklov", "svg.fonttype": "none"}):
        figure = Figure(figsize=(8, 6))
        axes = figure.add_subplot()
        for label, points in series.items():
            if not points:
                continue
            xs, ys = zip(*points)
            axes.plot(xs, ys, linewidth=1.0, label=label)
        axes.set_xlabel(x_label)
        axes.set_ylabel(y_label)
        axes.set_title(title)
        if 0 < len(series) <= 12:
            axes.legend(fontsize="small")
        buffer = io.StringIO()
        figure.savefig(buffer, format="svg", metadata={"Date": None})
    return buffer.getvalue()


def spectrum_series(tables: Iterable[SpectrumTable]) -> dict[str, list[tuple[float, float]]]:
    """Groups table entries into (t, value) polylines keyed by mode label."""
    series: dict[str, list[tuple[float, float]]] = {}
    for table in tables:
        for entry in table.entries:
            series.setdefault(str(entry.label), []).append((table.t, entry.value))
    return series


def emit(text: str, path: Optional[Path] = None) -> None:
    """
    Writes text to stdout, or atomically to path.

    The target only appears once the whole text is on disk; the temporary
    file is removed if anything fails on the way.
    """
    if path is None:
        sys.stdout.write(text)
        return
    target = Path(path)
    handle = tempfile.NamedTemporaryFile(
        "w", encoding="utf-8", newline="", dir=target.parent, prefix=f".{target.name}.", delete=False
    )
    try:
        with handle:
            handle.write(text)
        os.replace(handle.name, target)
    except BaseException:
        Path(handle.name).unlink(missing_ok=True)
        raise
    logger.info("Wrote %d characters to %s", len(text), target)
