"""
Casimir-Polder Dynamics - Table Exporters
=========================================
CSV, JSON and gnuplot output for sweep tables.

CSV layout (gnuplot reads it unmodified with ``set datafile separator ","``):

    # meta: {...}
    # t,d,a,E_d,E_b,E_p,F_d,F_b,F_p,relF
    0.0,10.0,0.0,...
    # excluded a=1.0000000000000002 t=20.000000000000004 d=10.0

An excluded point takes the place of its row. When the grid keeps light-cone
rows (NaN in the time-dependent columns) the comment follows the row instead.

Numbers use the shortest representation that parses back to the same float.
Every file is written to a temporary sibling first and renamed into place.
"""

import json
import logging
import math
import os
import tempfile
from contextlib import suppress
from dataclasses import replace
from pathlib import Path
from typing import Any, Iterable

import pandas as pd
from rest_framework.renderers import JSONRenderer

from apps.core.exceptions import DomainError

from .scan import COLUMNS, ExcludedPoint, SweepMeta, SweepTable

logger = logging.getLogger(__name__)

META_PREFIX = "# meta: "
EXCLUDED_PREFIX = "# excluded "
HEADER = "# " + ",".join(COLUMNS)


def format_number(value: float) -> str:
    return repr(float(value))


# =============================================================================
# ATOMIC WRITES
# =============================================================================


def atomic_write(path: Path | str, payload: str) -> Path:
    """Write ``payload`` to ``path`` via a temporary file and os.replace."""
    path = Path(path)
    fd, tmp_name = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as handle:
            handle.write(payload)
            handle.flush()
            os.fsync(handle.fileno())
        os.replace(tmp_name, path)
    except BaseException:
        with suppress(FileNotFoundError):
            os.unlink(tmp_name)
        raise
    logger.debug("Wrote %s (%d bytes)", path, len(payload))
    return path


# =============================================================================
# CSV
# =============================================================================


def render_csv(table: SweepTable) -> str:
    meta = json.dumps(table.meta.to_dict(include_excluded=False), sort_keys=True)
    lines = [META_PREFIX + meta, HEADER]

    excluded = {point.index: point for point in table.meta.excluded}
    row_index = set(table.rows.index)
    for index in sorted(row_index | set(excluded)):
        if index in row_index:
            row = table.rows.loc[index]
            lines.append(",".join(format_number(row[column]) for column in COLUMNS))
        if index in excluded:
            point = excluded[index]
            lines.append(
                f"{EXCLUDED_PREFIX}a={format_number(point.a)} "
                f"t={format_number(point.t)} d={format_number(point.d)}"
            )
    return "\n".join(lines) + "\n"


def parse_csv(text: str) -> SweepTable:
    """Inverse of render_csv."""
    meta_data = None
    rows = {}
    excluded = []
    index = 0
    kept_rows = False
    for line in text.splitlines():
        if line.startswith(META_PREFIX):
            meta_data = json.loads(line[len(META_PREFIX):])
            kept_rows = not meta_data.get("grid", {}).get("exclude_lightcone", True)
        elif line == HEADER:
            continue
        elif line.startswith(EXCLUDED_PREFIX):
            fields = dict(item.split("=", 1) for item in line[len(EXCLUDED_PREFIX):].split())
            # kept light-cone rows carry their comment right after the NaN row
            owner = index - 1 if kept_rows else index
            excluded.append(
                ExcludedPoint(index=owner, t=float(fields["t"]), d=float(fields["d"]), a=float(fields["a"]))
            )
            if not kept_rows:
                index += 1
        elif line and not line.startswith("#"):
            values = [float(token) for token in line.split(",")]
            if len(values) != len(COLUMNS):
                raise DomainError(f"row {index} has {len(values)} fields, expected {len(COLUMNS)}")
            rows[index] = dict(zip(COLUMNS, values))
            index += 1
    if meta_data is None:
        raise DomainError("missing meta comment line")
    meta = replace(SweepMeta.from_dict(meta_data), excluded=tuple(excluded))
    frame = pd.DataFrame.from_dict(rows, orient="index", columns=list(COLUMNS))
    return SweepTable(rows=frame, meta=meta)


def write_csv(table: SweepTable, path: Path | str) -> Path:
    return atomic_write(path, render_csv(table))


def read_csv(path: Path | str) -> SweepTable:
    return parse_csv(Path(path).read_text(encoding="utf-8"))


# =============================================================================
# JSON
# =============================================================================


def _json_safe(value: float) -> float | None:
    return None if math.isnan(value) else float(value)


def render_json(table: SweepTable) -> str:
    rows = [
        {column: _json_safe(row[column]) for column in COLUMNS}
        for _, row in table.rows.iterrows()
    ]
    payload = {"meta": table.meta.to_dict(), "rows": rows}
    return render_json_payload(payload)


def render_json_payload(payload: dict[str, Any]) -> str:
    return JSONRenderer().render(payload, renderer_context={"indent": 2}).decode("utf-8") + "\n"


def write_json(table: SweepTable, path: Path | str) -> Path:
    return atomic_write(path, render_json(table))


# =============================================================================
# GNUPLOT
# =============================================================================


def render_gnuplot_script(figures: Iterable[tuple[str, str, list[tuple[str, str]]]]) -> str:
    """
    One output page per figure. ``figures`` yields (csv file, title,
    [(column, label), ...]).
    """
    lines = [
        "# Casimir-Polder force after a sudden change of the atomic frequency",
        'set datafile separator ","',
        "set terminal pngcairo size 900,600",
        "set xlabel 't [d/c]'",
        "set ylabel 'force [arb. units]'",
        "",
    ]
    for csv_name, title, series in figures:
        stem = Path(csv_name).stem
        lines.append(f"set output '{stem}.png'")
        lines.append(f"set title '{title}'")
        plots = [
            f"'{csv_name}' using 1:{COLUMNS.index(column) + 1} with lines title '{label}'"
            for column, label in series
        ]
        lines.append("plot " + ", \\\n     ".join(plots))
        lines.append("")
    return "\n".join(lines)
