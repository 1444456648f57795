# Experiments/reporting.py
from __future__ import annotations

import csv
import io
import os
from collections import defaultdict
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Union

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from Core import constants  # noqa: E402
from Core.config import get_logger  # noqa: E402
from Core.errors import ConfigurationError, StorageError  # noqa: E402
from Core.files import atomic_write_text, read_text  # noqa: E402
from Experiments.harness import ExperimentRecord  # noqa: E402

logger = get_logger(__name__)

_INT_COLUMNS = {"n", "d", "k", "trials", "successes"}
_TEXT_COLUMNS = {"mode"}

Row = Dict[str, Union[int, float, str, None]]


def _cell(value: object) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return str(int(value))
    if isinstance(value, float):
        return f"{value:.6g}"
    return str(value)


def render_csv(records: Iterable[ExperimentRecord]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(constants.CSV_COLUMNS)
    for record in records:
        row = record.csv_row()
        writer.writerow([_cell(row[col]) for col in constants.CSV_COLUMNS])
    return buf.getvalue()


def emit_csv(records: Iterable[ExperimentRecord], path: Union[str, os.PathLike]) -> Path:
    """Header plus one row per record; 6 significant digits, UTF-8, LF endings."""
    records = list(records)
    target = atomic_write_text(path, render_csv(records))
    logger.info({"event": "csv_written", "path": str(target), "rows": len(records)})
    return target


def _parse(column: str, raw: str) -> Union[int, float, str, None]:
    if column in _TEXT_COLUMNS:
        return raw
    if raw == "":
        return None
    if column in _INT_COLUMNS:
        return int(raw)
    return float(raw)


def read_csv(path: Union[str, os.PathLike]) -> List[Row]:
    """Parse an emitted CSV back into typed row dicts."""
    reader = csv.DictReader(io.StringIO(read_text(path)))
    missing = set(constants.CSV_COLUMNS) - set(reader.fieldnames or ())
    if missing:
        raise StorageError(f"{path}: not a sweep table, missing columns {sorted(missing)}")
    return [{col: _parse(col, row[col]) for col in constants.CSV_COLUMNS} for row in reader]


def check_heatmap_axes(x: str, y: str) -> None:
    for axis in (x, y):
        if axis not in constants.CSV_COLUMNS or axis in _TEXT_COLUMNS:
            raise ConfigurationError(f"heatmap axis must be a numeric sweep column, got {axis!r}")


def write_heatmap(
    records: Iterable[Union[ExperimentRecord, Row]],
    path: Union[str, os.PathLike],
    x: str = "d",
    y: str = "p11",
    title: Optional[str] = None,
) -> Path:
    """SVG phase diagram of success_rate over two CSV columns, averaged over the rest."""
    check_heatmap_axes(x, y)
    rows = [r.csv_row() if isinstance(r, ExperimentRecord) else r for r in records]
    if not rows:
        raise ConfigurationError("no records to plot")

    buckets: Dict[tuple, List[float]] = defaultdict(list)
    for row in rows:
        buckets[(float(row[x]), float(row[y]))].append(float(row["success_rate"]))
    xs = sorted({key[0] for key in buckets})
    ys = sorted({key[1] for key in buckets})
    grid = np.full((len(ys), len(xs)), np.nan)
    for (xv, yv), rates in buckets.items():
        grid[ys.index(yv), xs.index(xv)] = float(np.mean(rates))

    plt.rcParams["svg.hashsalt"] = "gmatch"
    fig, ax = plt.subplots(figsize=(6, 4.5))
    mesh = ax.imshow(grid, origin="lower", aspect="auto", cmap="viridis", vmin=0.0, vmax=1.0)
    ax.set_xticks(range(len(xs)), [f"{v:.3g}" for v in xs])
    ax.set_yticks(range(len(ys)), [f"{v:.3g}" for v in ys])
    ax.set_xlabel(x)
    ax.set_ylabel(y)
    ax.set_title(title or "exact recovery rate")
    fig.colorbar(mesh, ax=ax, label="success_rate")
    fig.tight_layout()

    buf = io.StringIO()
    fig.savefig(buf, format="svg", metadata={"Date": None})
    plt.close(fig)
    return atomic_write_text(path, buf.getvalue())
