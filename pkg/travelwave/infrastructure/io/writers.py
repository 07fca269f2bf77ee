"""
Result files. JSON carries floats in shortest round-trip form; CSV uses
%.17g so that every written value reads back to the same double.
"""

import json
from pathlib import Path
from typing import Any, Iterable, Optional, Sequence

import numpy as np
from pydantic import BaseModel

from travelwave.domain.entity.front import FrontSurface
from travelwave.domain.entity.phase import Trajectory
from travelwave.domain.entity.report import SweepRow
from travelwave.utils.logger import get_logger

logger = get_logger(__name__)

CSV_FORMAT = "%.17g"


def ensure_dir(directory: Path) -> Path:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    return directory


def write_model(path: Path, model: BaseModel) -> Path:
    path = Path(path)
    ensure_dir(path.parent)
    path.write_text(model.model_dump_json(indent=2) + "\n", encoding="utf-8")
    logger.debug(f"Wrote {path}")
    return path


def write_json(path: Path, payload: Any) -> Path:
    path = Path(path)
    ensure_dir(path.parent)
    path.write_text(json.dumps(payload, indent=2, allow_nan=False) + "\n", encoding="utf-8")
    logger.debug(f"Wrote {path}")
    return path


def write_csv(path: Path, rows: np.ndarray, columns: Sequence[str]) -> Path:
    path = Path(path)
    ensure_dir(path.parent)
    np.savetxt(path, np.atleast_2d(rows), fmt=CSV_FORMAT, delimiter=",",
               header=",".join(columns), comments="")
    logger.debug(f"Wrote {len(rows)} row(s) to {path}")
    return path


def write_sweep(path: Path, rows: Iterable[SweepRow]) -> Path:
    """h, max_abs, max_rel, order per spacing; the coarsest row has no order (nan)"""
    table = np.array([
        [row.h, row.max_abs, row.max_rel, np.nan if row.order is None else row.order] for row in rows
    ])
    return write_csv(path, table, ["h", "max_abs", "max_rel", "order"])


def write_trajectory(path: Path, trajectory: Trajectory) -> Path:
    return write_csv(path, trajectory.rows(), trajectory.columns())


def front_stem(chart: str, index: int) -> str:
    return f"front_{chart}_{index:04d}"


def write_front(directory: Path, index: int, surface: FrontSurface) -> tuple[Path, Path]:
    """JSON header plus CSV vertex list (x, y, z) for one time step"""
    stem = front_stem(surface.chart.kind.value, index)
    header = write_json(Path(directory) / f"{stem}.json", surface.header())
    vertices = write_csv(Path(directory) / f"{stem}.csv", surface.vertices(), ["x", "y", "z"])
    return header, vertices


def write_front_series(directory: Path, surfaces: Sequence[FrontSurface]) -> list[Path]:
    written = []
    for index, surface in enumerate(surfaces):
        written.extend(write_front(directory, index, surface))
    return written


def read_json(path: Path, model: Optional[type[BaseModel]] = None):
    text = Path(path).read_text(encoding="utf-8")
    if model is None:
        return json.loads(text)
    return model.model_validate_json(text)
