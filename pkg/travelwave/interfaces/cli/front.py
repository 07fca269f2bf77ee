from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Optional

import click
import numpy as np

from travelwave.config.config import get_settings
from travelwave.core.exceptions import RejectedInputError
from travelwave.domain.entity.enums import ChartKind
from travelwave.domain.entity.front import CoordinateChart, FrontSurface
from travelwave.domain.schema.run_config import RunConfig
from travelwave.domain.service.front_geometry import front_surface_chart
from travelwave.infrastructure.io.writers import write_front_series
from travelwave.interfaces.cli.common import load_run, run_options
from travelwave.interfaces.cli.error_handler import handle_errors


def random_directions(count: int, seed: int) -> np.ndarray:
    """Unit vectors drawn from an isotropic normal sample"""
    rng = np.random.default_rng(seed)
    sample = rng.normal(size=(count, 3))
    return sample / np.linalg.norm(sample, axis=1, keepdims=True)


def build_fronts(config: RunConfig, num_threads: int) -> list[FrontSurface]:
    request = config.front
    if request is None:
        raise RejectedInputError("the front command needs a [front] section")
    params = config.wave or config.params
    chart = CoordinateChart(kind=request.chart)
    directions = None
    if request.chart == ChartKind.CARTESIAN:
        directions = random_directions(request.directions, config.seed)

    def surface_at(t: float) -> FrontSurface:
        return front_surface_chart(chart, params.mu, t, params.v, params.c, request.resolution, directions)

    with ThreadPoolExecutor(max_workers=min(num_threads, len(request.times))) as pool:
        return list(pool.map(surface_at, request.times))


@click.command("front")
@run_options
@handle_errors("front")
def front_command(config_path: Path, out: Optional[Path], seed: Optional[int]):
    """Export the wave-front locus for each requested time."""
    config, logger = load_run(config_path, out, seed, __name__)
    logger.log_operation("front", {"chart": config.front.chart.value if config.front else None})

    surfaces = build_fronts(config, get_settings().NUM_THREADS)
    write_front_series(config.output_dir, surfaces)
    for index, surface in enumerate(surfaces):
        count = len(surface.planes) if surface.planes else surface.vertices().shape[0]
        unit = "plane(s)" if surface.planes else "vertices"
        click.echo(f"[{index:04d}] t = {surface.time!r}: {surface.shape.value}, radius {surface.radius!r}, "
                   f"{count} {unit}")
