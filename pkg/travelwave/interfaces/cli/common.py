from pathlib import Path
from typing import Optional

import click

from travelwave.domain.entity.enums import Scenario
from travelwave.domain.entity.solution import PowerLawSolution
from travelwave.domain.schema.run_config import RunConfig
from travelwave.domain.service import closed_form
from travelwave.infrastructure.io.config_loader import load_run_config
from travelwave.utils.logger import WaveLoggerAdapter, get_run_logger


def run_options(func):
    """--config, --out and --seed shared by every command"""
    func = click.option("--seed", type=int, default=None, help="Overrides [run] seed.")(func)
    func = click.option("--out", "out", type=click.Path(path_type=Path), default=None,
                        help="Overrides [run] output_dir.")(func)
    func = click.option("--config", "config_path", type=click.Path(path_type=Path), required=True,
                        help="INI run configuration.")(func)
    return func


def load_run(config_path: Path, out: Optional[Path], seed: Optional[int], name: str) -> tuple[RunConfig, WaveLoggerAdapter]:
    """Load the config and tag the current click context with the run id"""
    config = load_run_config(config_path, output_dir=out, seed=seed)
    run_id = f"{Path(config_path).stem}-{config.seed}"
    click.get_current_context().meta["travelwave.run_id"] = run_id
    return config, get_run_logger(name, run_id, config.scenario.value)


def build_solution(config: RunConfig) -> PowerLawSolution:
    if config.scenario == Scenario.REL2BODY:
        return closed_form.relative_2body_solution(config.body, config.params, config.direction)
    if config.scenario == Scenario.TWOBODY:
        return closed_form.two_body_pair_solution(config.body, config.params, config.direction)
    return closed_form.ncme_collision_solution(config.body, config.direction)
