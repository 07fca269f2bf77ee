from pathlib import Path
from typing import Optional

import click

from travelwave.domain.entity.enums import Scenario
from travelwave.domain.entity.solution import PowerLawSolution
from travelwave.domain.schema.run_config import RunConfig
from travelwave.domain.schema.solution_schema import SolutionDocument
from travelwave.infrastructure.io.writers import write_model
from travelwave.interfaces.cli.common import build_solution, load_run, run_options
from travelwave.interfaces.cli.error_handler import handle_errors

SOLUTION_FILE = "solution.json"


def _verdict(flag: bool) -> str:
    return "yes" if flag else "no"


def summary_lines(config: RunConfig, sol: PowerLawSolution) -> list[str]:
    lines = [
        f"scenario: {config.scenario.value}",
        f"provenance: {sol.provenance.value}",
        f"exponent: {sol.exponent}",
    ]
    for j, (block, amplitude) in enumerate(zip(sol.blocks, sol.amplitudes()), start=1):
        lines.append(f"block {j}: alpha = {block.alpha!r}, |S| = {amplitude!r}")
    if sol.thetas is not None:
        thetas = sol.thetas
        lines += [
            f"theta1 = {thetas.theta1!r}, theta2 = {thetas.theta2!r}",
            f"theta1 + theta2 = {thetas.total!r} (> 0: {_verdict(thetas.positive)})",
            f"same sign: {_verdict(thetas.same_sign)}",
        ]
        if config.scenario == Scenario.TWOBODY:
            ratio, bound = thetas.mass_ratio_condition(config.body, config.params)
            lines.append(f"m2/m1 = {ratio!r} > {bound!r}: {_verdict(ratio > bound)}")
    lines.append("admissible: yes")
    return lines


@click.command("solve")
@run_options
@handle_errors("solve")
def solve_command(config_path: Path, out: Optional[Path], seed: Optional[int]):
    """Construct the closed-form solution of the configured scenario."""
    config, logger = load_run(config_path, out, seed, __name__)
    logger.log_operation("solve", {"config": str(config_path)})

    sol = build_solution(config)
    path = write_model(config.output_dir / SOLUTION_FILE, SolutionDocument.from_solution(sol))
    for line in summary_lines(config, sol):
        click.echo(line)
    click.echo(f"wrote {path}")
