from pathlib import Path
from typing import Optional

import click

from travelwave.config.config import get_settings
from travelwave.core.exceptions import RejectedInputError, VerificationFailedError
from travelwave.domain.entity.enums import VerifyCheck
from travelwave.domain.schema.solution_schema import SolutionDocument
from travelwave.infrastructure.io.writers import read_json, write_json, write_model, write_sweep, write_trajectory
from travelwave.infrastructure.verification.checks import CheckOutcome, build_checks
from travelwave.infrastructure.verification.manager import VerificationManager
from travelwave.interfaces.cli.common import build_solution, load_run, run_options
from travelwave.interfaces.cli.error_handler import handle_errors

DEFAULT_CHECKS = (VerifyCheck.ODE, VerifyCheck.PDE, VerifyCheck.RK4)
SWEEP_FILES = {VerifyCheck.PDE: "sweep_pde.csv", VerifyCheck.LINEAR_WAVE: "sweep_linear_wave.csv"}
TRAJECTORY_FILE = "trajectory.csv"


def write_outcome(directory: Path, outcome: CheckOutcome) -> list[Path]:
    path = directory / outcome.report_name
    if outcome.skipped is not None:
        return [write_json(path, {"check": outcome.check.value, "status": "inapplicable",
                                  "reason": outcome.skipped})]
    written = [write_model(path, outcome.report)]
    if outcome.check in SWEEP_FILES:
        written.append(write_sweep(directory / SWEEP_FILES[outcome.check], outcome.report.sweep))
    if outcome.trajectory is not None:
        written.append(write_trajectory(directory / TRAJECTORY_FILE, outcome.trajectory))
    return written


def describe(outcome: CheckOutcome) -> str:
    if outcome.skipped is not None:
        return f"{outcome.check.value}: inapplicable ({outcome.skipped})"
    status = "pass" if outcome.passed else "FAIL"
    report = outcome.report
    if outcome.check == VerifyCheck.RK4:
        detail = (f"deviation {report.max_deviation!r}, |E| {report.max_abs_energy!r}, "
                  f"|L| {report.max_angular_momentum!r}")
    elif outcome.check == VerifyCheck.ODE:
        detail = f"max_rel {report.max_rel_residual!r}"
    else:
        detail = f"max_abs {report.max_abs_residual!r}, order {report.estimated_order!r}"
    line = f"{outcome.check.value}: {status} ({detail})"
    if outcome.failures:
        line += " - " + "; ".join(outcome.failures)
    return line


@click.command("verify")
@run_options
@click.option("--solution", "solution_path", type=click.Path(path_type=Path), default=None,
              help="Verify a stored solution.json instead of rebuilding it.")
@handle_errors("verify")
def verify_command(config_path: Path, out: Optional[Path], seed: Optional[int], solution_path: Optional[Path]):
    """Run the configured residual and integrator checks."""
    config, logger = load_run(config_path, out, seed, __name__)
    settings = get_settings()
    checks = config.verify or DEFAULT_CHECKS
    logger.log_operation("verify", {"checks": [c.value for c in checks]})

    if solution_path is not None:
        if not Path(solution_path).is_file():
            raise RejectedInputError(f"solution file {solution_path} not found")
        sol = read_json(solution_path, SolutionDocument).to_solution()
    else:
        sol = build_solution(config)

    manager = VerificationManager(num_threads=settings.NUM_THREADS, run_logger=logger)
    manager.register_all(build_checks(config, sol, settings.VERIFICATION))
    outcomes = manager.run(checks)

    failing = []
    for outcome in outcomes:
        write_outcome(config.output_dir, outcome)
        click.echo(describe(outcome))
        if not outcome.passed:
            failing.append(outcome.report_name)
    if failing:
        raise VerificationFailedError(failing, details={"output_dir": str(config.output_dir)})
    click.echo(f"all {len(outcomes)} check(s) passed")
