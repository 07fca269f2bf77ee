import click

from travelwave.config.config import settings
from travelwave.utils.logger import setup_logging

from .front import front_command
from .solve import solve_command
from .verify import verify_command


@click.group(help=settings.DESCRIPTION)
@click.version_option(settings.VERSION, prog_name=settings.PROJECT_NAME)
@click.option("--log-level", default=None, help="Overrides WAVE_LOG_LEVEL.")
def cli(log_level):
    setup_logging(log_level=log_level)


# Register all commands
cli.add_command(solve_command)
cli.add_command(verify_command)
cli.add_command(front_command)
