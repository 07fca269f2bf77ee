import functools
import json
import sys
import traceback
from datetime import datetime, timezone
from typing import Optional

import click
from pydantic import ValidationError

from travelwave.core.exceptions import (
    EXIT_INADMISSIBLE,
    EXIT_UNEXPECTED,
    InadmissibleError,
    RejectedInputError,
    SingularLatticeError,
    SolutionDomainError,
    UnsupportedChartError,
    VerificationFailedError,
    WaveError,
)
from travelwave.utils.logger import get_logger

logger = get_logger(__name__)


class CliErrorHandler:
    """
    Maps exceptions raised by a command to its exit code, logging a
    structured context for each failure family
    """

    def handle(self, command: str, exception: Exception, run_id: Optional[str] = None) -> int:
        context = {
            "run_id": run_id or "unknown",
            "timestamp": datetime.now(timezone.utc).isoformat(),
            "command": command,
            "error_type": type(exception).__name__,
            "error_message": str(exception),
        }

        if isinstance(exception, ValidationError):
            return self._handle_validation_error(exception, context)

        elif isinstance(exception, VerificationFailedError):
            return self._handle_verification_failure(exception, context)

        elif isinstance(exception, (InadmissibleError, RejectedInputError, SolutionDomainError)):
            return self._handle_inadmissible(exception, context)

        elif isinstance(exception, SingularLatticeError):
            return self._handle_wave_error("Singular Lattice", exception, context)

        elif isinstance(exception, UnsupportedChartError):
            return self._handle_wave_error("Unsupported Chart", exception, context)

        elif isinstance(exception, WaveError):
            return self._handle_wave_error("Computation Error", exception, context)

        else:
            return self._handle_unexpected_error(exception, context)

    def _handle_validation_error(self, exception: ValidationError, context: dict) -> int:
        """Invalid run configuration values"""
        context.update({"validation_errors": exception.errors(), "exit_code": EXIT_INADMISSIBLE})
        logger.warning(f"Validation Error: {json.dumps(context, default=str)}")
        messages = "; ".join(
            f"{'.'.join(str(loc) for loc in err['loc'])}: {err['msg']}" for err in exception.errors()
        )
        click.echo(f"error: invalid configuration: {messages}", err=True)
        return EXIT_INADMISSIBLE

    def _handle_verification_failure(self, exception: VerificationFailedError, context: dict) -> int:
        context.update({"failing": exception.failing, "exit_code": exception.exit_code})
        logger.warning(f"Verification Failed: {json.dumps(context, default=str)}")
        click.echo(f"error: {exception.message}", err=True)
        return exception.exit_code

    def _handle_inadmissible(self, exception: WaveError, context: dict) -> int:
        """Parameters that admit no solution, or rejected input"""
        context.update({"error_code": exception.error_code, "details": exception.details,
                        "exit_code": exception.exit_code})
        logger.warning(f"Inadmissible Input: {json.dumps(context, default=str)}")
        click.echo(f"error: {exception}", err=True)
        return exception.exit_code

    def _handle_wave_error(self, label: str, exception: WaveError, context: dict) -> int:
        context.update({"error_code": exception.error_code, "details": exception.details,
                        "exit_code": exception.exit_code})
        logger.error(f"{label}: {json.dumps(context, default=str)}")
        click.echo(f"error: {exception}", err=True)
        return exception.exit_code

    def _handle_unexpected_error(self, exception: Exception, context: dict) -> int:
        tb = traceback.format_exception(type(exception), exception, exception.__traceback__)
        context.update({
            "exit_code": EXIT_UNEXPECTED,
            "traceback": "".join(tb),
            "python_version": sys.version,
        })
        logger.critical(f"Unexpected Error: {json.dumps(context, default=str)}")
        click.echo(f"error: unexpected {type(exception).__name__}: {exception}", err=True)
        return EXIT_UNEXPECTED


error_handler = CliErrorHandler()


def handle_errors(command: str):
    """Run a click callback, turning raised exceptions into the matching exit code"""

    def decorator(func):
        @functools.wraps(func)
        def wrapper(*args, **kwargs):
            try:
                return func(*args, **kwargs)
            except (click.exceptions.Exit, click.ClickException, click.Abort):
                raise
            except Exception as e:
                ctx = click.get_current_context()
                run_id = ctx.meta.get("travelwave.run_id")
                ctx.exit(error_handler.handle(command, e, run_id))

        return wrapper

    return decorator
