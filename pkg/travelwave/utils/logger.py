"""
Logging for travelwave.

Everything goes to stderr (or a rotating file); stdout is reserved for the
command summaries so result trees and printed output stay reproducible.
"""

import functools
import json
import logging
import logging.handlers
import sys
import time
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Optional

from travelwave.config.config import get_settings

# record attributes copied into JSON entries when present
CONTEXT_FIELDS = ("run_id", "scenario", "check")
TEXT_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"


class JSONFormatter(logging.Formatter):
    """One JSON object per record."""

    def format(self, record: logging.LogRecord) -> str:
        entry: dict[str, Any] = {
            "timestamp": datetime.fromtimestamp(record.created, timezone.utc).isoformat(),
            "level": record.levelname,
            "logger": record.name,
            "message": record.getMessage(),
            "where": f"{record.module}.{record.funcName}:{record.lineno}",
        }
        for field in CONTEXT_FIELDS:
            if hasattr(record, field):
                entry[field] = getattr(record, field)
        if hasattr(record, "extra_data"):
            entry["extra"] = record.extra_data
        if record.exc_info:
            entry["exception"] = self.formatException(record.exc_info)
        return json.dumps(entry, default=str)


class WaveLoggerAdapter(logging.LoggerAdapter):
    """Adapter stamping every record with the run context (run id, scenario)."""

    def process(self, msg, kwargs):
        kwargs["extra"] = {**self.extra, **kwargs.get("extra", {})}
        return msg, kwargs

    def _structured(self, level: int, msg: str, data: dict, **kwargs) -> None:
        self.log(level, msg, extra={"extra_data": data}, **kwargs)

    def log_operation(self, operation: str, details: Optional[dict] = None, level: int = logging.INFO):
        self._structured(level, f"Operation: {operation}", {"operation": operation, "details": details or {}})

    def log_error(self, operation: str, error: Exception, details: Optional[dict] = None):
        data = {
            "operation": operation,
            "error_type": type(error).__name__,
            "error_message": str(error),
            "details": details or {},
        }
        self._structured(logging.ERROR, f"Error in operation: {operation}", data, exc_info=error)

    def log_performance(self, operation: str, duration: float, details: Optional[dict] = None):
        data = {"operation": operation, "duration_seconds": duration, "details": details or {}}
        self._structured(logging.INFO, f"Performance: {operation} completed in {duration:.3f}s", data)


def _handlers(log_file: Optional[str], enable_console: bool, max_file_size: int,
              backup_count: int) -> list[logging.Handler]:
    handlers: list[logging.Handler] = []
    if enable_console:
        handlers.append(logging.StreamHandler(sys.stderr))
    if log_file:
        Path(log_file).parent.mkdir(parents=True, exist_ok=True)
        handlers.append(logging.handlers.RotatingFileHandler(
            filename=log_file, maxBytes=max_file_size, backupCount=backup_count, encoding="utf-8",
        ))
    return handlers


def setup_logging(
    log_level: Optional[str] = None,
    log_file: Optional[str] = None,
    enable_json: bool = False,
    enable_console: bool = True,
    max_file_size: int = 10 * 1024 * 1024,
    backup_count: int = 5,
) -> None:
    """
    Configure the root logger. Arguments left unset fall back to the
    WAVE_LOG_LEVEL, WAVE_LOG_FILE and WAVE_LOG_JSON_FORMAT settings.
    """
    settings = get_settings()
    log_level = (log_level or settings.LOG_LEVEL).upper()
    log_file = log_file or settings.LOG_FILE
    enable_json = enable_json or settings.LOG_JSON_FORMAT
    level = getattr(logging, log_level, logging.INFO)

    formatter = JSONFormatter() if enable_json else logging.Formatter(TEXT_FORMAT, datefmt="%Y-%m-%d %H:%M:%S")
    root = logging.getLogger()
    root.setLevel(level)
    root.handlers.clear()
    for handler in _handlers(log_file, enable_console, max_file_size, backup_count):
        handler.setLevel(level)
        handler.setFormatter(formatter)
        root.addHandler(handler)

    root.debug(f"Logging configured - Level: {log_level}, File: {log_file}, JSON: {enable_json}")


def get_logger(name: str, extra_context: Optional[dict] = None) -> WaveLoggerAdapter:
    return WaveLoggerAdapter(logging.getLogger(name), extra_context or {})


def get_run_logger(name: str, run_id: str, scenario: Optional[str] = None) -> WaveLoggerAdapter:
    """Logger for one CLI run; run_id is `<config stem>-<seed>`."""
    context = {"run_id": run_id}
    if scenario:
        context["scenario"] = scenario
    return get_logger(name, context)


def log_function_call(func):
    """Log entry, duration and failure of a service operation at DEBUG."""

    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        logger = get_logger(func.__module__)
        if not logger.isEnabledFor(logging.DEBUG):
            return func(*args, **kwargs)

        logger.log_operation(f"Entering {func.__name__}", {"kwargs": sorted(kwargs)}, level=logging.DEBUG)
        started = time.perf_counter()
        try:
            result = func(*args, **kwargs)
        except Exception as e:
            logger.log_operation(
                f"Failed {func.__name__}",
                {"error_type": type(e).__name__, "duration": time.perf_counter() - started},
                level=logging.DEBUG,
            )
            raise
        logger.log_operation(
            f"Completed {func.__name__}", {"duration": time.perf_counter() - started}, level=logging.DEBUG
        )
        return result

    return wrapper
