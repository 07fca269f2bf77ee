# verification/manager.py
import time
from concurrent.futures import ThreadPoolExecutor
from typing import Dict, Iterable, Optional

from travelwave.config.config import get_settings
from travelwave.domain.entity.enums import VerifyCheck
from travelwave.infrastructure.verification.checks import Check, CheckOutcome
from travelwave.utils.logger import WaveLoggerAdapter, get_logger

logger = get_logger(__name__)


class VerificationManager:
    """
    Registry of named verification checks.

    Checks are independent and run on a thread pool sized by
    WAVE_NUM_THREADS; outcomes always come back in the requested order.
    """

    def __init__(self, num_threads: Optional[int] = None, run_logger: Optional[WaveLoggerAdapter] = None):
        self._checks: Dict[VerifyCheck, Check] = {}
        self._num_threads = num_threads or get_settings().NUM_THREADS
        self._logger = run_logger or logger

    def register(self, name: VerifyCheck, check: Check) -> None:
        if name in self._checks:
            raise ValueError(f"Check '{name.value}' already registered")
        self._checks[name] = check
        self._logger.debug(f"Check '{name.value}' registered")

    def register_all(self, checks: Dict[VerifyCheck, Check]) -> None:
        for name, check in checks.items():
            self.register(name, check)

    def get(self, name: VerifyCheck) -> Check:
        if name not in self._checks:
            raise ValueError(f"Check '{name.value}' not found. Available: {[c.value for c in self.list()]}")
        return self._checks[name]

    def _timed(self, name: VerifyCheck) -> CheckOutcome:
        started = time.perf_counter()
        try:
            outcome = self.get(name)()
        except Exception as e:
            self._logger.log_error(f"verify:{name.value}", e)
            raise
        self._logger.log_performance(
            f"verify:{name.value}",
            time.perf_counter() - started,
            {"passed": outcome.passed, "skipped": outcome.skipped is not None},
        )
        return outcome

    def run(self, names: Iterable[VerifyCheck]) -> list[CheckOutcome]:
        names = list(dict.fromkeys(names))
        for name in names:
            self.get(name)
        if not names:
            return []
        workers = min(self._num_threads, len(names))
        self._logger.info(f"Running {len(names)} check(s) on {workers} worker(s)...")
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(self._timed, names))

    def list(self) -> list[VerifyCheck]:
        return list(self._checks.keys())

    @property
    def num_threads(self) -> int:
        return self._num_threads

    def __repr__(self) -> str:
        checks = ", ".join(c.value for c in self.list())
        return f"VerificationManager(checks=[{checks}], threads={self._num_threads})"
