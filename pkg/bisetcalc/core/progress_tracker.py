"""
Progress tracking for law-verification suites.

A suite is registered with its law ids, bound and job count. Worker threads
report each finished law check, and the suite closes as completed when every
check held and as failed otherwise.
"""

from collections import Counter, deque
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field
from enum import Enum
import logging
import threading
import time
from typing import Any
import uuid

# updates kept per suite
UPDATE_HISTORY = 200


class OperationStatus(Enum):
    """Status of a tracked suite."""

    PENDING = "pending"
    RUNNING = "running"
    COMPLETED = "completed"
    FAILED = "failed"


@dataclass(frozen=True)
class JobUpdate:
    """One finished law check, or a change of suite status."""

    operation_id: str
    timestamp: float
    status: OperationStatus
    progress_percent: int
    message: str
    law_id: str | None = None
    fixture: str | None = None
    holds: bool | None = None

    def to_dict(self) -> dict[str, Any]:
        return {
            "operation_id": self.operation_id,
            "timestamp": self.timestamp,
            "status": self.status.value,
            "progress_percent": self.progress_percent,
            "message": self.message,
            "law": self.law_id,
            "fixture": self.fixture,
            "holds": self.holds,
        }


@dataclass
class TrackedSuite:
    operation_id: str
    law_ids: list[str]
    bound: int
    total_jobs: int
    created_at: float = field(default_factory=time.time)
    status: OperationStatus = OperationStatus.PENDING
    finished_jobs: int = 0
    per_law: Counter[str] = field(default_factory=Counter)
    failures: Counter[str] = field(default_factory=Counter)
    current_message: str = ""
    updates: deque[JobUpdate] = field(default_factory=lambda: deque(maxlen=UPDATE_HISTORY))

    @property
    def progress_percent(self) -> int:
        if self.total_jobs == 0:
            return 100
        return 100 * self.finished_jobs // self.total_jobs

    @property
    def failed_jobs(self) -> int:
        return sum(self.failures.values())

    @property
    def is_active(self) -> bool:
        return self.status in (OperationStatus.PENDING, OperationStatus.RUNNING)

    def to_dict(self, recent: int | None = None) -> dict[str, Any]:
        updates = list(self.updates)
        if recent is not None:
            updates = updates[-recent:]
        return {
            "operation_id": self.operation_id,
            "status": self.status.value,
            "laws": self.law_ids,
            "bound": self.bound,
            "created_at": self.created_at,
            "total_jobs": self.total_jobs,
            "finished_jobs": self.finished_jobs,
            "failed_jobs": self.failed_jobs,
            "progress_percent": self.progress_percent,
            "per_law": {law: self.per_law[law] for law in self.law_ids},
            "message": self.current_message,
            "updates": [u.to_dict() for u in updates],
        }


class ProgressTracker:
    """Thread-safe registry of suites; law jobs report from worker threads."""

    def __init__(self) -> None:
        self._suites: dict[str, TrackedSuite] = {}
        self._lock = threading.Lock()
        self.logger = logging.getLogger(__name__)
        self.update_callback: Callable[[JobUpdate], None] | None = None

    def set_update_callback(self, callback: Callable[[JobUpdate], None]) -> None:
        self.update_callback = callback

    def start_suite(self, law_ids: Sequence[str], bound: int, total_jobs: int) -> str:
        """
        Register a suite before its jobs are submitted.

        Returns:
            Operation id of the suite
        """
        suite = TrackedSuite(str(uuid.uuid4()), list(law_ids), bound, total_jobs)
        suite.current_message = f"{total_jobs} jobs scheduled"
        with self._lock:
            self._suites[suite.operation_id] = suite
            update = self._record(suite)
        self.logger.info(
            f"Tracking suite {suite.operation_id}: {', '.join(law_ids) or 'no laws'} "
            f"at bound {bound}, {total_jobs} jobs"
        )
        self._notify(update)
        return suite.operation_id

    def job_finished(self, operation_id: str, law_id: str, fixture: str, holds: bool) -> bool:
        """Record one finished law check. Returns False for an unknown suite."""
        with self._lock:
            suite = self._suites.get(operation_id)
            if suite is None:
                self.logger.warning(f"Job reported for unknown suite {operation_id}")
                return False
            suite.finished_jobs = min(suite.total_jobs, suite.finished_jobs + 1)
            suite.per_law[law_id] += 1
            if not holds:
                suite.failures[law_id] += 1
            suite.status = OperationStatus.RUNNING
            suite.current_message = f"{law_id} {fixture}: {'ok' if holds else 'FAIL'}"
            update = self._record(suite, law_id, fixture, holds)
        self._notify(update)
        return True

    def finish_suite(self, operation_id: str) -> OperationStatus | None:
        """Close a suite: failed if any job failed, completed otherwise."""
        with self._lock:
            suite = self._suites.get(operation_id)
            if suite is None:
                self.logger.warning(f"Finish requested for unknown suite {operation_id}")
                return None
            if suite.failed_jobs:
                suite.status = OperationStatus.FAILED
                suite.current_message = f"{suite.failed_jobs} checks fail"
            else:
                suite.status = OperationStatus.COMPLETED
                suite.current_message = f"{suite.finished_jobs} checks hold"
            update = self._record(suite)
        self._notify(update)
        return suite.status

    def get_suite(self, operation_id: str) -> TrackedSuite | None:
        with self._lock:
            return self._suites.get(operation_id)

    def list_suites(self, status: OperationStatus | None = None) -> list[TrackedSuite]:
        """Suites newest first, optionally filtered by status."""
        with self._lock:
            found = [s for s in self._suites.values() if status is None or s.status == status]
        return sorted(found, key=lambda s: s.created_at, reverse=True)

    def _record(
        self,
        suite: TrackedSuite,
        law_id: str | None = None,
        fixture: str | None = None,
        holds: bool | None = None,
    ) -> JobUpdate:
        update = JobUpdate(
            suite.operation_id,
            time.time(),
            suite.status,
            suite.progress_percent,
            suite.current_message,
            law_id,
            fixture,
            holds,
        )
        suite.updates.append(update)
        return update

    def _notify(self, update: JobUpdate) -> None:
        self.logger.debug(f"[{update.operation_id}] {update.progress_percent}% {update.message}")
        if self.update_callback is None:
            return
        try:
            self.update_callback(update)
        except Exception as e:
            self.logger.error(f"Progress callback failed: {e}")


_progress_tracker: ProgressTracker | None = None


def get_progress_tracker() -> ProgressTracker:
    """Get the global progress tracker instance."""
    global _progress_tracker
    if _progress_tracker is None:
        _progress_tracker = ProgressTracker()
    return _progress_tracker
