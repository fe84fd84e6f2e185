"""
Resource handlers for following law-verification runs.
"""

from datetime import datetime
import logging
from typing import Any

from fastmcp import FastMCP

from ..core.progress_tracker import get_progress_tracker

RECENT_UPDATES = 10
LISTED_SUITES = 20


def register_operation_status_resources(server: FastMCP):
    """Register operation status resources with the FastMCP server."""

    @server.resource("bisetcalc://operations/{operation_id}")
    def get_operation_progress(operation_id: str) -> dict[str, Any]:
        """
        Progress of one verification run: job counts per law and the latest checks.

        Args:
            operation_id: Id returned in the verify_laws result
        """
        logger = logging.getLogger(__name__)
        logger.debug(f"Getting progress for suite: {operation_id}")

        suite = get_progress_tracker().get_suite(operation_id)
        if suite is None:
            return {
                "error": "operation_not_found",
                "message": f"Operation {operation_id} not found",
                "operation_id": operation_id,
            }

        progress = suite.to_dict(recent=RECENT_UPDATES)
        for update in progress["updates"]:
            update["time_str"] = datetime.fromtimestamp(update["timestamp"]).strftime("%H:%M:%S")  # noqa: DTZ006
        progress["is_active"] = suite.is_active
        return progress

    @server.resource("bisetcalc://operations")
    def list_operations() -> dict[str, Any]:
        """Tracked verification runs, newest first."""
        suites = get_progress_tracker().list_suites()
        status_counts: dict[str, int] = {}
        for suite in suites:
            status_counts[suite.status.value] = status_counts.get(suite.status.value, 0) + 1
        return {
            "operations": [
                {
                    "operation_id": s.operation_id,
                    "status": s.status.value,
                    "laws": s.law_ids,
                    "bound": s.bound,
                    "progress_percent": s.progress_percent,
                    "failed_jobs": s.failed_jobs,
                    "progress_uri": f"bisetcalc://operations/{s.operation_id}",
                }
                for s in suites[:LISTED_SUITES]
            ],
            "total_count": len(suites),
            "status_counts": status_counts,
        }
