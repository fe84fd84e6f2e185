"""
Logging setup shared by the CLI and the MCP server.

Everything goes to stderr: stdout carries CLI results and the MCP stdio stream.
"""

from datetime import datetime, timezone
import json
import logging
import sys
from typing import Any

from ..core.exceptions import BisetCalcError

FORMATS = {
    "standard": "%(asctime)s - %(name)s - %(levelname)s - %(message)s",
    "detailed": "%(asctime)s - %(name)s - %(levelname)s - %(filename)s:%(lineno)d - %(message)s",
}

# LogRecord attributes that are not caller-supplied extras
_RECORD_FIELDS = frozenset(vars(logging.LogRecord("", 0, "", 0, "", None, None))) | {
    "message",
    "asctime",
}

# third-party loggers that are too chatty at INFO
_QUIET = ("mcp", "fastmcp", "httpx", "uvicorn")


def setup_logging(level: str = "INFO", format_type: str = "standard") -> None:
    """
    Configure the root logger.

    Args:
        level: Logging level name; unknown names fall back to INFO
        format_type: "standard", "detailed" or "json"
    """
    root = logging.getLogger()
    root.setLevel(getattr(logging, level.upper(), logging.INFO))
    for handler in root.handlers[:]:
        root.removeHandler(handler)

    handler = logging.StreamHandler(sys.stderr)
    if format_type == "json":
        handler.setFormatter(JSONFormatter())
    else:
        handler.setFormatter(logging.Formatter(FORMATS.get(format_type, FORMATS["standard"])))
    root.addHandler(handler)

    for name in _QUIET:
        logging.getLogger(name).setLevel(logging.WARNING)


class JSONFormatter(logging.Formatter):
    """One JSON object per record, extras included."""

    def format(self, record: logging.LogRecord) -> str:
        entry: dict[str, Any] = {
            "timestamp": datetime.fromtimestamp(record.created, timezone.utc).isoformat(),
            "level": record.levelname,
            "logger": record.name,
            "message": record.getMessage(),
        }
        if record.exc_info:
            entry["exception"] = self.formatException(record.exc_info)
        entry.update((k, v) for k, v in vars(record).items() if k not in _RECORD_FIELDS)
        return json.dumps(entry, default=str, ensure_ascii=False)


def log_performance_metric(
    logger: logging.Logger, operation: str, duration_ms: float, metadata: dict[str, Any] | None = None
) -> None:
    """Log the duration of a computation with sizes or counts as extras."""
    logger.info(
        f"{operation} took {duration_ms:.1f} ms",
        extra={"operation": operation, "duration_ms": round(duration_ms, 2), **(metadata or {})},
    )


def log_law_error(logger: logging.Logger, law_id: str, fixture: str, error: BisetCalcError) -> None:
    """Log an error raised inside a law check, with its code and witness context."""
    logger.error(
        f"{law_id} on {fixture} raised {error}",
        extra={
            "law": law_id,
            "fixture": fixture,
            "error_code": error.error_code.value if error.error_code else None,
            "error_context": error.context,
        },
    )
