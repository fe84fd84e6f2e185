from dataclasses import dataclass
from enum import Enum
import os
from pathlib import Path

from dotenv import load_dotenv

from ..core.exceptions import ConfigurationError, ErrorCode
from .constants import (
    DEFAULT_BOUND,
    DEFAULT_DEGREE_CAP,
    DEFAULT_FIXTURE_GROUP_CAP,
    DEFAULT_FIXTURE_SIZE_CAP,
    DEFAULT_MAX_GROUP_ORDER,
    DEFAULT_WORKERS,
)

PACKAGED_FIXTURE_DIR = Path(__file__).resolve().parent.parent / "fixtures"


class OutputFormat(str, Enum):
    """Output formats understood by the CLI and the MCP tools."""

    TEXT = "text"
    JSON = "json"


class FunctorKind(str, Enum):
    """The three slice functors induced by a 1-cell."""

    STAR = "star"  # pullback
    PLUS = "plus"  # left adjoint
    BULLET = "bullet"  # right adjoint


def _env_int(name: str, default: int, minimum: int = 0) -> int:
    raw = os.getenv(name, "").strip()
    if not raw:
        return default
    try:
        value = int(raw)
    except ValueError as e:
        raise ConfigurationError(
            f"{name} must be an integer, got {raw!r}",
            error_code=ErrorCode.CONFIG_INVALID_VALUE,
            context={"variable": name, "value": raw},
            cause=e,
        )
    if value < minimum:
        raise ConfigurationError(
            f"{name} must be >= {minimum}, got {value}",
            error_code=ErrorCode.CONFIG_INVALID_VALUE,
            context={"variable": name, "value": value},
        )
    return value


@dataclass
class CalcConfig:
    """Calculator configuration settings."""

    fixture_dir: Path = PACKAGED_FIXTURE_DIR
    max_group_order: int = DEFAULT_MAX_GROUP_ORDER
    default_bound: int = DEFAULT_BOUND
    degree_cap: int = DEFAULT_DEGREE_CAP
    seed: int = 0

    @classmethod
    def from_env(cls) -> "CalcConfig":
        """Load configuration from environment variables."""
        load_dotenv()

        fixture_dir = os.getenv("BISETCALC_FIXTURES", "").strip()
        path = Path(fixture_dir).expanduser().resolve() if fixture_dir else PACKAGED_FIXTURE_DIR

        return cls(
            fixture_dir=path,
            max_group_order=_env_int("BISETCALC_MAX_GROUP_ORDER", DEFAULT_MAX_GROUP_ORDER, 1),
            default_bound=_env_int("BISETCALC_BOUND", DEFAULT_BOUND),
            degree_cap=_env_int("BISETCALC_DEGREE_CAP", DEFAULT_DEGREE_CAP, 1),
            seed=_env_int("BISETCALC_SEED", 0),
        )


class WorkerKind(str, Enum):
    """Executors the law verifier can run its jobs on."""

    PROCESS = "process"
    THREAD = "thread"


@dataclass
class VerifierConfig:
    """Law verifier settings."""

    max_workers: int = DEFAULT_WORKERS
    fixture_group_cap: int = DEFAULT_FIXTURE_GROUP_CAP  # |G| for corpus cells
    fixture_size_cap: int = DEFAULT_FIXTURE_SIZE_CAP  # |X| for corpus cells
    executor: WorkerKind = WorkerKind.PROCESS

    @classmethod
    def from_env(cls) -> "VerifierConfig":
        """Load verifier config from environment."""
        load_dotenv()

        raw = os.getenv("BISETCALC_EXECUTOR", "").strip().lower() or WorkerKind.PROCESS.value
        try:
            executor = WorkerKind(raw)
        except ValueError as e:
            raise ConfigurationError(
                f"BISETCALC_EXECUTOR must be 'process' or 'thread', got {raw!r}",
                error_code=ErrorCode.CONFIG_INVALID_VALUE,
                context={"variable": "BISETCALC_EXECUTOR", "value": raw},
                cause=e,
            )
        return cls(
            max_workers=_env_int("BISETCALC_WORKERS", DEFAULT_WORKERS, 1),
            executor=executor,
        )


@dataclass
class ServerConfig:
    """MCP server configuration settings."""

    server_name: str = "bisetcalc"
    transport: str = "stdio"  # stdio or http
    host: str = "127.0.0.1"
    port: int = 9000
    mask_error_details: bool = False

    @classmethod
    def from_env(cls) -> "ServerConfig":
        """Load configuration from environment variables."""
        load_dotenv()

        return cls(
            transport=os.getenv("FASTMCP_TRANSPORT", "stdio"),
            host=os.getenv("FASTMCP_HOST", "127.0.0.1"),
            port=_env_int("FASTMCP_PORT", 9000, 1),
            mask_error_details=os.getenv("FASTMCP_MASK_ERRORS", "false").lower() == "true",
        )
