"""
bisetcalc MCP server entry point.

Exposes the slice functors, Burnside tables and law verification over the
Model Context Protocol.
"""

import logging
import os
import sys

from . import services
from .config.constants import EXIT_COMPUTATION_ERROR, EXIT_OK, EXIT_PARSE_ERROR
from .config.settings import CalcConfig, ServerConfig, VerifierConfig
from .core.exceptions import BisetCalcError, ConfigurationError, InputError, ValidationError
from .core.server import BisetCalcMCP
from .utils.logging_utils import setup_logging

logger = logging.getLogger(__name__)


def _configure_logging() -> None:
    if not logging.getLogger().hasHandlers():
        setup_logging(
            level=os.getenv("LOG_LEVEL", "INFO"),
            format_type=os.getenv("LOG_FORMAT", "standard"),
        )


def create_wrapper_app() -> BisetCalcMCP:
    """
    Load the configs, initialize services and build the server.

    The group fixtures are loaded here so that a bad fixture directory fails at
    startup instead of on the first tool call.

    Raises:
        ConfigurationError: Malformed environment values
        InputError: Missing or unreadable fixtures
        ValidationError: A group fixture is not a group or exceeds the order cap
    """
    _configure_logging()
    server_config = ServerConfig.from_env()
    calc_config = CalcConfig.from_env()
    verifier_config = VerifierConfig.from_env()

    services.initialize_services(calc_config, verifier_config)
    groups = services.get_fixture_service().group_names()
    logger.info(
        f"Loaded {len(groups)} groups from {calc_config.fixture_dir}: {', '.join(groups)}; "
        f"{verifier_config.max_workers} verifier workers"
    )
    app = BisetCalcMCP(server_config)
    logger.info(f"bisetcalc ready on {server_config.transport}")
    return app


def create_app():
    """
    Application factory for the FastMCP CLI.

    It can be called via: fastmcp dev bisetcalc/server.py:create_app
    """
    return create_wrapper_app().server


def main():
    """Run the server until interrupted."""
    setup_logging(
        level=os.getenv("LOG_LEVEL", "INFO"),
        format_type=os.getenv("LOG_FORMAT", "standard"),
    )
    try:
        create_wrapper_app().run()
    except (ConfigurationError, InputError, ValidationError) as e:
        logger.error(f"Cannot start: {e}")
        sys.exit(EXIT_PARSE_ERROR)
    except BisetCalcError as e:
        logger.error(f"Startup failed: {e}")
        sys.exit(EXIT_COMPUTATION_ERROR)
    except KeyboardInterrupt:
        logger.info("Server shutdown requested")
        sys.exit(EXIT_OK)


if __name__ == "__main__":
    main()
