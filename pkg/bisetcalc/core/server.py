import logging

from fastmcp import FastMCP

from ..config.settings import ServerConfig
from ..resources import register_fixture_catalog_resource, register_operation_status_resources
from ..tools import (
    register_apply_functor_tool,
    register_burnside_table_tool,
    register_sim_factorize_tool,
    register_verify_laws_tool,
)

INSTRUCTIONS = (
    "This server computes with finite sets carrying variable finite group actions: "
    "the pullback functor along a 1-cell and its two adjoints, SIm-factorizations, "
    "Burnside ring tables, and bounded law checks over a shipped fixture corpus. "
    "Corpus cells can be passed by name; see bisetcalc://fixtures. "
    "verify_laws returns an operation id whose progress is served at bisetcalc://operations/{id}."
)

TOOLS = (
    register_apply_functor_tool,
    register_burnside_table_tool,
    register_sim_factorize_tool,
    register_verify_laws_tool,
)
RESOURCES = (register_fixture_catalog_resource, register_operation_status_resources)


class BisetCalcMCP:
    """FastMCP server with the bisetcalc tools and resources registered."""

    def __init__(self, config: ServerConfig):
        self.config = config
        self.logger = logging.getLogger(__name__)
        self.server = FastMCP(
            name=config.server_name,
            instructions=INSTRUCTIONS,
            mask_error_details=config.mask_error_details,
        )
        for register in TOOLS + RESOURCES:
            register(self.server)
        self.logger.debug(f"Registered {len(TOOLS)} tools and {len(RESOURCES)} resource modules")

    def run(self):
        if self.config.transport == "http":
            self.logger.info(f"Serving over http on {self.config.host}:{self.config.port}")
            self.server.run(transport="http", host=self.config.host, port=self.config.port)
        else:
            self.server.run()
