import logging
from typing import Any

from fastmcp import FastMCP

from ..config.constants import LAW_IDS
from ..core.exceptions import BisetCalcError
from ..services import get_fixture_service


def register_fixture_catalog_resource(server: FastMCP):
    """Register the fixture catalog resource with the FastMCP server."""

    @server.resource("bisetcalc://fixtures")
    def fixture_catalog() -> dict[str, Any]:
        """
        Shipped groups, corpus 0-cells and corpus 1-cells usable by name in the tools.
        """
        logger = logging.getLogger(__name__)

        try:
            catalog = get_fixture_service().catalog()
            catalog["laws"] = [{"id": law, "description": text} for law, text in LAW_IDS.items()]
            logger.debug(f"Generated catalog with {len(catalog['cells'])} cells")
            return catalog

        except BisetCalcError as e:
            logger.error(f"Error generating fixture catalog: {e}")
            return {"error": "catalog_generation_error", **e.to_dict()}
