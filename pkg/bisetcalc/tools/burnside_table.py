import logging
from typing import Annotated

from fastmcp import Context, FastMCP
from fastmcp.tools.tool import ToolResult
from mcp.types import TextContent
from pydantic import Field

from ..core.exceptions import BisetCalcError
from ..services import get_calculator_service


def register_burnside_table_tool(server: FastMCP):
    """Register the burnside_table tool with the FastMCP server."""

    @server.tool(
        annotations={
            "title": "Burnside ring multiplication table",
            "readOnlyHint": True,
            "openWorldHint": False,
        }
    )
    def burnside_table(
        group: Annotated[
            str,
            Field(description="Fixture group name, e.g. 'C2' or 'S3'", min_length=1, max_length=64),
        ],
        ctx: Context = None,
    ) -> ToolResult:
        """
        Basis of transitive G-sets up to isomorphism and the products of every pair.
        """
        logger = logging.getLogger(__name__)

        try:
            logger.info(f"burnside_table request: group='{group}'")
            table = get_calculator_service().burnside_table(group)
            return ToolResult(
                content=[TextContent(type="text", text="\n".join(table.lines()))],
                structured_content=table.to_dict(),
            )

        except BisetCalcError as e:
            logger.error(f"Error in burnside_table: {e}")
            return ToolResult(
                content=[TextContent(type="text", text=f"Error: {e}")],
                structured_content={"error": "invalid_input", **e.to_dict()},
            )
