import logging
from typing import Annotated, Any

from fastmcp import Context, FastMCP
from fastmcp.tools.tool import ToolResult
from mcp.types import TextContent
from pydantic import Field

from ..core.exceptions import BisetCalcError
from ..services import get_calculator_service, get_fixture_service


def register_sim_factorize_tool(server: FastMCP):
    """Register the sim_factorize tool with the FastMCP server."""

    @server.tool(
        annotations={
            "title": "Stabilizerwise-image factorization of a 1-cell",
            "readOnlyHint": True,
            "openWorldHint": False,
        }
    )
    def sim_factorize(
        cell: Annotated[
            str | dict[str, Any],
            Field(description="Corpus cell name or an inline cell document"),
        ],
        ctx: Context = None,
    ) -> ToolResult:
        """
        Factor a cell as a stab-surjective cell into SIm followed by an equivariant map.
        """
        logger = logging.getLogger(__name__)

        try:
            fixtures = get_fixture_service()
            one_cell = fixtures.resolve_cell(cell)
            logger.info(f"sim_factorize: {one_cell!r}")
            fac, summary = get_calculator_service().sim(one_cell)
            summary["unit"] = fixtures.encoder().one_cell(fac.unit)
            text = (
                f"SIm has {summary['sim_size']} points over {summary['group']}; "
                f"α̃ = {summary['alpha_tilde']}; "
                f"cell is {'' if summary['stab_surjective'] else 'not '}stab-surjective"
            )
            return ToolResult(content=[TextContent(type="text", text=text)], structured_content=summary)

        except BisetCalcError as e:
            logger.error(f"Error in sim_factorize: {e}")
            return ToolResult(
                content=[TextContent(type="text", text=f"Error: {e}")],
                structured_content={"error": "invalid_input", **e.to_dict()},
            )
