import logging
from typing import Annotated, Any

from fastmcp import Context, FastMCP
from fastmcp.tools.tool import ToolResult
from mcp.types import TextContent
from pydantic import Field

from ..algebra.slices import SliceObject
from ..config.settings import FunctorKind
from ..core.exceptions import BisetCalcError, MismatchError
from ..core.validation import validate_functor
from ..services import get_calculator_service, get_fixture_service


def register_apply_functor_tool(server: FastMCP):
    """Register the apply_functor tool with the FastMCP server."""

    @server.tool(
        annotations={
            "title": "Apply a slice functor along a 1-cell",
            "readOnlyHint": True,
            "openWorldHint": False,
        }
    )
    def apply_functor(
        functor: Annotated[
            str,
            Field(description="'star' (pullback), 'plus' (left adjoint) or 'bullet' (right adjoint)"),
        ],
        cell: Annotated[
            str | dict[str, Any],
            Field(description="Corpus cell name (see bisetcalc://fixtures) or an inline cell document"),
        ],
        obj: Annotated[
            dict[str, Any] | None,
            Field(
                description="Slice object document. Omit to use the terminal object "
                "over the source (plus, bullet) or target (star) of the cell."
            ),
        ] = None,
        ctx: Context = None,
    ) -> ToolResult:
        """
        Compute α*B, α₊A or α•A and return the result with its Burnside class.
        """
        logger = logging.getLogger(__name__)

        try:
            kind = validate_functor(functor)
            fixtures = get_fixture_service()
            one_cell = fixtures.resolve_cell(cell)
            if obj is None:
                base = one_cell.target if kind is FunctorKind.STAR else one_cell.source
                slice_object = SliceObject.terminal(base)
            else:
                slice_object = fixtures.parse_slice_object(obj)
            logger.info(f"apply_functor: {kind.value} on {one_cell!r}, input size {slice_object.size}")

            result = get_calculator_service().apply(kind, one_cell, slice_object)
            payload = result.to_dict(fixtures.encoder().slice_object(result.result))
            summary = (
                f"{kind.value}: {slice_object.size} points -> {result.result.size} points, "
                f"{len(result.burnside_class.orbits)} orbit(s) over {result.result.base_cell!r}"
            )
            return ToolResult(
                content=[TextContent(type="text", text=summary)], structured_content=payload
            )

        except MismatchError as e:
            logger.error(f"Mismatch in apply_functor: {e}")
            return ToolResult(
                content=[TextContent(type="text", text=f"Mismatch: {e}")],
                structured_content={"error": "mismatch", **e.to_dict()},
            )
        except BisetCalcError as e:
            logger.error(f"Error in apply_functor: {e}")
            return ToolResult(
                content=[TextContent(type="text", text=f"Error: {e}")],
                structured_content={"error": "invalid_input", **e.to_dict()},
            )
