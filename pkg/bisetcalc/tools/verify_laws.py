"""
Law verification tool.

Runs the bounded law suites over the built-in corpus. Progress of the run can be
followed through the bisetcalc://operations resources.
"""

import logging
from typing import Annotated

from fastmcp import Context, FastMCP
from fastmcp.tools.tool import ToolResult
from mcp.types import TextContent
from pydantic import Field

from ..config.constants import DEFAULT_BOUND
from ..core.exceptions import BisetCalcError, ValidationError
from ..core.validation import validate_bound, validate_law_ids
from ..services import get_law_verifier


def register_verify_laws_tool(server: FastMCP):
    """Register the verify_laws tool with the FastMCP server."""

    @server.tool(
        annotations={
            "title": "Verify structural laws on the fixture corpus",
            "readOnlyHint": True,
            "openWorldHint": False,
        }
    )
    def verify_laws(
        laws: Annotated[
            list[str] | None,
            Field(
                description="Law ids (der1, der2, der3, der4, mackey, tambara, semi-mackey, "
                "bipullback, bicoproduct) or ['all']. Defaults to all."
            ),
        ] = None,
        bound: Annotated[
            int,
            Field(description="Largest slice-object size to enumerate", ge=0, le=8),
        ] = DEFAULT_BOUND // 2,
        seed: Annotated[
            int,
            Field(description="Seed for sampled naturality checks", ge=0),
        ] = 0,
        ctx: Context = None,
    ) -> ToolResult:
        """
        Run the requested law suites and report each check with its witness on failure.
        """
        logger = logging.getLogger(__name__)

        try:
            law_ids = validate_law_ids(laws or ["all"])
            validate_bound(bound)
            logger.info(f"verify_laws: {law_ids} bound={bound} seed={seed}")

            suite = get_law_verifier().run_suite(law_ids, bound, seed)
            return ToolResult(
                content=[TextContent(type="text", text="\n".join(suite.summary_lines()))],
                structured_content=suite.to_dict(),
            )

        except ValidationError as e:
            logger.error(f"Validation error in verify_laws: {e}")
            return ToolResult(
                content=[TextContent(type="text", text=f"Validation error: {e}")],
                structured_content={"error": "validation_error", **e.to_dict()},
            )
        except BisetCalcError as e:
            logger.error(f"Error in verify_laws: {e}")
            return ToolResult(
                content=[TextContent(type="text", text=f"Error: {e}")],
                structured_content={"error": "verification_error", **e.to_dict()},
            )
