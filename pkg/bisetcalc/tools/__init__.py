"""Tools module for FastMCP server."""

from .apply_functor import register_apply_functor_tool
from .burnside_table import register_burnside_table_tool
from .sim_factorize import register_sim_factorize_tool
from .verify_laws import register_verify_laws_tool

__all__ = [
    "register_apply_functor_tool",
    "register_burnside_table_tool",
    "register_sim_factorize_tool",
    "register_verify_laws_tool",
]
