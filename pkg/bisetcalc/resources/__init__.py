"""Resources module for FastMCP server."""

from .fixture_catalog import register_fixture_catalog_resource
from .operation_status import register_operation_status_resources

__all__ = [
    "register_fixture_catalog_resource",
    "register_operation_status_resources",
]
