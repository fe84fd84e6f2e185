"""
bisetcalc - finite sets with variable group actions.

Slice functors along 1-cells, Burnside rings and bounded law verification,
available as a library, a CLI and an MCP server.
"""

__version__ = "0.1.0"
__description__ = "Computations in the 2-category of finite sets with variable group actions"

from .server import create_app, create_wrapper_app, main

__all__ = ["create_app", "create_wrapper_app", "main"]
