"""Argument validation shared by the CLI and the MCP tools."""

from collections.abc import Iterable

from ..config.constants import LAW_IDS
from ..config.settings import FunctorKind, OutputFormat
from .exceptions import ValidationError


def validate_bound(bound: int, cap: int | None = None) -> None:
    """Validate an enumeration bound."""
    if not isinstance(bound, int) or isinstance(bound, bool):
        raise ValidationError("Bound must be an integer", field="bound", value=bound)
    if bound < 0:
        raise ValidationError(f"Bound must be >= 0, got {bound}", field="bound", value=bound)
    if cap is not None and bound > cap:
        raise ValidationError(f"Bound {bound} exceeds the cap {cap}", field="bound", value=bound)


def validate_format(output_format: str) -> OutputFormat:
    try:
        return OutputFormat(output_format)
    except ValueError:
        raise ValidationError(
            f"Unknown output format: {output_format}. "
            f"Supported: {', '.join(f.value for f in OutputFormat)}",
            field="format",
            value=output_format,
        )


def validate_functor(name: str) -> FunctorKind:
    try:
        return FunctorKind(name)
    except ValueError:
        raise ValidationError(
            f"Unknown functor: {name}. Supported: {', '.join(k.value for k in FunctorKind)}",
            field="functor",
            value=name,
        )


def validate_law_ids(law_ids: Iterable[str]) -> list[str]:
    """Expand "all" and reject unknown ids, keeping the canonical order."""
    requested = list(law_ids)
    if not requested or "all" in requested:
        return list(LAW_IDS)
    unknown = [law for law in requested if law not in LAW_IDS]
    if unknown:
        raise ValidationError(
            f"Unknown law id(s): {', '.join(unknown)}. Known: {', '.join(LAW_IDS)}",
            field="law",
            value=unknown,
        )
    return [law for law in LAW_IDS if law in requested]
