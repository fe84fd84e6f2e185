"""Command-line front end: single operations, Burnside tables and law suites.

Cells and 0-cells are given as JSON files or by corpus name (``bisetcalc
fixtures`` lists them). Exit codes: 0 success, 1 a law fails, 2 bad input,
3 mismatched operands, 4 unknown group, 5 other computation errors.
"""

import argparse
from collections.abc import Callable
from dataclasses import dataclass, field
import json
import logging
import os
from pathlib import Path
import sys
from typing import Any

from . import services
from .algebra.burnside import OmegaElement
from .algebra.scat import OneCell, ZeroCell
from .algebra.slices import SliceObject
from .config.constants import (
    EXIT_COMPUTATION_ERROR,
    EXIT_LAW_FAILED,
    EXIT_MISMATCH,
    EXIT_OK,
    EXIT_PARSE_ERROR,
    EXIT_UNKNOWN_GROUP,
    LAW_IDS,
)
from .config.settings import CalcConfig, FunctorKind, OutputFormat, VerifierConfig
from .core.exceptions import (
    BisetCalcError,
    ConfigurationError,
    FixtureNotFound,
    InputError,
    MismatchError,
    UnknownGroup,
    ValidationError,
)
from .core.validation import validate_bound, validate_format, validate_functor, validate_law_ids
from .services.fixture_service import FixtureService
from .utils.logging_utils import setup_logging

logger = logging.getLogger(__name__)


@dataclass
class RunConfig:
    """One CLI invocation."""

    command: str
    inputs: list[str] = field(default_factory=list)
    bound: int = 0
    output_format: OutputFormat = OutputFormat.TEXT
    seed: int = 0
    fixture_dir: Path | None = None

    @classmethod
    def from_args(cls, args: argparse.Namespace, calc: CalcConfig) -> "RunConfig":
        """
        Raises:
            ValidationError: Negative bound or unknown output format
        """
        bound = calc.default_bound if args.bound is None else args.bound
        validate_bound(bound)
        return cls(
            command=args.command,
            inputs=list(args.inputs),
            bound=bound,
            output_format=validate_format(args.format),
            seed=calc.seed if args.seed is None else args.seed,
            fixture_dir=args.fixtures,
        )


def _parse_args(argv: list[str] | None = None) -> argparse.Namespace:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--bound", type=int, default=None, help="largest slice-object size to enumerate")
    common.add_argument("--format", default=OutputFormat.TEXT.value, help="text or json")
    common.add_argument("--seed", type=int, default=None, help="seed for sampled naturality checks")
    common.add_argument("--fixtures", type=Path, default=None, help="fixture directory")

    parser = argparse.ArgumentParser(
        prog="bisetcalc",
        description="Compute with finite sets with variable group actions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    apply = sub.add_parser("apply", parents=[common], help="apply star, plus or bullet along a cell")
    apply.add_argument("functor", choices=[k.value for k in FunctorKind])
    apply.add_argument("cell", help="cell JSON file or corpus cell name")
    apply.add_argument(
        "object", nargs="?", default=None, help="slice object JSON file (default: terminal object)"
    )

    table = sub.add_parser("burnside-table", parents=[common], help="multiplication table of Ω(pt/G)")
    table.add_argument("group")

    sim = sub.add_parser("sim", parents=[common], help="SIm-factorization of a cell")
    sim.add_argument("cell")

    pb = sub.add_parser("bipullback", parents=[common], help="bipullback of a cospan of cells")
    pb.add_argument("f")
    pb.add_argument("g")

    bc = sub.add_parser("bicoproduct", parents=[common], help="bicoproduct of two 0-cells")
    bc.add_argument("x", help="G-set JSON file or corpus 0-cell name")
    bc.add_argument("y")

    verify = sub.add_parser("verify", parents=[common], help="run law suites on the corpus")
    verify.add_argument("laws", nargs="*", default=["all"], help=f"'all' or any of {', '.join(LAW_IDS)}")

    sub.add_parser("fixtures", parents=[common], help="list groups and corpus cells")

    args = parser.parse_args(argv)
    positional = {
        "apply": ["functor", "cell", "object"],
        "burnside-table": ["group"],
        "sim": ["cell"],
        "bipullback": ["f", "g"],
        "bicoproduct": ["x", "y"],
        "verify": ["laws"],
        "fixtures": [],
    }[args.command]
    inputs: list[str] = []
    for name in positional:
        value = getattr(args, name)
        if isinstance(value, list):
            inputs.extend(value)
        elif value is not None:
            inputs.append(value)
    args.inputs = inputs
    return args


# =============================================================================
# Input resolution
# =============================================================================


def _resolve_cell(fixtures: FixtureService, ref: str) -> OneCell:
    if Path(ref).is_file():
        return fixtures.load_cell(ref)
    try:
        return fixtures.corpus_cell(ref).cell
    except FixtureNotFound:
        raise FixtureNotFound(
            f"{ref} is neither a file nor a corpus cell name", context={"input": ref}
        )


def _resolve_zero_cell(fixtures: FixtureService, ref: str) -> ZeroCell:
    if Path(ref).is_file():
        return fixtures.load_zero_cell(ref)
    try:
        return fixtures.corpus_zero_cell(ref).cell
    except FixtureNotFound:
        raise FixtureNotFound(
            f"{ref} is neither a file nor a corpus 0-cell name", context={"input": ref}
        )


# =============================================================================
# Commands
# =============================================================================


Output = tuple[dict[str, Any], list[str], int]


def cmd_apply(run: RunConfig) -> Output:
    fixtures = services.get_fixture_service()
    kind = validate_functor(run.inputs[0])
    cell = _resolve_cell(fixtures, run.inputs[1])
    if len(run.inputs) > 2:
        obj = fixtures.load_slice_object(run.inputs[2])
    else:
        obj = SliceObject.terminal(cell.target if kind is FunctorKind.STAR else cell.source)
    result = services.get_calculator_service().apply(kind, cell, obj)
    payload = result.to_dict(fixtures.encoder().slice_object(result.result))
    text = [
        f"functor: {kind.value}",
        f"input: {obj.size} points over {obj.base_cell!r}",
        f"result: {result.result.size} points over {result.result.base_cell!r}",
        f"structure: {result.result.structure.image.tolist()}",
        f"class: {OmegaElement.from_class(result.burnside_class)!r}",
    ]
    return payload, text, EXIT_OK


def cmd_burnside_table(run: RunConfig) -> Output:
    table = services.get_calculator_service().burnside_table(run.inputs[0])
    return table.to_dict(), table.lines(), EXIT_OK


def cmd_sim(run: RunConfig) -> Output:
    fixtures = services.get_fixture_service()
    cell = _resolve_cell(fixtures, run.inputs[0])
    fac, summary = services.get_calculator_service().sim(cell)
    summary["unit"] = fixtures.encoder().one_cell(fac.unit)
    text = [
        f"SIm: {summary['sim_size']} points over {summary['group']}",
        f"unit base: {summary['unit_base']}",
        f"α̃: {summary['alpha_tilde']}",
        f"stab-surjective: {summary['stab_surjective']}",
    ]
    return summary, text, EXIT_OK


def cmd_bipullback(run: RunConfig) -> Output:
    fixtures = services.get_fixture_service()
    f = _resolve_cell(fixtures, run.inputs[0])
    g = _resolve_cell(fixtures, run.inputs[1])
    _, summary = services.get_calculator_service().bipullback(f, g)
    text = [
        f"bipullback: {summary['size']} points over {summary['group']} (order {summary['group_order']})",
        *(f"  {k}: (x={p[0]}, y={p[1]}, k={p[2]})" for k, p in enumerate(summary["points"])),
        f"left: {summary['left_base']}",
        f"right: {summary['right_base']}",
        f"κ: {summary['kappa']}",
    ]
    return summary, text, EXIT_OK


def cmd_bicoproduct(run: RunConfig) -> Output:
    fixtures = services.get_fixture_service()
    x = _resolve_zero_cell(fixtures, run.inputs[0])
    y = _resolve_zero_cell(fixtures, run.inputs[1])
    _, summary = services.get_calculator_service().bicoproduct(x, y)
    text = [
        f"bicoproduct: {summary['size']} points over {summary['group']} (order {summary['group_order']})",
        f"left: {summary['left_base']}",
        f"right: {summary['right_base']}",
    ]
    return summary, text, EXIT_OK


def cmd_verify(run: RunConfig) -> Output:
    law_ids = validate_law_ids(run.inputs)
    suite = services.get_law_verifier().run_suite(law_ids, run.bound, run.seed)
    payload = suite.to_dict()
    payload.pop("operation_id")
    return payload, suite.summary_lines(), EXIT_OK if suite.holds else EXIT_LAW_FAILED


def cmd_fixtures(run: RunConfig) -> Output:
    catalog = services.get_fixture_service().catalog()
    catalog.pop("fixture_dir")
    text = ["groups: " + ", ".join(f"{g['name']} ({g['order']})" for g in catalog["groups"])]
    text += [f"0-cell {z['name']}" for z in catalog["zero_cells"]]
    text += [f"cell {c['name']}: {c['description']}" for c in catalog["cells"]]
    return catalog, text, EXIT_OK


COMMANDS: dict[str, Callable[[RunConfig], Output]] = {
    "apply": cmd_apply,
    "burnside-table": cmd_burnside_table,
    "sim": cmd_sim,
    "bipullback": cmd_bipullback,
    "bicoproduct": cmd_bicoproduct,
    "verify": cmd_verify,
    "fixtures": cmd_fixtures,
}


def exit_code_for(error: BisetCalcError) -> int:
    """Map an error to the documented exit code."""
    if isinstance(error, UnknownGroup):
        return EXIT_UNKNOWN_GROUP
    if isinstance(error, MismatchError):
        return EXIT_MISMATCH
    if isinstance(error, (InputError, ValidationError, ConfigurationError)):
        return EXIT_PARSE_ERROR
    return EXIT_COMPUTATION_ERROR


def _emit(run: RunConfig | None, payload: dict[str, Any], text: list[str]) -> None:
    if run is not None and run.output_format is OutputFormat.JSON:
        sys.stdout.write(json.dumps(payload, indent=2, ensure_ascii=False) + "\n")
    else:
        sys.stdout.write("\n".join(text) + "\n")


def main(argv: list[str] | None = None) -> int:
    setup_logging(
        level=os.getenv("LOG_LEVEL", "WARNING"),
        format_type=os.getenv("LOG_FORMAT", "standard"),
    )
    args = _parse_args(argv)
    run: RunConfig | None = None
    try:
        calc = CalcConfig.from_env()
        if args.fixtures is not None:
            calc.fixture_dir = args.fixtures.expanduser().resolve()
        run = RunConfig.from_args(args, calc)
        services.initialize_services(calc, VerifierConfig.from_env())
        payload, text, code = COMMANDS[run.command](run)
    except BisetCalcError as e:
        logger.debug(f"{args.command} failed", exc_info=True)
        code = exit_code_for(e)
        sys.stderr.write(f"error: {e}\n")
        if run is not None and run.output_format is OutputFormat.JSON:
            _emit(run, {"error": e.to_dict(), "exit_code": code}, [])
        return code
    _emit(run, payload, text)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
