"""Single operations behind the CLI subcommands and the MCP tools."""

from dataclasses import dataclass
import logging
import time
from typing import Any

from ..algebra.burnside import BurnsideClass, BurnsideTable, OmegaElement, burnside_table, classify
from ..algebra.scat import (
    Bicoproduct,
    Bipullback,
    OneCell,
    SImFactorization,
    ZeroCell,
    bicoproduct,
    bipullback,
    is_stab_surjective,
    sim_factorize,
)
from ..algebra.slices import SliceObject, describe, pullback_star, push_bullet, push_plus
from ..config.settings import CalcConfig, FunctorKind
from ..utils.logging_utils import log_performance_metric
from .fixture_service import FixtureService


@dataclass(frozen=True)
class ApplyResult:
    """A functor applied to a slice object, with its isomorphism class."""

    functor: FunctorKind
    result: SliceObject
    burnside_class: BurnsideClass

    def to_dict(self, encoded: dict[str, Any]) -> dict[str, Any]:
        return {
            "functor": self.functor.value,
            "object": encoded,
            "class": OmegaElement.from_class(self.burnside_class).to_dict(),
            "summary": describe(self.result),
        }


class CalculatorService:
    """Runs the slice functors, Burnside tables and the 2-categorical constructions."""

    def __init__(self, fixtures: FixtureService, config: CalcConfig):
        self.fixtures = fixtures
        self.config = config
        self.logger = logging.getLogger(__name__)

    def apply(self, functor: FunctorKind, cell: OneCell, obj: SliceObject) -> ApplyResult:
        """
        Apply ``α*``, ``α₊`` or ``α•`` to a slice object.

        Args:
            functor: Which of the three functors
            cell: The 1-cell ``(α, θ)``
            obj: Object over the target (star) or the source (plus, bullet)

        Raises:
            BaseMismatch: The object lies over the wrong 0-cell
        """
        start = time.perf_counter()
        if functor is FunctorKind.STAR:
            result = pullback_star(cell, obj)
        elif functor is FunctorKind.PLUS:
            result = push_plus(cell, obj)
        else:
            result = push_bullet(cell, obj)
        burnside_class = classify(result)
        log_performance_metric(
            self.logger,
            f"apply_{functor.value}",
            (time.perf_counter() - start) * 1000,
            {"input_size": obj.size, "output_size": result.size},
        )
        return ApplyResult(functor, result, burnside_class)

    def burnside_table(self, group_name: str) -> BurnsideTable:
        """Multiplication table of ``Ω(pt/G)`` for a fixture group."""
        group = self.fixtures.group(group_name)
        self.logger.info(f"Computing Burnside table of {group_name} (order {group.order})")
        return burnside_table(ZeroCell.point(group))

    def sim(self, cell: OneCell) -> tuple[SImFactorization, dict[str, Any]]:
        """SIm-factorization of a cell with a plain summary."""
        fac = sim_factorize(cell)
        summary = {
            "sim_size": fac.sim.size,
            "group": fac.sim.group.name,
            "unit_base": fac.unit.base.tolist(),
            "alpha_tilde": fac.alpha_tilde.image.tolist(),
            "stab_surjective": is_stab_surjective(cell).holds,
        }
        return fac, summary

    def bipullback(self, f: OneCell, g: OneCell) -> tuple[Bipullback, dict[str, Any]]:
        pb = bipullback(f, g)
        summary = {
            "group": pb.cell.group.name,
            "group_order": pb.cell.group.order,
            "size": pb.cell.size,
            "points": [[int(v) for v in p] for p in pb.cell.gset.labels or ()],
            "left_base": pb.left.base.tolist(),
            "right_base": pb.right.base.tolist(),
            "kappa": pb.kappa.eps.tolist(),
        }
        return pb, summary

    def bicoproduct(self, x_cell: ZeroCell, y_cell: ZeroCell) -> tuple[Bicoproduct, dict[str, Any]]:
        bc = bicoproduct(x_cell, y_cell)
        summary = {
            "group": bc.cell.group.name,
            "group_order": bc.cell.group.order,
            "size": bc.cell.size,
            "left_base": bc.left.base.tolist(),
            "right_base": bc.right.base.tolist(),
        }
        return bc, summary
