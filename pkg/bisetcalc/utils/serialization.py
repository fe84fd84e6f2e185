"""JSON wire formats for groups, G-sets, cells and slice objects.

Groups may be written inline (``{"name", "order", "mul"}``) or referenced by
fixture name. A G-set is either an explicit action table (``act[g][x]``) or a
``size`` with the trivial action.
"""

from collections.abc import Callable, Mapping
import json
import logging
from pathlib import Path
from typing import Any, TypeVar

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from ..algebra.groups import FiniteGroup, make_group
from ..algebra.gsets import GMap, GSet, make_gmap, make_gset, trivial_gset
from ..algebra.scat import OneCell, TwoCell, ZeroCell, make_one_cell, make_two_cell
from ..algebra.slices import SliceObject, make_slice_object
from ..core.exceptions import FixtureNotFound, ParseError

logger = logging.getLogger(__name__)

ModelT = TypeVar("ModelT", bound=BaseModel)


class GroupModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    name: str = "G"
    order: int | None = Field(default=None, ge=1)
    mul: list[list[int]]

    @model_validator(mode="after")
    def _order_matches(self) -> "GroupModel":
        if self.order is not None and self.order != len(self.mul):
            raise ValueError(f"order {self.order} does not match a table with {len(self.mul)} rows")
        return self


class GSetModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    group: str | GroupModel
    act: list[list[int]] | None = None
    size: int | None = Field(default=None, ge=0)
    labels: list[Any] | None = None

    @model_validator(mode="after")
    def _one_description(self) -> "GSetModel":
        if (self.act is None) == (self.size is None):
            raise ValueError("give exactly one of 'act' and 'size'")
        return self


class GMapModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    source: GSetModel
    target: GSetModel
    image: list[int]


class OneCellModel(BaseModel):
    """``theta`` may be omitted when both sides share a group; the cell is then equivariant."""

    model_config = ConfigDict(extra="forbid")

    source: GSetModel
    target: GSetModel
    base: list[int]
    theta: list[list[int]] | None = None


class TwoCellModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    source: OneCellModel
    target: OneCellModel
    eps: list[int]


class SliceObjectModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    base: GSetModel
    total: GSetModel
    structure: list[int]


def _freeze(label: Any) -> Any:
    if isinstance(label, list):
        return tuple(_freeze(item) for item in label)
    return label


def _thaw(label: Any) -> Any:
    if isinstance(label, tuple):
        return [_thaw(item) for item in label]
    if isinstance(label, np.integer):
        return int(label)
    return label


def read_json(path: str | Path) -> Any:
    """
    Read a JSON document.

    Raises:
        FixtureNotFound: The file does not exist
        ParseError: The file is not valid JSON
    """
    file = Path(path)
    if not file.is_file():
        raise FixtureNotFound(f"File not found: {file}", context={"path": str(file)})
    try:
        return json.loads(file.read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise ParseError(
            f"{file}: invalid JSON at line {e.lineno}",
            context={"path": str(file), "line": e.lineno},
            cause=e,
        )


def parse_model(model: type[ModelT], payload: Any, source: str = "<input>") -> ModelT:
    """Validate ``payload`` against ``model``, raising ``ParseError`` with the pydantic errors."""
    try:
        return model.model_validate(payload)
    except ValidationError as e:
        errors = [
            {"loc": ".".join(str(p) for p in err["loc"]), "msg": err["msg"]} for err in e.errors()
        ]
        raise ParseError(
            f"{source}: does not match the {model.__name__} schema",
            context={"source": source, "errors": errors},
            cause=e,
        )


class Decoder:
    """Turns wire models into validated algebraic objects."""

    def __init__(
        self, resolve_group: Callable[[str], FiniteGroup], max_group_order: int | None = None
    ) -> None:
        self.resolve_group = resolve_group
        self.max_group_order = max_group_order

    def group(self, ref: str | GroupModel) -> FiniteGroup:
        if isinstance(ref, str):
            return self.resolve_group(ref)
        return make_group(ref.mul, name=ref.name, max_order=self.max_group_order)

    def gset(self, model: GSetModel) -> GSet:
        group = self.group(model.group)
        if model.size is not None:
            gset = trivial_gset(group, model.size)
            if model.labels is None:
                return gset
            return make_gset(group, gset.act, [_freeze(lab) for lab in model.labels])
        labels = None if model.labels is None else [_freeze(lab) for lab in model.labels]
        act = np.array(model.act, dtype=np.int64)
        if act.size == 0:
            act = act.reshape(group.order, 0)
        return make_gset(group, act, labels)

    def gmap(self, model: GMapModel) -> GMap:
        return make_gmap(self.gset(model.source), self.gset(model.target), model.image)

    def one_cell(self, model: OneCellModel) -> OneCell:
        source, target = self.gset(model.source), self.gset(model.target)
        if model.theta is None:
            if source.group != target.group:
                raise ParseError("theta may only be omitted when both sides share a group")
            return OneCell.equivariant(make_gmap(source, target, model.base))
        return make_one_cell(ZeroCell(source), ZeroCell(target), model.base, model.theta)

    def two_cell(self, model: TwoCellModel) -> TwoCell:
        return make_two_cell(self.one_cell(model.source), self.one_cell(model.target), model.eps)

    def slice_object(self, model: SliceObjectModel) -> SliceObject:
        return make_slice_object(
            ZeroCell(self.gset(model.base)), self.gset(model.total), model.structure
        )


class Encoder:
    """Dict forms matching the wire models; known groups are written by name."""

    def __init__(self, known_groups: Mapping[str, FiniteGroup] | None = None) -> None:
        self.known_groups = known_groups or {}

    def group(self, group: FiniteGroup) -> str | dict[str, Any]:
        if self.known_groups.get(group.name) == group:
            return group.name
        return {"name": group.name, "order": group.order, "mul": group.mul.tolist()}

    def gset(self, gset: GSet) -> dict[str, Any]:
        data: dict[str, Any] = {"group": self.group(gset.group), "act": gset.act.tolist()}
        if gset.labels is not None:
            data["labels"] = [_thaw(lab) for lab in gset.labels]
        return data

    def gmap(self, gmap: GMap) -> dict[str, Any]:
        return {
            "source": self.gset(gmap.source),
            "target": self.gset(gmap.target),
            "image": gmap.image.tolist(),
        }

    def one_cell(self, cell: OneCell) -> dict[str, Any]:
        return {
            "source": self.gset(cell.source.gset),
            "target": self.gset(cell.target.gset),
            "base": cell.base.tolist(),
            "theta": cell.theta.tolist(),
        }

    def two_cell(self, two: TwoCell) -> dict[str, Any]:
        return {
            "source": self.one_cell(two.source_cell),
            "target": self.one_cell(two.target_cell),
            "eps": two.eps.tolist(),
        }

    def slice_object(self, obj: SliceObject) -> dict[str, Any]:
        return {
            "base": self.gset(obj.base_cell.gset),
            "total": self.gset(obj.total),
            "structure": obj.structure.image.tolist(),
        }
