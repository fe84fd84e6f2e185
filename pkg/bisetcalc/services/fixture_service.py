"""Shipped group fixtures, JSON loading and the built-in cell corpus."""

from dataclasses import dataclass
import logging
from pathlib import Path
from typing import Any

from ..algebra.groups import FiniteGroup, Subgroup, trivial_subgroup, whole
from ..algebra.gsets import coset_gset, make_gmap, point_gset, regular_gset, trivial_gset
from ..algebra.scat import (
    OneCell,
    OrbitChoice,
    TwoCell,
    ZeroCell,
    quotient_cell,
    restriction_cell,
)
from ..algebra.slices import SliceObject
from ..config.constants import ERROR_MESSAGES, FIXTURE_GROUPS
from ..config.settings import CalcConfig
from ..core.exceptions import FixtureNotFound, UnknownGroup
from ..utils.serialization import (
    Decoder,
    Encoder,
    GroupModel,
    GSetModel,
    OneCellModel,
    SliceObjectModel,
    TwoCellModel,
    parse_model,
    read_json,
)


@dataclass(frozen=True)
class CorpusCell:
    """A named 1-cell of the built-in corpus."""

    name: str
    cell: OneCell
    description: str

    @property
    def group_order(self) -> int:
        return max(self.cell.source.group.order, self.cell.target.group.order)

    @property
    def size(self) -> int:
        return max(self.cell.source.size, self.cell.target.size)


@dataclass(frozen=True)
class CorpusZeroCell:
    name: str
    cell: ZeroCell


class FixtureService:
    """Loads group tables from the fixture directory and builds the corpus from them."""

    def __init__(self, config: CalcConfig):
        self.config = config
        self.logger = logging.getLogger(__name__)
        self._groups: dict[str, FiniteGroup] | None = None

    @property
    def group_dir(self) -> Path:
        return self.config.fixture_dir / "groups"

    def groups(self) -> dict[str, FiniteGroup]:
        """All groups in the fixture directory, keyed by name."""
        if self._groups is None:
            if not self.group_dir.is_dir():
                raise FixtureNotFound(
                    f"Fixture directory not found: {self.group_dir}",
                    context={"path": str(self.group_dir)},
                )
            decoder = Decoder(self.group, self.config.max_group_order)
            loaded = {}
            for path in sorted(self.group_dir.glob("*.json")):
                model = parse_model(GroupModel, read_json(path), source=str(path))
                loaded[model.name] = decoder.group(model)
            self._groups = loaded
            self.logger.info(f"Loaded {len(loaded)} group fixtures from {self.group_dir}")
        return self._groups

    def group(self, name: str) -> FiniteGroup:
        known = self.groups()
        if name not in known:
            raise UnknownGroup(
                ERROR_MESSAGES["unknown_group"].format(name=name, known=", ".join(sorted(known))),
                context={"name": name, "known": sorted(known)},
            )
        return known[name]

    def group_names(self) -> list[str]:
        """Shipped groups first in corpus order, then any extra fixtures."""
        names = list(self.groups())
        return [g for g in FIXTURE_GROUPS if g in names] + sorted(
            g for g in names if g not in FIXTURE_GROUPS
        )

    def decoder(self) -> Decoder:
        return Decoder(self.group, self.config.max_group_order)

    def encoder(self) -> Encoder:
        return Encoder(self.groups())

    # =========================================================================
    # JSON documents
    # =========================================================================

    def parse_cell(self, payload: Any, source: str = "<input>") -> OneCell:
        return self.decoder().one_cell(parse_model(OneCellModel, payload, source))

    def parse_two_cell(self, payload: Any, source: str = "<input>") -> TwoCell:
        return self.decoder().two_cell(parse_model(TwoCellModel, payload, source))

    def parse_slice_object(self, payload: Any, source: str = "<input>") -> SliceObject:
        return self.decoder().slice_object(parse_model(SliceObjectModel, payload, source))

    def parse_zero_cell(self, payload: Any, source: str = "<input>") -> ZeroCell:
        return ZeroCell(self.decoder().gset(parse_model(GSetModel, payload, source)))

    def load_cell(self, path: str | Path) -> OneCell:
        return self.parse_cell(read_json(path), source=str(path))

    def load_two_cell(self, path: str | Path) -> TwoCell:
        return self.parse_two_cell(read_json(path), source=str(path))

    def load_slice_object(self, path: str | Path) -> SliceObject:
        return self.parse_slice_object(read_json(path), source=str(path))

    def load_zero_cell(self, path: str | Path) -> ZeroCell:
        return self.parse_zero_cell(read_json(path), source=str(path))

    # =========================================================================
    # Built-in corpus
    # =========================================================================

    def zero_cells(self) -> list[CorpusZeroCell]:
        e, c2, c3 = self.group("e"), self.group("C2"), self.group("C3")
        return [
            CorpusZeroCell("pt/e", ZeroCell.point(e)),
            CorpusZeroCell("empty/e", ZeroCell.empty(e)),
            CorpusZeroCell("pt/C2", ZeroCell.point(c2)),
            CorpusZeroCell("C2/C2", ZeroCell(regular_gset(c2))),
            CorpusZeroCell("2pt/C2", ZeroCell(trivial_gset(c2, 2))),
            CorpusZeroCell("pt/C3", ZeroCell.point(c3)),
        ]

    def cells(self) -> list[CorpusCell]:
        """Identities, the restriction and quotient cells, and cells with non-constant θ."""
        e, c2, c3 = self.group("e"), self.group("C2"), self.group("C3")
        v4, s3 = self.group("C2xC2"), self.group("S3")
        transposition = Subgroup(s3, (0, 1))
        rotations = Subgroup(s3, (0, 3, 4))
        s3_mod_c2 = coset_gset(s3, transposition)

        out = [
            CorpusCell("id pt/C2", OneCell.identity(ZeroCell.point(c2)), "identity"),
            CorpusCell("id C2/C2", OneCell.identity(ZeroCell(regular_gset(c2))), "identity"),
            CorpusCell("res e<C2", restriction_cell(trivial_subgroup(c2)), "inclusion e -> C2"),
            CorpusCell("res C2<S3", restriction_cell(transposition), "inclusion C2 -> S3"),
            CorpusCell("res C3<S3", restriction_cell(rotations), "inclusion C3 -> S3"),
            CorpusCell("quot C2", quotient_cell(whole(c2)), "quotient C2 -> e"),
            CorpusCell("quot S3/A3", quotient_cell(rotations), "quotient S3 -> S3/A3"),
            CorpusCell("quot V4/C2", quotient_cell(Subgroup(v4, (0, 1))), "quotient V4 -> V4/C2"),
            CorpusCell(
                "S3/C2 -> pt",
                OneCell.equivariant(make_gmap(s3_mod_c2, point_gset(s3), [0] * s3_mod_c2.size)),
                "equivariant collapse",
            ),
            CorpusCell(
                "free C2 -> pt/S3",
                OneCell.from_orbit_data(
                    ZeroCell(regular_gset(c2)),
                    ZeroCell.point(s3),
                    [OrbitChoice(0, {0: 0}, {1: 3})],
                ),
                "trivial on stabilizers, 3-cycle connector",
            ),
            CorpusCell(
                "2pt/C2 -> pt/C2",
                OneCell.from_orbit_data(
                    ZeroCell(trivial_gset(c2, 2)),
                    ZeroCell.point(c2),
                    [OrbitChoice(0, {0: 0, 1: 1}), OrbitChoice(0, {0: 0, 1: 0})],
                ),
                "identity on one point, trivial on the other",
            ),
            CorpusCell(
                "S3/C2 -> pt/C2",
                OneCell.from_orbit_data(
                    ZeroCell(s3_mod_c2), ZeroCell.point(c2), [OrbitChoice(0, {0: 0, 1: 1})]
                ),
                "stabilizer C2 mapped isomorphically",
            ),
            CorpusCell(
                "free C3 -> pt/C3",
                OneCell.from_orbit_data(
                    ZeroCell(regular_gset(c3)),
                    ZeroCell.point(c3),
                    [OrbitChoice(0, {0: 0}, {1: 1, 2: 1})],
                ),
                "connectors 1, 1",
            ),
            CorpusCell(
                "id pt/e", OneCell.identity(ZeroCell.point(e)), "identity on the trivial group"
            ),
        ]
        return out

    def corpus_cell(self, name: str) -> CorpusCell:
        """Look up a corpus cell by name.

        Raises:
            FixtureNotFound: No corpus cell has this name
        """
        for c in self.cells():
            if c.name == name:
                return c
        raise FixtureNotFound(
            f"Unknown corpus cell: {name}",
            context={"name": name, "known": [c.name for c in self.cells()]},
        )

    def corpus_zero_cell(self, name: str) -> CorpusZeroCell:
        for z in self.zero_cells():
            if z.name == name:
                return z
        raise FixtureNotFound(
            f"Unknown corpus 0-cell: {name}",
            context={"name": name, "known": [z.name for z in self.zero_cells()]},
        )

    def resolve_cell(self, ref: str | dict[str, Any]) -> OneCell:
        """A corpus cell name or an inline cell document."""
        if isinstance(ref, str):
            return self.corpus_cell(ref).cell
        return self.parse_cell(ref)

    def resolve_zero_cell(self, ref: str | dict[str, Any]) -> ZeroCell:
        if isinstance(ref, str):
            return self.corpus_zero_cell(ref).cell
        return self.parse_zero_cell(ref)

    def cells_within(self, group_cap: int, size_cap: int) -> list[CorpusCell]:
        return [c for c in self.cells() if c.group_order <= group_cap and c.size <= size_cap]

    def catalog(self) -> dict[str, Any]:
        """Summary of every fixture, served as an MCP resource."""
        groups = self.groups()
        return {
            "fixture_dir": str(self.config.fixture_dir),
            "groups": [
                {"name": name, "order": groups[name].order} for name in self.group_names()
            ],
            "zero_cells": [
                {"name": z.name, "group": z.cell.group.name, "size": z.cell.size}
                for z in self.zero_cells()
            ],
            "cells": [
                {
                    "name": c.name,
                    "description": c.description,
                    "source": repr(c.cell.source),
                    "target": repr(c.cell.target),
                    "equivariant": c.cell.is_equivariant,
                }
                for c in self.cells()
            ],
        }
