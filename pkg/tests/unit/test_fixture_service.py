"""
Tests for group fixtures, example documents and the built-in corpus.
"""

import json

import pytest

from bisetcalc.algebra.scat import is_stab_surjective
from bisetcalc.config.constants import FIXTURE_GROUPS
from bisetcalc.config.settings import CalcConfig
from bisetcalc.core.exceptions import FixtureNotFound, OrderExceeded, UnknownGroup
from bisetcalc.services.fixture_service import FixtureService


class TestGroups:
    def test_shipped_groups(self, fixture_service):
        assert fixture_service.group_names() == FIXTURE_GROUPS
        assert fixture_service.group("S3").order == 6
        assert fixture_service.group("C2xC2").order == 4

    def test_unknown_group(self, fixture_service):
        with pytest.raises(UnknownGroup) as exc_info:
            fixture_service.group("A5")

        assert "S3" in exc_info.value.context["known"]

    def test_missing_fixture_dir(self, tmp_path):
        service = FixtureService(CalcConfig(fixture_dir=tmp_path / "nowhere"))
        with pytest.raises(FixtureNotFound):
            service.groups()

    def test_order_cap_applies_to_fixtures(self, tmp_path):
        groups = tmp_path / "groups"
        groups.mkdir()
        table = [[(a + b) % 5 for b in range(5)] for a in range(5)]
        (groups / "C5.json").write_text(json.dumps({"name": "C5", "mul": table}), encoding="utf-8")

        with pytest.raises(OrderExceeded):
            FixtureService(CalcConfig(fixture_dir=tmp_path, max_group_order=4)).groups()

    def test_extra_fixtures_sorted_after_shipped(self, tmp_path):
        groups = tmp_path / "groups"
        groups.mkdir()
        for name, table in [("e", [[0]]), ("Z", [[0]]), ("Y", [[0]])]:
            (groups / f"{name}.json").write_text(
                json.dumps({"name": name, "mul": table}), encoding="utf-8"
            )

        service = FixtureService(CalcConfig(fixture_dir=tmp_path))
        assert service.group_names() == ["e", "Y", "Z"]


class TestExamples:
    def test_cells(self, fixture_service, examples_dir, res_cell, quot_cell):
        assert fixture_service.load_cell(examples_dir / "res_e_C2.json") == res_cell
        assert fixture_service.load_cell(examples_dir / "quot_C2.json") == quot_cell

    def test_cell_with_varying_theta(self, fixture_service, examples_dir):
        cell = fixture_service.load_cell(examples_dir / "two_points_to_pt_C2.json")
        assert cell.theta.tolist() == [[0, 1], [0, 0]]
        assert not cell.is_equivariant

    def test_slice_objects(self, fixture_service, examples_dir, free_over_pt):
        assert fixture_service.load_slice_object(examples_dir / "free_C2_over_pt.json") == free_over_pt
        two = fixture_service.load_slice_object(examples_dir / "two_points_over_pt_e.json")
        assert two.size == 2

    def test_zero_cell(self, fixture_service, examples_dir, free_c2):
        assert fixture_service.load_zero_cell(examples_dir / "regular_C2.json") == free_c2

    def test_missing_example(self, fixture_service, examples_dir):
        with pytest.raises(FixtureNotFound):
            fixture_service.load_cell(examples_dir / "absent.json")


class TestCorpus:
    def test_cells_are_valid_and_named_uniquely(self, fixture_service):
        names = [c.name for c in fixture_service.cells()]
        assert len(names) == len(set(names))
        assert "res e<C2" in names

    def test_lookup(self, fixture_service, quot_cell):
        assert fixture_service.corpus_cell("quot C2").cell == quot_cell
        assert is_stab_surjective(fixture_service.corpus_cell("quot S3/A3").cell)
        with pytest.raises(FixtureNotFound):
            fixture_service.corpus_cell("quot C7")

    def test_resolve(self, fixture_service, res_cell, pt_c2):
        assert fixture_service.resolve_cell("res e<C2") == res_cell
        inline = {"source": {"group": "e", "size": 1}, "target": {"group": "C2", "size": 1}, "base": [0], "theta": [[0]]}
        assert fixture_service.resolve_cell(inline) == res_cell
        assert fixture_service.resolve_zero_cell("pt/C2") == pt_c2
        with pytest.raises(FixtureNotFound):
            fixture_service.corpus_zero_cell("pt/C9")

    def test_cells_within_caps(self, fixture_service):
        small = fixture_service.cells_within(2, 2)
        assert all(c.group_order <= 2 and c.size <= 2 for c in small)
        assert len(small) < len(fixture_service.cells())

    def test_catalog(self, fixture_service):
        catalog = fixture_service.catalog()
        assert [g["name"] for g in catalog["groups"]] == FIXTURE_GROUPS
        assert {"name": "pt/e", "group": "e", "size": 1} in catalog["zero_cells"]
        assert any(c["equivariant"] for c in catalog["cells"])
