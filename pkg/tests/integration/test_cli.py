"""
Integration tests for the command-line front end.

Each test runs ``cli.main`` in-process and checks the exit code and the
emitted text or JSON.
"""

import json
import logging

import pytest

from bisetcalc import cli, services
from bisetcalc.config.constants import (
    EXIT_LAW_FAILED,
    EXIT_MISMATCH,
    EXIT_OK,
    EXIT_PARSE_ERROR,
    EXIT_UNKNOWN_GROUP,
)
from bisetcalc.core.exceptions import (
    CellMismatch,
    ComputationError,
    ParseError,
    UnknownGroup,
)
from bisetcalc.services.law_verifier import LawReport, SuiteReport


@pytest.fixture(autouse=True)
def clean_environment(monkeypatch):
    """Run every invocation against the packaged fixtures and defaults."""
    for name in (
        "BISETCALC_FIXTURES",
        "BISETCALC_BOUND",
        "BISETCALC_SEED",
        "BISETCALC_WORKERS",
        "BISETCALC_EXECUTOR",
        "BISETCALC_MAX_GROUP_ORDER",
        "BISETCALC_DEGREE_CAP",
    ):
        monkeypatch.delenv(name, raising=False)
    root = logging.getLogger()
    handlers, level = root.handlers[:], root.level
    yield
    root.handlers[:] = handlers
    root.setLevel(level)
    services._fixture_service = None
    services._calculator_service = None
    services._law_verifier = None


def run_json(capsys, *argv: str) -> tuple[int, dict]:
    code = cli.main([*argv, "--format", "json"])
    out = capsys.readouterr().out
    return code, json.loads(out) if out.strip() else {}


# =============================================================================
# apply
# =============================================================================


class TestApply:
    def test_plus_along_inclusion_from_file(self, capsys, examples_dir):
        code, payload = run_json(capsys, "apply", "plus", str(examples_dir / "res_e_C2.json"))

        assert code == EXIT_OK
        assert payload["functor"] == "plus"
        assert payload["summary"]["size"] == 2
        assert payload["summary"]["orbits"] == 1

    def test_star_along_quotient_by_name(self, capsys, examples_dir):
        code, payload = run_json(
            capsys, "apply", "star", "quot C2", str(examples_dir / "two_points_over_pt_e.json")
        )

        assert code == EXIT_OK
        assert payload["class"]["terms"] == [
            {"class": {"point": 0, "stabilizer": [0, 1]}, "coeff": 2}
        ]

    def test_bullet_text_output(self, capsys):
        code = cli.main(["apply", "bullet", "quot C2"])
        out = capsys.readouterr().out

        assert code == EXIT_OK
        assert "functor: bullet" in out
        assert "result: 1 points" in out

    def test_object_over_wrong_base(self, capsys, examples_dir):
        code, payload = run_json(
            capsys, "apply", "plus", "res e<C2", str(examples_dir / "free_C2_over_pt.json")
        )

        assert code == EXIT_MISMATCH
        assert payload["error"]["type"] == "BaseMismatch"
        assert payload["exit_code"] == EXIT_MISMATCH

    def test_unknown_input(self, capsys):
        code = cli.main(["apply", "plus", "no such cell"])
        captured = capsys.readouterr()

        assert code == EXIT_PARSE_ERROR
        assert "neither a file nor a corpus cell name" in captured.err


# =============================================================================
# Tables and constructions
# =============================================================================


class TestConstructions:
    def test_burnside_table_s3(self, capsys):
        code, payload = run_json(capsys, "burnside-table", "S3")

        assert code == EXIT_OK
        assert len(payload["basis"]) == 4
        assert [b["size"] for b in payload["basis"]] == [6, 3, 2, 1]

    def test_burnside_table_text(self, capsys):
        assert cli.main(["burnside-table", "C2"]) == EXIT_OK
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == "Ω(1/C2): 2 basis classes"
        assert "  [0]·[0] = [2, 0]" in lines

    def test_unknown_group(self, capsys):
        code, payload = run_json(capsys, "burnside-table", "A5")

        assert code == EXIT_UNKNOWN_GROUP
        assert payload["error"]["code"] == "E5002"

    def test_sim(self, capsys):
        code, payload = run_json(capsys, "sim", "res e<C2")

        assert code == EXIT_OK
        assert payload["sim_size"] == 2
        assert payload["alpha_tilde"] == [0, 0]
        assert payload["stab_surjective"] is False

    def test_bipullback(self, capsys):
        code, payload = run_json(capsys, "bipullback", "res e<C2", "res e<C2")

        assert code == EXIT_OK
        assert payload["size"] == 2
        assert payload["points"] == [[0, 0, 0], [0, 0, 1]]
        assert payload["kappa"] == [0, 1]

    def test_bipullback_of_mismatched_cells(self, capsys):
        code = cli.main(["bipullback", "res e<C2", "quot C2"])

        assert code == EXIT_MISMATCH
        assert "error:" in capsys.readouterr().err

    def test_bicoproduct(self, capsys, examples_dir):
        code, payload = run_json(capsys, "bicoproduct", "pt/C2", str(examples_dir / "regular_C2.json"))

        assert code == EXIT_OK
        assert payload["group_order"] == 4
        assert payload["size"] == 6


# =============================================================================
# verify
# =============================================================================


class TestVerify:
    def test_bound_zero_warns(self, capsys):
        code, payload = run_json(capsys, "verify", "der2", "--bound", "0")

        assert code == EXIT_OK
        assert payload["holds"]
        assert any("bound 0" in w for w in payload["warnings"])
        assert "operation_id" not in payload

    def test_text_summary(self, capsys):
        assert cli.main(["verify", "der2", "--bound", "1"]) == EXIT_OK
        lines = capsys.readouterr().out.splitlines()
        assert lines[0].startswith("law")
        assert lines[-1].endswith("checks hold")

    @pytest.mark.slow
    def test_der3_on_corpus(self, capsys):
        code, payload = run_json(capsys, "verify", "der3", "--bound", "3")

        assert code == EXIT_OK
        assert payload["failed"] == 0
        assert payload["total"] > 0

    def test_unknown_law(self, capsys):
        assert cli.main(["verify", "der9"]) == EXIT_PARSE_ERROR

    def test_negative_bound(self, capsys):
        assert cli.main(["verify", "der1", "--bound", "-1"]) == EXIT_PARSE_ERROR

    def test_failing_suite_exits_with_law_failed(self, capsys, monkeypatch):
        def failing(self, law_ids, bound, seed=0):
            return SuiteReport(list(law_ids), bound, [LawReport("der2", "pt/C2", False, bound)])

        monkeypatch.setattr("bisetcalc.services.law_verifier.LawVerifierService.run_suite", failing)
        code, payload = run_json(capsys, "verify", "der2", "--bound", "1")

        assert code == EXIT_LAW_FAILED
        assert payload["failed"] == 1


# =============================================================================
# fixtures and formats
# =============================================================================


class TestFixturesAndFormats:
    def test_fixture_listing(self, capsys):
        assert cli.main(["fixtures"]) == EXIT_OK
        out = capsys.readouterr().out
        assert out.startswith("groups: e (1), C2 (2)")
        assert "cell res e<C2: inclusion e -> C2" in out

    def test_fixture_listing_json_hides_paths(self, capsys):
        code, payload = run_json(capsys, "fixtures")

        assert code == EXIT_OK
        assert "fixture_dir" not in payload

    def test_bad_format(self, capsys):
        code = cli.main(["fixtures", "--format", "yaml"])

        assert code == EXIT_PARSE_ERROR
        assert capsys.readouterr().out == ""

    def test_missing_fixture_dir(self, capsys, tmp_path):
        code = cli.main(["burnside-table", "C2", "--fixtures", str(tmp_path)])
        assert code == EXIT_PARSE_ERROR

    def test_bad_environment(self, capsys, monkeypatch):
        monkeypatch.setenv("BISETCALC_BOUND", "lots")
        assert cli.main(["fixtures"]) == EXIT_PARSE_ERROR


@pytest.mark.parametrize(
    ("error", "code"),
    [
        (UnknownGroup("x"), EXIT_UNKNOWN_GROUP),
        (CellMismatch("x"), EXIT_MISMATCH),
        (ParseError("x"), EXIT_PARSE_ERROR),
        (ComputationError("x"), 5),
    ],
)
def test_exit_code_mapping(error, code):
    assert cli.exit_code_for(error) == code
