"""
Shared test fixtures for the bisetcalc test suite.

Groups, 0-cells and the corpus cells used across the unit and integration
tests live here.
"""

from pathlib import Path

import pytest

from bisetcalc import services
from bisetcalc.algebra.groups import (
    FiniteGroup,
    Subgroup,
    cyclic_group,
    symmetric_group,
    trivial_group,
    trivial_subgroup,
    whole,
)
from bisetcalc.algebra.gsets import regular_gset, trivial_gset
from bisetcalc.algebra.scat import OneCell, ZeroCell, quotient_cell, restriction_cell
from bisetcalc.algebra.slices import SliceObject, make_slice_object
from bisetcalc.config.settings import PACKAGED_FIXTURE_DIR, CalcConfig, VerifierConfig, WorkerKind
from bisetcalc.core.progress_tracker import ProgressTracker
from bisetcalc.services.fixture_service import FixtureService

EXAMPLES_DIR = PACKAGED_FIXTURE_DIR / "examples"

# =============================================================================
# Group Fixtures
# =============================================================================


@pytest.fixture
def e() -> FiniteGroup:
    return trivial_group()


@pytest.fixture
def c2() -> FiniteGroup:
    return cyclic_group(2)


@pytest.fixture
def c3() -> FiniteGroup:
    return cyclic_group(3)


@pytest.fixture
def s3() -> FiniteGroup:
    """S3 with 0:(012) 1:(021) 2:(102) 3:(120) 4:(201) 5:(210)."""
    return symmetric_group(3)


# =============================================================================
# 0-cell Fixtures
# =============================================================================


@pytest.fixture
def pt_e(e) -> ZeroCell:
    return ZeroCell.point(e)


@pytest.fixture
def pt_c2(c2) -> ZeroCell:
    return ZeroCell.point(c2)


@pytest.fixture
def free_c2(c2) -> ZeroCell:
    """The regular C2-set as a 0-cell."""
    return ZeroCell(regular_gset(c2))


# =============================================================================
# 1-cell Fixtures
# =============================================================================


@pytest.fixture
def res_cell(c2) -> OneCell:
    """``pt/e → pt/C2`` along the inclusion of the trivial subgroup."""
    return restriction_cell(trivial_subgroup(c2))


@pytest.fixture
def quot_cell(c2) -> OneCell:
    """``pt/C2 → pt/e`` along the quotient by C2."""
    return quotient_cell(whole(c2))


@pytest.fixture
def res_s3_cell(s3) -> OneCell:
    """``pt/C2 → pt/S3`` along the transposition subgroup."""
    return restriction_cell(Subgroup(s3, (0, 1)))


# =============================================================================
# Slice Object Fixtures
# =============================================================================


@pytest.fixture
def free_over_pt(c2, pt_c2) -> SliceObject:
    """The regular C2-set over ``pt/C2``."""
    return make_slice_object(pt_c2, regular_gset(c2), [0, 0])


@pytest.fixture
def two_fixed_over_pt(c2, pt_c2) -> SliceObject:
    """Two fixed points over ``pt/C2``."""
    return make_slice_object(pt_c2, trivial_gset(c2, 2), [0, 0])


# =============================================================================
# Service Fixtures
# =============================================================================


@pytest.fixture
def calc_config() -> CalcConfig:
    return CalcConfig(fixture_dir=PACKAGED_FIXTURE_DIR)


@pytest.fixture
def verifier_config() -> VerifierConfig:
    return VerifierConfig(max_workers=2, executor=WorkerKind.THREAD)


@pytest.fixture
def fixture_service(calc_config) -> FixtureService:
    return FixtureService(calc_config)


@pytest.fixture
def tracker() -> ProgressTracker:
    return ProgressTracker()


@pytest.fixture
def initialized_services(calc_config, verifier_config):
    """Initialize the global service registry for one test."""
    services.initialize_services(calc_config, verifier_config)
    yield
    services._fixture_service = None
    services._calculator_service = None
    services._law_verifier = None


@pytest.fixture
def examples_dir() -> Path:
    return EXAMPLES_DIR
