"""Service registry for dependency injection."""

from ..config.settings import CalcConfig, VerifierConfig
from ..core.progress_tracker import get_progress_tracker
from .calculator_service import CalculatorService
from .fixture_service import FixtureService
from .law_verifier import LawVerifierService

# Global service instances (initialized by the server or the CLI)
_fixture_service: FixtureService | None = None
_calculator_service: CalculatorService | None = None
_law_verifier: LawVerifierService | None = None


def initialize_services(calc_config: CalcConfig, verifier_config: VerifierConfig) -> None:
    """Initialize all services with configurations."""
    global _fixture_service, _calculator_service, _law_verifier

    _fixture_service = FixtureService(calc_config)
    _calculator_service = CalculatorService(_fixture_service, calc_config)
    _law_verifier = LawVerifierService(_fixture_service, verifier_config, get_progress_tracker())


def get_fixture_service() -> FixtureService:
    """Get the fixture service instance."""
    if _fixture_service is None:
        raise RuntimeError("Services not initialized. Call initialize_services() first.")
    return _fixture_service


def get_calculator_service() -> CalculatorService:
    """Get the calculator service instance."""
    if _calculator_service is None:
        raise RuntimeError("Services not initialized. Call initialize_services() first.")
    return _calculator_service


def get_law_verifier() -> LawVerifierService:
    """Get the law verifier instance."""
    if _law_verifier is None:
        raise RuntimeError("Services not initialized. Call initialize_services() first.")
    return _law_verifier
