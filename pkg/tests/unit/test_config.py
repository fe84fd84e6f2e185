"""
Property-based tests for configuration loading.

This module tests:
- CalcConfig, VerifierConfig and ServerConfig loading from the environment
- Rejection of malformed integer settings
"""

import os
from unittest.mock import patch

from hypothesis import given, settings
from hypothesis import strategies as st
import pytest

from bisetcalc.config.constants import (
    DEFAULT_BOUND,
    DEFAULT_DEGREE_CAP,
    DEFAULT_MAX_GROUP_ORDER,
    DEFAULT_WORKERS,
)
from bisetcalc.config.settings import (
    PACKAGED_FIXTURE_DIR,
    CalcConfig,
    FunctorKind,
    OutputFormat,
    ServerConfig,
    VerifierConfig,
    WorkerKind,
)
from bisetcalc.core.exceptions import ConfigurationError, ErrorCode

# =============================================================================
# CalcConfig
# =============================================================================


class TestCalcConfigLoading:
    """
    *For any* environment state, `CalcConfig.from_env()` either returns a config
    built from the BISETCALC_* variables or raises ConfigurationError.
    """

    def test_defaults(self):
        with patch.dict(os.environ, {}, clear=True):
            config = CalcConfig.from_env()

        assert config.fixture_dir == PACKAGED_FIXTURE_DIR
        assert config.max_group_order == DEFAULT_MAX_GROUP_ORDER
        assert config.default_bound == DEFAULT_BOUND
        assert config.degree_cap == DEFAULT_DEGREE_CAP
        assert config.seed == 0

    def test_fixture_dir_override(self, tmp_path):
        with patch.dict(os.environ, {"BISETCALC_FIXTURES": str(tmp_path)}, clear=True):
            config = CalcConfig.from_env()

        assert config.fixture_dir == tmp_path.resolve()

    @given(
        bound=st.integers(min_value=0, max_value=64),
        order=st.integers(min_value=1, max_value=512),
        seed=st.integers(min_value=0, max_value=2**31),
    )
    @settings(max_examples=50)
    def test_integer_settings_round_trip(self, bound: int, order: int, seed: int):
        env = {
            "BISETCALC_BOUND": str(bound),
            "BISETCALC_MAX_GROUP_ORDER": str(order),
            "BISETCALC_SEED": str(seed),
        }
        with patch.dict(os.environ, env, clear=True):
            config = CalcConfig.from_env()

        assert config.default_bound == bound
        assert config.max_group_order == order
        assert config.seed == seed

    def test_blank_value_uses_default(self):
        with patch.dict(os.environ, {"BISETCALC_BOUND": "  "}, clear=True):
            assert CalcConfig.from_env().default_bound == DEFAULT_BOUND

    @pytest.mark.parametrize("raw", ["six", "1.5", "0x10"])
    def test_non_integer_raises(self, raw: str):
        with patch.dict(os.environ, {"BISETCALC_BOUND": raw}, clear=True):
            with pytest.raises(ConfigurationError) as exc_info:
                CalcConfig.from_env()

        assert exc_info.value.error_code == ErrorCode.CONFIG_INVALID_VALUE
        assert exc_info.value.context["variable"] == "BISETCALC_BOUND"
        assert isinstance(exc_info.value.cause, ValueError)

    def test_below_minimum_raises(self):
        with patch.dict(os.environ, {"BISETCALC_MAX_GROUP_ORDER": "0"}, clear=True):
            with pytest.raises(ConfigurationError) as exc_info:
                CalcConfig.from_env()

        assert exc_info.value.context["value"] == 0


# =============================================================================
# VerifierConfig and ServerConfig
# =============================================================================


class TestVerifierConfigLoading:
    def test_default_workers(self):
        with patch.dict(os.environ, {}, clear=True):
            assert VerifierConfig.from_env().max_workers == DEFAULT_WORKERS

    def test_workers_from_env(self):
        with patch.dict(os.environ, {"BISETCALC_WORKERS": "1"}, clear=True):
            assert VerifierConfig.from_env().max_workers == 1

    def test_zero_workers_rejected(self):
        with patch.dict(os.environ, {"BISETCALC_WORKERS": "0"}, clear=True):
            with pytest.raises(ConfigurationError):
                VerifierConfig.from_env()

    def test_default_executor_is_process_pool(self):
        with patch.dict(os.environ, {}, clear=True):
            assert VerifierConfig.from_env().executor == WorkerKind.PROCESS

    def test_thread_executor_from_env(self):
        with patch.dict(os.environ, {"BISETCALC_EXECUTOR": " Thread "}, clear=True):
            assert VerifierConfig.from_env().executor == WorkerKind.THREAD

    def test_unknown_executor_rejected(self):
        with patch.dict(os.environ, {"BISETCALC_EXECUTOR": "fibers"}, clear=True):
            with pytest.raises(ConfigurationError) as exc_info:
                VerifierConfig.from_env()
        assert exc_info.value.context["variable"] == "BISETCALC_EXECUTOR"


class TestServerConfigLoading:
    def test_defaults(self):
        with patch.dict(os.environ, {}, clear=True):
            config = ServerConfig.from_env()

        assert config.server_name == "bisetcalc"
        assert config.transport == "stdio"
        assert config.port == 9000
        assert not config.mask_error_details

    def test_http_transport(self):
        env = {
            "FASTMCP_TRANSPORT": "http",
            "FASTMCP_HOST": "0.0.0.0",
            "FASTMCP_PORT": "8123",
            "FASTMCP_MASK_ERRORS": "TRUE",
        }
        with patch.dict(os.environ, env, clear=True):
            config = ServerConfig.from_env()

        assert config.transport == "http"
        assert config.host == "0.0.0.0"
        assert config.port == 8123
        assert config.mask_error_details


class TestEnums:
    def test_output_formats(self):
        assert [f.value for f in OutputFormat] == ["text", "json"]

    def test_functor_kinds(self):
        assert FunctorKind("bullet") is FunctorKind.BULLET
