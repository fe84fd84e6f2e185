"""
Integration tests for the MCP tools and resources.

Drives the server through the in-memory FastMCP client against the packaged
fixtures.
"""

import json

from fastmcp import Client, FastMCP
import pytest

from bisetcalc.config.settings import ServerConfig
from bisetcalc.core.exceptions import ComputationError, FixtureNotFound
from bisetcalc.core.server import BisetCalcMCP
from bisetcalc.server import create_app, create_wrapper_app
from bisetcalc.services.law_verifier import LawVerifierService

pytestmark = pytest.mark.integration

TWO_POINTS_OVER_PT_E = {
    "base": {"group": "e", "size": 1},
    "total": {"group": "e", "size": 2},
    "structure": [0, 0],
}
FIXED_POINT_OVER_PT_C2 = {
    "base": {"group": "C2", "size": 1},
    "total": {"group": "C2", "size": 1},
    "structure": [0],
}


@pytest.fixture
def mcp_server(initialized_services):
    return BisetCalcMCP(ServerConfig()).server


async def read_json_resource(client: Client, uri: str) -> dict:
    contents = await client.read_resource(uri)
    return json.loads(contents[0].text)


@pytest.mark.asyncio
class TestRegistration:
    async def test_tools_and_resources(self, mcp_server):
        async with Client(mcp_server) as client:
            tools = {t.name for t in await client.list_tools()}
            resources = {str(r.uri) for r in await client.list_resources()}
            templates = {t.uriTemplate for t in await client.list_resource_templates()}

        assert tools == {"apply_functor", "burnside_table", "sim_factorize", "verify_laws"}
        assert "bisetcalc://fixtures" in resources
        assert "bisetcalc://operations" in resources
        assert "bisetcalc://operations/{operation_id}" in templates


@pytest.mark.asyncio
class TestApplyFunctor:
    async def test_pullback_along_quotient(self, mcp_server):
        async with Client(mcp_server) as client:
            result = await client.call_tool(
                "apply_functor", {"functor": "star", "cell": "quot C2", "obj": TWO_POINTS_OVER_PT_E}
            )

        payload = result.structured_content
        assert payload["summary"]["size"] == 2
        assert payload["class"]["terms"][0]["coeff"] == 2
        assert "2 points -> 2 points" in result.content[0].text

    async def test_terminal_object_by_default(self, mcp_server):
        async with Client(mcp_server) as client:
            result = await client.call_tool("apply_functor", {"functor": "plus", "cell": "res e<C2"})

        assert result.structured_content["summary"]["size"] == 2
        assert result.structured_content["summary"]["orbits"] == 1

    async def test_base_mismatch_is_reported(self, mcp_server):
        async with Client(mcp_server) as client:
            result = await client.call_tool(
                "apply_functor",
                {"functor": "plus", "cell": "res e<C2", "obj": FIXED_POINT_OVER_PT_C2},
            )

        assert result.structured_content["error"] == "mismatch"
        assert result.structured_content["type"] == "BaseMismatch"

    async def test_unknown_functor(self, mcp_server):
        async with Client(mcp_server) as client:
            result = await client.call_tool("apply_functor", {"functor": "sharp", "cell": "quot C2"})

        assert result.structured_content["error"] == "invalid_input"
        assert result.structured_content["type"] == "ValidationError"


@pytest.mark.asyncio
class TestTablesAndFactorizations:
    async def test_burnside_table(self, mcp_server):
        async with Client(mcp_server) as client:
            result = await client.call_tool("burnside_table", {"group": "C3"})

        payload = result.structured_content
        assert [b["size"] for b in payload["basis"]] == [3, 1]
        assert payload["products"][0][0] == {"0": 3}
        assert result.content[0].text.startswith("Ω(1/C3): 2 basis classes")

    async def test_unknown_group(self, mcp_server):
        async with Client(mcp_server) as client:
            result = await client.call_tool("burnside_table", {"group": "A5"})

        assert result.structured_content["type"] == "UnknownGroup"

    async def test_sim_of_stab_surjective_cell(self, mcp_server):
        async with Client(mcp_server) as client:
            result = await client.call_tool("sim_factorize", {"cell": "quot C2"})

        payload = result.structured_content
        assert payload["sim_size"] == 1
        assert payload["stab_surjective"] is True
        assert "is stab-surjective" in result.content[0].text

    async def test_sim_of_inline_cell(self, mcp_server):
        inline = {
            "source": {"group": "e", "size": 1},
            "target": {"group": "C2", "size": 1},
            "base": [0],
            "theta": [[0]],
        }
        async with Client(mcp_server) as client:
            result = await client.call_tool("sim_factorize", {"cell": inline})

        assert result.structured_content["sim_size"] == 2
        assert result.structured_content["stab_surjective"] is False


@pytest.mark.asyncio
class TestVerifyLaws:
    async def test_run_is_tracked(self, mcp_server):
        async with Client(mcp_server) as client:
            result = await client.call_tool("verify_laws", {"laws": ["der2"], "bound": 0})
            payload = result.structured_content
            progress = await read_json_resource(
                client, f"bisetcalc://operations/{payload['operation_id']}"
            )
            listing = await read_json_resource(client, "bisetcalc://operations")

        assert payload["holds"]
        assert payload["laws"] == ["der2"]
        assert progress["status"] == "completed"
        assert progress["progress_percent"] == 100
        assert not progress["is_active"]
        assert payload["operation_id"] in {op["operation_id"] for op in listing["operations"]}

    async def test_unknown_law(self, mcp_server):
        async with Client(mcp_server) as client:
            result = await client.call_tool("verify_laws", {"laws": ["der5"]})

        assert result.structured_content["error"] == "validation_error"

    async def test_suite_error_is_reported(self, mcp_server, monkeypatch):
        def fail(self, law_ids, bound, seed=0):
            raise ComputationError("corpus exhausted", context={"bound": bound})

        monkeypatch.setattr(LawVerifierService, "run_suite", fail)
        async with Client(mcp_server) as client:
            result = await client.call_tool("verify_laws", {"laws": ["der1"], "bound": 1})

        payload = result.structured_content
        assert payload["error"] == "verification_error"
        assert payload["type"] == "ComputationError"
        assert payload["context"] == {"bound": 1}

    async def test_unknown_operation(self, mcp_server):
        async with Client(mcp_server) as client:
            progress = await read_json_resource(client, "bisetcalc://operations/missing")

        assert progress["error"] == "operation_not_found"


@pytest.mark.asyncio
async def test_fixture_catalog(mcp_server):
    async with Client(mcp_server) as client:
        catalog = await read_json_resource(client, "bisetcalc://fixtures")

    assert [g["name"] for g in catalog["groups"]][:2] == ["e", "C2"]
    assert [law["id"] for law in catalog["laws"]][0] == "der1"
    assert any(c["name"] == "quot S3/A3" for c in catalog["cells"])


class TestStartup:
    def test_create_app(self, initialized_services, monkeypatch):
        monkeypatch.delenv("BISETCALC_FIXTURES", raising=False)
        assert isinstance(create_app(), FastMCP)

    def test_bad_fixture_dir_fails_at_startup(self, initialized_services, monkeypatch, tmp_path):
        monkeypatch.setenv("BISETCALC_FIXTURES", str(tmp_path))
        with pytest.raises(FixtureNotFound):
            create_wrapper_app()
