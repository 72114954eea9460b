# MCP server tests
import json
import pytest
import sys
import os

# Add the project root to Python path
sys.path.append(os.path.join(os.path.dirname(__file__), '../../..'))

from servers.minfact_server.src.main import HANDLERS, handle_call_tool, handle_list_tools


class TestServer:
    """Test cases for tool listing and dispatch."""

    @pytest.mark.asyncio
    async def test_every_handler_is_listed(self):
        """The listed tools and the dispatch table agree."""
        tools = await handle_list_tools()

        assert {t.name for t in tools} == set(HANDLERS)

    @pytest.mark.asyncio
    async def test_call_tool(self):
        """Results come back as sorted JSON text."""
        (content,) = await handle_call_tool("enumerate_objects", {"kind": "ncp", "n": 3})

        assert json.loads(content.text) == {"count": 5, "kind": "ncp"}

    @pytest.mark.asyncio
    async def test_tool_error_is_returned(self):
        """Tool errors are reported in the payload."""
        (content,) = await handle_call_tool("sample_factorization", {"n": 0, "seed": 1})

        assert json.loads(content.text)["error_kind"] == "ConfigError"

    @pytest.mark.asyncio
    async def test_unknown_tool(self):
        (content,) = await handle_call_tool("nope", {})

        assert "Unknown tool" in json.loads(content.text)["error"]

    @pytest.mark.asyncio
    async def test_unexpected_argument(self):
        """Arguments the tool does not take are caught."""
        (content,) = await handle_call_tool("offspring_params", {"colour": "black"})

        assert "error" in json.loads(content.text)
