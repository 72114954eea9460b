# Levy path tool tests
import pytest
import sys
import os

# Add the project root to Python path
sys.path.append(os.path.join(os.path.dirname(__file__), '../../../..'))

from servers.minfact_server.src.tools.levy_path import levy_path


class TestLevyPath:
    """Test cases for the path sampling tool."""

    @pytest.mark.asyncio
    async def test_process_rows(self):
        """One (time, value) row per grid point, starting at the origin."""
        result = await levy_path(kind="process", seed=1, points=11)

        assert len(result["rows"]) == 11
        assert result["rows"][0] == [0.0, 0.0]
        assert result["rows"][-1][0] == 1.0
        assert result["cadlag"]

    @pytest.mark.asyncio
    async def test_discrete_excursion_with_lamination(self):
        """Excursions code a lamination."""
        result = await levy_path(kind="excursion", seed=2, points=21, n=200, with_lamination=True)

        assert all(v >= 0 for _, v in result["rows"][:-1])
        assert result["lamination"]["schema"] == "minfact.lamination/1"
        assert result["longest_chord"] >= 0.0

    @pytest.mark.asyncio
    async def test_brownian_excursion(self):
        """Brownian excursions live on a grid of 2n+1 points."""
        result = await levy_path(kind="brownian", seed=3, n=50, with_lamination=True)

        assert len(result["rows"]) == 101
        assert result["lamination"]["n"] == 0

    @pytest.mark.asyncio
    async def test_bridge_has_no_lamination(self):
        """Only excursions code laminations."""
        result = await levy_path(kind="bridge", seed=1, points=11, n=100, with_lamination=True)

        assert result["error_kind"] == "RangeError"

    @pytest.mark.asyncio
    async def test_unknown_kind(self):
        """Unknown kinds are rejected."""
        result = await levy_path(kind="meander", seed=1)

        assert result["error_kind"] == "RangeError"
        assert result["kind"] == "meander"
