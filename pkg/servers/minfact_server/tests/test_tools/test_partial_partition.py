# Partial product tool tests
import pytest
import sys
import os

# Add the project root to Python path
sys.path.append(os.path.join(os.path.dirname(__file__), '../../../..'))

from servers.minfact_server.src.tools.common import is_usage_error, resolve_k
from servers.minfact_server.src.tools.offspring_params import offspring_params
from servers.minfact_server.src.tools.partial_partition import partial_partition


class TestPartialPartition:
    """Test cases for the partial product tool."""

    @pytest.mark.asyncio
    @pytest.mark.parametrize("route", ["factorization", "tree"])
    async def test_block_count(self, route):
        """K factors leave n-K blocks on either route."""
        result = await partial_partition(n=10, seed=4, K=3, route=route)

        assert result["route"] == route
        assert len(result["partition"]["blocks"]) == 7
        assert len(result["kreweras"]["blocks"]) == 4
        assert 0.0 < result["longest_chord"] <= 2.0

    @pytest.mark.asyncio
    async def test_with_tree(self):
        """The dual tree has n+1 vertices."""
        result = await partial_partition(n=10, seed=4, K=3, with_tree=True)

        assert len(result["tree"]["parents"]) == 11

    @pytest.mark.asyncio
    async def test_unknown_route(self):
        """Only two routes exist."""
        result = await partial_partition(n=10, seed=4, K=3, route="walk")

        assert result["error_kind"] == "RangeError"

    @pytest.mark.asyncio
    async def test_missing_conditioning(self):
        """One of K or c is needed."""
        result = await partial_partition(n=10, seed=4)

        assert is_usage_error(result)


class TestOffspringParams:
    """Test cases for the offspring law tool."""

    @pytest.mark.asyncio
    async def test_single_mean(self):
        """Solving for a mean reproduces it."""
        result = await offspring_params(mean=1.5)

        assert result["params"]["m"] == pytest.approx(1.5)
        assert result["closed_form"]["b"] == pytest.approx(result["params"]["b"], rel=1e-8)
        assert result["series"]["method"] in ("series", "lambert")

    @pytest.mark.asyncio
    async def test_conditioned_laws(self):
        """Black and white means are (K+1)/(n-K) and its inverse."""
        result = await offspring_params(n=9, K=3)

        assert result["black"]["m"] == pytest.approx(4 / 6)
        assert result["white"]["m"] == pytest.approx(6 / 4)
        assert len(result["borel"]) == 10

    @pytest.mark.asyncio
    async def test_nothing_to_solve(self):
        """Without mean or n the request is malformed."""
        result = await offspring_params()

        assert result["error_kind"] == "TypeError"
        assert is_usage_error(result)


class TestResolveK:
    """Test cases for the K/c resolution shared by the tools."""

    def test_explicit_k(self):
        assert resolve_k(10, K=3) == 3

    def test_from_c(self):
        """floor(c sqrt(n))."""
        assert resolve_k(100, c=1.5) == 15
