# Sampling tool tests
import pytest
import sys
import os

# Add the project root to Python path
sys.path.append(os.path.join(os.path.dirname(__file__), '../../../..'))

from servers.minfact_server.src.tools.common import is_usage_error
from servers.minfact_server.src.tools.sample_factorization import sample_factorization
from servers.minfact_server.src.tools.sample_tree import sample_tree
from shared.types import Factorization


class TestSampleFactorization:
    """Test cases for the factorization sampling tool."""

    @pytest.mark.asyncio
    async def test_basic_sample(self):
        """A sample is a valid factorization document."""
        result = await sample_factorization(n=6, seed=1)

        assert result["seed"] == 1
        f = Factorization.from_dict(result["factorization"])
        assert f.n == 6
        assert len(f) == 5
        assert "partition" not in result

    @pytest.mark.asyncio
    async def test_same_seed_same_sample(self):
        """Seeds fully determine the output."""
        first = await sample_factorization(n=8, seed=42)
        second = await sample_factorization(n=8, seed=42)

        assert first == second

    @pytest.mark.asyncio
    async def test_partial_product_is_reported(self):
        """With K the partition and its complement come along."""
        result = await sample_factorization(n=6, seed=3, K=2)

        assert result["k"] == 2
        assert len(result["partition"]["blocks"]) == 4
        assert len(result["kreweras"]["blocks"]) == 3

    @pytest.mark.asyncio
    async def test_c_gives_k(self):
        """c = 1 at n = 16 means four factors."""
        result = await sample_factorization(n=16, seed=3, c=1.0)

        assert result["k"] == 4

    @pytest.mark.asyncio
    async def test_invalid_size(self):
        """n = 0 is a usage error, not a crash."""
        result = await sample_factorization(n=0, seed=1)

        assert result["error_kind"] == "ConfigError"
        assert is_usage_error(result)

    @pytest.mark.asyncio
    async def test_k_and_c_together(self):
        """K and c exclude each other."""
        result = await sample_factorization(n=6, seed=1, K=2, c=1.0)

        assert is_usage_error(result)


class TestSampleTree:
    """Test cases for the conditioned tree tool."""

    @pytest.mark.asyncio
    async def test_tree_sizes(self):
        """The tree has n-K black and K+1 white vertices."""
        result = await sample_tree(n=6, seed=2, K=2)

        assert result["K"] == 2
        assert len(result["tree"]["parents"]) == 7
        assert len(result["paths"]["b_bar"]) == 4
        assert result["paths"]["excursion"]
        assert "partition" not in result

    @pytest.mark.asyncio
    async def test_root_shifted_tree_codes_a_partition(self):
        """Root-shifted trees come with their partition of [n]."""
        result = await sample_tree(n=6, seed=2, K=2, root_shifted=True)

        assert result["partition"]["n"] == 6
        assert len(result["partition"]["blocks"]) == 4

    @pytest.mark.asyncio
    async def test_code_lengths(self):
        """H has one entry per black vertex, W one per white vertex."""
        result = await sample_tree(n=9, seed=5, K=3)

        assert len(result["code"]["H"]) == 6
        assert len(result["code"]["W"]) == 4

    @pytest.mark.asyncio
    async def test_k_out_of_range(self):
        """K must be below n."""
        result = await sample_tree(n=4, seed=1, K=4)

        assert is_usage_error(result)
