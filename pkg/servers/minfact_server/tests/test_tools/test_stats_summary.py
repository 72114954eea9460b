# Monte-Carlo summary tool tests
import pytest
import sys
import os

# Add the project root to Python path
sys.path.append(os.path.join(os.path.dirname(__file__), '../../../..'))

from servers.minfact_server.src.tools.stats_summary import gap_histogram, stats_summary


class TestStatsSummary:
    """Test cases for the Monte-Carlo summary tool."""

    @pytest.mark.asyncio
    async def test_rows_and_histogram(self):
        """One row per draw; histogram counts add up to the number of draws."""
        result = await stats_summary(n=6, seed=1, samples=20, K=2, threads=2)

        assert result["K"] == 2
        assert [row["sample"] for row in result["samples"]] == list(range(20))
        assert [row["gap"] for row in result["gap_histogram"]] == [1, 2, 3, 4, 5]
        assert sum(row["count"] for row in result["gap_histogram"]) == 20
        assert sum(row["exact"] for row in result["gap_histogram"]) == pytest.approx(1.0)

    @pytest.mark.asyncio
    async def test_reproducible_across_thread_counts(self):
        """Each draw has its own substream, so threading does not change results."""
        one = await stats_summary(n=8, seed=9, samples=12, K=3, threads=1)
        four = await stats_summary(n=8, seed=9, samples=12, K=3, threads=4)

        assert one["samples"] == four["samples"]

    @pytest.mark.asyncio
    async def test_columns_are_described(self):
        """Every sample column has a description."""
        result = await stats_summary(n=5, seed=2, samples=3, K=1)

        assert set(result["samples"][0]) == set(result["columns"]["samples"])
        assert set(result["first_position_quantiles"]) == {"0.1", "0.25", "0.5", "0.75", "0.9"}

    @pytest.mark.asyncio
    async def test_invalid_k(self):
        """K beyond n-1 is a configuration error."""
        result = await stats_summary(n=5, seed=2, samples=3, K=7)

        assert result["error_kind"] == "ConfigError"

    def test_gap_histogram_stops_at_n_minus_one(self):
        """Gaps larger than n-1 are impossible and not listed."""
        rows = gap_histogram([1, 1, 2], 3)

        assert [(r["gap"], r["count"]) for r in rows] == [(1, 2), (2, 1)]
        assert rows[0]["empirical"] == pytest.approx(2 / 3)
