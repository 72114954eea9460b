# Offspring law and series tests
import math
import pytest
import sys
import os

import numpy as np

# Add the project root to Python path
sys.path.append(os.path.join(os.path.dirname(__file__), '../../../..'))

from servers.minfact_server.src.services.dist_engine import (
    INV_E,
    borel_pmf,
    eval_F,
    mean_at,
    params_closed_form,
    params_for,
    pmf_mu,
    pmf_mu_tilde,
    solve_params,
    tree_function,
    walk_pmf,
    walk_pmf_by_convolution,
)
from shared.types import RangeError


class TestSeries:
    """Test cases for F and its derivatives."""

    def test_value_at_zero(self):
        """F(0) = 1 and F'(0) = 1."""
        ev = eval_F(0.0)
        assert ev.value == 1.0
        assert ev.first == 1.0

    @pytest.mark.parametrize("z", [0.05, 0.2, 0.3])
    def test_series_matches_closed_form(self, z):
        """The truncated series and the tree-function form agree."""
        series = eval_F(z, method="series")
        closed = eval_F(z, method="lambert")
        assert series.value == pytest.approx(closed.value, rel=1e-12)
        assert series.first == pytest.approx(closed.first, rel=1e-10)
        assert series.second == pytest.approx(closed.second, rel=1e-9)
        assert series.tail_bound <= 1e-13 * series.value

    def test_near_singularity_uses_closed_form(self):
        """Close to 1/e the automatic choice switches method."""
        assert eval_F(INV_E - 1e-9).method == "lambert"

    def test_limit_at_singularity(self):
        """F tends to e as z increases to 1/e."""
        assert eval_F(INV_E - 1e-8).value == pytest.approx(math.e, abs=1e-3)

    def test_out_of_range(self):
        """z must lie in [0, 1/e)."""
        with pytest.raises(RangeError):
            eval_F(0.5)

    def test_tree_function(self):
        """T = z e^T."""
        z = 0.25
        T = tree_function(z)
        assert T == pytest.approx(z * math.exp(T), rel=1e-14)


class TestSolveParams:
    """Test cases for the parameter solve."""

    @pytest.mark.parametrize("m", [0.01, 0.5, 1.0, 3.0, 50.0])
    def test_mean_is_matched(self, m):
        """G(b) = m and a = 1/F(b)."""
        params = solve_params(m)
        assert mean_at(params.b) == pytest.approx(m, rel=1e-8)
        assert 0 < params.b < INV_E
        assert params.a == pytest.approx(1.0 / eval_F(params.b).value)

    @pytest.mark.parametrize("m", [0.2, 1.0, 7.0])
    def test_closed_form_agrees(self, m):
        """b = T e^-T with T = m / (1 + m)."""
        solved, closed = solve_params(m), params_closed_form(m)
        assert solved.b == pytest.approx(closed.b, rel=1e-9)
        assert solved.a == pytest.approx(closed.a, rel=1e-9)
        assert solved.variance == pytest.approx(closed.variance, rel=1e-6)

    def test_unit_mean(self):
        """m = 1 gives T = 1/2, so b = e^(-1/2) / 2 and a = e^(-1/2)."""
        params = solve_params(1.0)

        assert params.b == pytest.approx(math.exp(-0.5) / 2, rel=1e-9)
        assert params.a == pytest.approx(math.exp(-0.5), rel=1e-9)

    def test_variance_at_large_n(self):
        """With K = sqrt(n) at n = 10^6 the black variance is about K / n."""
        n = 1_000_000
        K = int(math.floor(math.sqrt(n)))
        m = (K + 1) / (n - K)

        for params in (solve_params(m), params_closed_form(m)):
            assert params.variance == pytest.approx(K / n, rel=0.05)

    def test_pmf_is_a_law(self):
        """mu sums to 1 with mean m and the solved variance."""
        params = solve_params(0.8)
        i = np.arange(400)
        p = pmf_mu(i, params)
        mean = float(np.sum(i * p))
        assert float(np.sum(p)) == pytest.approx(1.0, abs=1e-10)
        assert mean == pytest.approx(0.8, rel=1e-8)
        assert float(np.sum((i - mean) ** 2 * p)) == pytest.approx(params.variance, rel=1e-6)

    def test_nonpositive_mean(self):
        """The mean must be positive."""
        with pytest.raises(RangeError):
            solve_params(0.0)

    def test_params_for(self):
        """Black mean (K+1)/(n-K), white mean (n-K)/(K+1)."""
        black, white = params_for(10, 3)
        assert black.m == pytest.approx(4 / 7)
        assert white.m == pytest.approx(7 / 4)

    def test_params_for_range(self):
        """K lies in [1, n-1]."""
        with pytest.raises(RangeError):
            params_for(5, 5)

    def test_shifted_root_law(self):
        """mu~(i) = mu(i-1) and mu~(0) = 0."""
        params = solve_params(1.0)
        assert pmf_mu_tilde(0, params) == 0.0
        assert pmf_mu_tilde(3, params) == pytest.approx(pmf_mu(2, params))


class TestWalkLaw:
    """Test cases for sums of offspring numbers."""

    @pytest.mark.parametrize("m", [0.3, 1.0, 4.0])
    def test_closed_form_matches_convolution(self, m):
        """a^N b^k N (N+k)^(k-1) / k! equals the N-fold convolution."""
        params = solve_params(m)
        for N in range(1, 6):
            direct = walk_pmf_by_convolution(N, 12, params)
            closed = walk_pmf(N, np.arange(13), params)
            np.testing.assert_allclose(closed, direct, rtol=1e-10)

    def test_zero_steps(self):
        """S_0 = 0."""
        params = solve_params(1.0)
        assert walk_pmf(0, 0, params) == 1.0
        assert walk_pmf(0, 2, params) == 0.0

    def test_negative_values(self):
        """No mass below zero."""
        assert walk_pmf(3, -1, solve_params(1.0)) == 0.0


class TestBorel:
    """Test cases for the Borel law."""

    def test_first_values(self):
        """P(1) = 1/e and P(2) = e^-2."""
        assert borel_pmf(1) == pytest.approx(math.exp(-1))
        assert borel_pmf(2) == pytest.approx(math.exp(-2))
        assert borel_pmf(3) == pytest.approx(3 * math.exp(-3) / 2)

    def test_total_mass(self):
        """The law sums to 1 (slowly: the tail decays like i^-3/2)."""
        total = float(np.sum(borel_pmf(np.arange(1, 200_001))))
        assert total == pytest.approx(1.0, abs=5e-3)

    def test_support(self):
        """Values below 1 are rejected."""
        with pytest.raises(RangeError):
            borel_pmf(0)
