# Sampler tests
from collections import Counter
import pytest
import sys
import os

import numpy as np
from scipy import stats

# Add the project root to Python path
sys.path.append(os.path.join(os.path.dirname(__file__), '../../../..'))

from servers.minfact_server.src.services.dist_engine import params_for, solve_params
from servers.minfact_server.src.services.ncp import enumerate_ncp
from servers.minfact_server.src.services.oracle import (
    exact_conditional_tree_law,
    exact_law_partial_product,
    first_factor_law,
)
from servers.minfact_server.src.services.samplers import (
    UnionFind,
    conditioned_counts,
    first_gap_law,
    forest_components,
    forest_edges,
    partial_product_partition,
    sample_conditioned_tree,
    sample_first_gap,
    sample_hb_bridge,
    sample_min_factorization,
    sample_partial_partition,
    sample_unconditioned_endpoint,
    sample_walk_sum,
)
from shared.types import (
    Factorization,
    InfeasibleConditioningError,
    RangeError,
    Transposition,
)
from shared.utils.rng import RngStream


class TestMinFactorizationSampler:
    """Test cases for the uniform factorization sampler."""

    @pytest.mark.parametrize("n", [1, 2, 3, 10, 57])
    def test_output_is_minimal_factorization(self, n):
        """Factorization validates the product on construction."""
        f = sample_min_factorization(n, RngStream(n))
        assert isinstance(f, Factorization)
        assert len(f) == n - 1

    def test_seed_replay(self):
        """Equal seeds give equal factorizations."""
        assert sample_min_factorization(40, RngStream(7)) == sample_min_factorization(40, RngStream(7))

    def test_invalid_n(self):
        """n must be positive."""
        with pytest.raises(RangeError):
            sample_min_factorization(0, RngStream(1))

    def test_uniform_on_small_n(self):
        """Chi-square against the uniform law on the 16 factorizations of the 4-cycle."""
        rng = RngStream(2024)
        counts = Counter(sample_min_factorization(4, rng).factors for _ in range(8000))
        assert len(counts) == 16
        _, p_value = stats.chisquare(list(counts.values()))
        assert p_value > 1e-3


class TestFirstGap:
    """Test cases for the first factor's gap."""

    @pytest.mark.parametrize("n", [3, 5, 6])
    def test_law_matches_enumeration(self, n):
        """Summing the exact first-factor law over a gives the gap law."""
        by_gap = np.zeros(n - 1)
        for t, p in first_factor_law(n).items():
            by_gap[t.gap - 1] += float(p)
        np.testing.assert_allclose(first_gap_law(n), by_gap, rtol=1e-12)

    def test_sampler_support(self):
        """Gaps lie in 1..n-1."""
        gaps = sample_first_gap(20, RngStream(3), size=500)
        assert gaps.min() >= 1 and gaps.max() <= 19

    def test_needs_two_points(self):
        """n = 1 has no first factor."""
        with pytest.raises(RangeError):
            first_gap_law(1)


class TestConditionedWalks:
    """Test cases for conditioned offspring sequences."""

    def test_conditioned_counts_sum(self):
        """Counts are non-negative and add up to the total."""
        params = solve_params(1.5)
        out = conditioned_counts(12, 17, params, RngStream(5))
        assert out.sum() == 17
        assert (out >= 0).all()

    def test_walk_sum_mean(self):
        """S_N has mean N m."""
        params = solve_params(0.5)
        draws = sample_walk_sum(20, params, RngStream(9), size=20_000)
        assert draws.mean() == pytest.approx(10.0, rel=0.03)

    def test_unconditioned_endpoint(self):
        """B_bar after n-K free steps has mean zero."""
        size = 4000
        out = sample_unconditioned_endpoint(400, 20, RngStream(4), size=size)
        assert out.shape == (size,)
        assert abs(out.mean()) < 6 * out.std() / np.sqrt(size)

    def test_bridge_endpoint(self):
        """The bridge ends at H_bar = K+1 and B_bar = -1."""
        bridge = sample_hb_bridge(30, 5, RngStream(12))
        assert len(bridge) == 25
        assert int(bridge.h_bar[-1]) == 6
        assert int(bridge.b_bar[-1]) == -1

    def test_infeasible(self):
        """K = 0 cannot be conditioned on."""
        with pytest.raises(InfeasibleConditioningError):
            sample_hb_bridge(5, 0, RngStream(1))


class TestConditionedTrees:
    """Test cases for conditioned two-type trees."""

    @pytest.mark.parametrize("root_shifted", [False, True])
    def test_vertex_counts(self, root_shifted):
        """n-K black and K+1 white vertices."""
        tree = sample_conditioned_tree(50, 7, root_shifted, RngStream(21))
        assert tree.black_count == 43
        assert tree.white_count == 8

    def test_shifted_root_has_a_child(self):
        """The shifted root law puts no mass on leaves."""
        rng = RngStream(8)
        for _ in range(50):
            tree = sample_conditioned_tree(6, 1, True, rng)
            assert len(tree.children[0]) >= 1

    @pytest.mark.slow
    @pytest.mark.parametrize("root_shifted", [False, True])
    def test_law_on_small_trees(self, root_shifted):
        """Total variation against the exact conditional law at n = 4, K = 2."""
        black, white = params_for(4, 2)
        exact = exact_conditional_tree_law(4, 2, black, white, root_shifted)
        rng = RngStream(77)
        samples = 100_000
        counts = Counter(
            sample_conditioned_tree(4, 2, root_shifted, rng, params=(black, white))
            for _ in range(samples)
        )
        assert set(counts) <= set(exact)
        tv = 0.5 * sum(abs(counts.get(t, 0) / samples - p) for t, p in exact.items())
        assert tv < 0.01


class TestPartialProducts:
    """Test cases for the partition of a partial product."""

    def test_blocks_are_forest_components(self):
        """Cycles of t_1...t_k are the components of the first k edges."""
        rng = RngStream(31)
        for _ in range(20):
            f = sample_min_factorization(25, rng)
            for k in (1, 5, 12, 24):
                assert partial_product_partition(f, k) == forest_components(25, forest_edges(f, k))

    def test_block_count(self):
        """After k factors there are n-k blocks."""
        f = sample_min_factorization(30, RngStream(2))
        assert len(partial_product_partition(f, 10)) == 20

    def test_k_range(self):
        """k lies in [1, n-1]."""
        f = sample_min_factorization(5, RngStream(2))
        with pytest.raises(RangeError):
            partial_product_partition(f, 0)

    def test_tree_route(self):
        """The tree route gives a non-crossing partition with n-K blocks."""
        p = sample_partial_partition(40, 6, RngStream(3), route="tree")
        assert p.n == 40
        assert len(p) == 34

    def test_unknown_route(self):
        """Routes are 'factorization' or 'tree'."""
        with pytest.raises(RangeError):
            sample_partial_partition(10, 2, RngStream(3), route="other")

    @pytest.mark.slow
    def test_routes_agree_with_exact_law(self):
        """Both routes match the enumerated law at n = 5, K = 2."""
        exact = exact_law_partial_product(5, 2)
        samples = 100_000
        for route in ("factorization", "tree"):
            rng = RngStream(11)
            counts = Counter(sample_partial_partition(5, 2, rng, route) for _ in range(samples))
            tv = 0.5 * sum(abs(counts.get(p, 0) / samples - float(q)) for p, q in exact.items())
            assert tv < 0.01
            assert set(counts) <= set(enumerate_ncp(5))


class TestUnionFind:
    """Test cases for the disjoint-set helper."""

    def test_groups(self):
        """Joined vertices share a group."""
        uf = UnionFind(5)
        uf.join(1, 3)
        uf.join(3, 5)
        assert uf.root(1) == uf.root(5)
        assert sorted(uf.groups(5)) == [(1, 3, 5), (2,), (4,)]

    def test_components_of_edges(self):
        """forest_components groups endpoints of edges."""
        p = forest_components(4, [Transposition(1, 2), Transposition(3, 4)])
        assert p.blocks == ((1, 2), (3, 4))
