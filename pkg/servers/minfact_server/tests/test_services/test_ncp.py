# Non-crossing partition tests
import pytest
import sys
import os

# Add the project root to Python path
sys.path.append(os.path.join(os.path.dirname(__file__), '../../../..'))

from servers.minfact_server.src.services.ncp import (
    enumerate_ncp,
    geodesic_perm_of,
    is_noncrossing,
    kreweras,
    ncp_with_blocks,
    rotate,
)
from shared.types import NonCrossingPartition, NotAPartitionError, SetPartition

CATALAN = [1, 1, 2, 5, 14, 42, 132, 429]


class TestCrossing:
    """Test cases for the crossing test."""

    def test_crossing_set_partition(self):
        """{1,3}{2,4} crosses."""
        assert not is_noncrossing(SetPartition(4, ((1, 3), (2, 4))))

    def test_nested(self):
        """{1,4}{2,3} does not cross."""
        assert is_noncrossing(SetPartition(4, ((1, 4), (2, 3))))

    def test_rejects_other_types(self):
        """Only partitions are accepted."""
        with pytest.raises(NotAPartitionError):
            is_noncrossing([(1, 2)])


class TestKreweras:
    """Test cases for the Kreweras complement."""

    def test_extremes(self):
        """Singletons and the full block are complements of each other."""
        n = 6
        assert kreweras(NonCrossingPartition.singletons(n)) == NonCrossingPartition.full(n)
        assert kreweras(NonCrossingPartition.full(n)) == NonCrossingPartition.singletons(n)

    def test_twelve_point_example(self):
        """Complement of {1,3,5}{2}{4}{6,7,11,12}{8}{9,10}, singleton {9} included."""
        p = NonCrossingPartition(12, ((1, 3, 5), (2,), (4,), (6, 7, 11, 12), (8,), (9, 10)))

        assert kreweras(p).blocks == ((1, 2), (3, 4), (5, 12), (6,), (7, 8, 10), (9,), (11,))
        assert kreweras(kreweras(p)) == rotate(p, -1)

    def test_small_example(self):
        """{1,2}{3} has complement {1}{2,3}."""
        p = NonCrossingPartition(3, ((1, 2), (3,)))
        assert kreweras(p).blocks == ((1,), (2, 3))

    @pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
    def test_block_counts_add_up(self, n):
        """|p| + |K(p)| = n + 1."""
        for p in enumerate_ncp(n):
            assert len(p) + len(kreweras(p)) == n + 1

    @pytest.mark.parametrize("n", [2, 3, 4, 5, 6, 7])
    def test_square_is_rotation(self, n):
        """Applying the complement twice rotates by one step backwards."""
        for p in enumerate_ncp(n):
            assert kreweras(kreweras(p)) == rotate(p, -1)

    def test_geodesic_permutation(self):
        """Blocks are read increasingly as cycles."""
        p = NonCrossingPartition(5, ((1, 2, 5), (3, 4)))
        assert geodesic_perm_of(p).image == (2, 5, 4, 3, 1)


class TestEnumeration:
    """Test cases for the enumeration of non-crossing partitions."""

    @pytest.mark.parametrize("n", range(1, 8))
    def test_catalan_counts(self, n):
        """There are Catalan many, all distinct."""
        partitions = enumerate_ncp(n)
        assert len(partitions) == CATALAN[n]
        assert len(set(partitions)) == CATALAN[n]

    def test_narayana_counts(self):
        """Counts by number of blocks are the Narayana numbers."""
        assert [len(ncp_with_blocks(5, k)) for k in range(1, 6)] == [1, 10, 20, 10, 1]

    def test_rotate(self):
        """rotate replaces i by i+j mod n."""
        p = NonCrossingPartition(3, ((1, 2), (3,)))
        assert rotate(p, 1).blocks == ((1,), (2, 3))
        assert rotate(rotate(p, 1), -1) == p
