# Lamination service tests
import math
import pytest
import sys
import os
from fractions import Fraction

# Add the project root to Python path
sys.path.append(os.path.join(os.path.dirname(__file__), '../../../..'))

from servers.minfact_server.src.services.lamination import (
    circle_points,
    crossing_pair,
    hausdorff,
    is_noncrossing,
    lam_of_excursion,
    lam_of_forest,
    lam_of_partition,
    longest_chord,
)
from servers.minfact_server.src.services.levy_sim import brownian_excursion_discrete, levy_excursion
from servers.minfact_server.src.services.samplers import forest_edges, partial_product_partition
from servers.minfact_server.src.services.tree_duality import corner_labeling
from shared.types import (
    Chord,
    CrossingChordError,
    Factorization,
    Lamination,
    NonCrossingPartition,
    RangeError,
    SampledPath,
    Transposition,
)
from shared.types.partition import from_lists
from shared.types.paths import uniform_grid
from shared.utils.rng import RngStream


@pytest.fixture
def twelve():
    """A factorization of the 12-cycle, read after six factors."""
    f = Factorization(12, (
        (1, 3), (6, 12), (1, 5), (7, 12), (9, 10), (11, 12), (2, 3), (4, 5), (1, 6), (8, 11), (9, 11),
    ))
    return lam_of_forest(12, forest_edges(f, 6)), lam_of_partition(partial_product_partition(f, 6))


@pytest.fixture
def diameter():
    """The vertical diameter, between vertices 1 and 3 of the square."""
    return Lamination(4, frozenset({Chord.between(1, 3, 4)}))


class TestPartitionLaminations:
    """Test cases for the chords of a partition."""

    def test_singletons_have_no_chords(self):
        """Singleton blocks contribute nothing."""
        assert len(lam_of_partition(NonCrossingPartition.singletons(5))) == 0

    def test_pair_gives_one_chord(self):
        """A 2-block is a single chord, not a doubled polygon."""
        lam = lam_of_partition(from_lists(4, [[1, 2], [3], [4]]))

        assert lam.chords == frozenset({Chord.between(1, 2, 4)})

    def test_triangle(self):
        """A 3-block gives its boundary triangle."""
        lam = lam_of_partition(from_lists(4, [[1, 2, 3], [4]]))

        assert len(lam) == 3
        assert Chord.between(1, 3, 4) in lam.chords

    def test_full_block_is_polygon(self):
        """The one-block partition gives the n sides of the polygon."""
        assert len(lam_of_partition(NonCrossingPartition.full(6))) == 6

    def test_partition_lamination_is_noncrossing(self):
        """Blocks of a non-crossing partition never give crossing chords."""
        lam = lam_of_partition(from_lists(8, [[1, 4, 8], [2, 3], [5, 6, 7]]))

        assert is_noncrossing(lam)


class TestForests:
    """Test cases for the chords of transposition prefixes."""

    def test_one_chord_per_edge(self):
        """Each transposition becomes the chord between its points."""
        lam = lam_of_forest(5, [Transposition(1, 3), Transposition(3, 4)])

        assert lam.sorted_chords() == [Chord.between(1, 3, 5), Chord.between(3, 4, 5)]

    def test_crossing_edges_raise(self):
        """(1 3) and (2 4) cross in the square."""
        with pytest.raises(CrossingChordError):
            lam_of_forest(4, [Transposition(1, 3), Transposition(2, 4)])

    def test_crossing_pair_reports_witness(self):
        """The witness is the two crossing chords."""
        first, second = Chord.between(1, 3, 4), Chord.between(2, 4, 4)

        assert set(crossing_pair([first, second])) == {first, second}

    def test_shared_endpoint_is_not_crossing(self):
        """Chords meeting on the circle do not cross."""
        assert crossing_pair([Chord.between(1, 3, 6), Chord.between(3, 5, 6)]) is None

    def test_nested_chords_are_not_crossing(self):
        """A chord inside another one is fine."""
        assert crossing_pair([Chord.between(1, 6, 8), Chord.between(2, 4, 8)]) is None


class TestMeasurements:
    """Test cases for chord lengths, endpoints and distances."""

    def test_longest_chord_of_diameter(self, diameter):
        """A diameter has length 2."""
        assert longest_chord(diameter) == pytest.approx(2.0)

    def test_longest_chord_of_empty(self):
        """The empty lamination has nothing to measure."""
        assert longest_chord(Lamination(3)) == 0.0

    def test_circle_points(self, diameter):
        """Endpoints are kept as exact fractions of a turn."""
        assert circle_points(diameter) == {Fraction(1, 4), Fraction(3, 4)}

    def test_hausdorff_to_itself(self, diameter):
        """A set is at distance zero from itself."""
        assert hausdorff(diameter, diameter) == pytest.approx(0.0, abs=1e-12)

    def test_hausdorff_empty_against_diameter(self, diameter):
        """With the circle added, the centre of the diameter is the farthest point."""
        assert hausdorff(Lamination(4), diameter) == pytest.approx(1.0, abs=1e-9)

    def test_hausdorff_perpendicular_diameters(self, diameter):
        """Halfway along one diameter, the other one and the circle are both 1/2 away."""
        horizontal = Lamination(4, frozenset({Chord.between(2, 4, 4)}))

        assert hausdorff(diameter, horizontal) == pytest.approx(0.5, abs=1e-6)

    def test_hausdorff_is_symmetric(self):
        """d(A, B) == d(B, A)."""
        a = lam_of_partition(from_lists(6, [[1, 3, 5], [2], [4], [6]]))
        b = lam_of_partition(from_lists(6, [[1, 2], [3, 4], [5, 6]]))

        assert hausdorff(a, b) == pytest.approx(hausdorff(b, a))

    def test_hausdorff_without_circle(self, diameter):
        """Without the circle an empty set is infinitely far from anything."""
        assert math.isinf(hausdorff(Lamination(4), diameter, with_circle=False))
        assert hausdorff(Lamination(4), Lamination(4), with_circle=False) == 0.0

    def test_hausdorff_rejects_bad_delta(self, diameter):
        """The sampling step must be positive."""
        with pytest.raises(RangeError):
            hausdorff(diameter, diameter, delta=0.0)


class TestExcursionLaminations:
    """Test cases for laminations coded by paths."""

    def test_lattice_walk_without_tree(self):
        """First-drop pairs of the walk are placed at index over length."""
        path = SampledPath(grid=[0.0, 0.5, 1.0], values=[0.0, 0.0, 0.0], lattice=(1, 0, -1))

        lam = lam_of_excursion(path)

        assert lam.n == 3
        assert lam.chords == frozenset({Chord.between(1, 2, 3), Chord.between(2, 3, 3)})

    def test_tree_excursion_is_noncrossing(self):
        """Chords read off a sampled tree use its corner labels."""
        path = levy_excursion(uniform_grid(11), 1.0, RngStream(3), n=100)

        lam = lam_of_excursion(path)

        assert lam.n == corner_labeling(path.tree).n
        assert is_noncrossing(lam)

    def test_brownian_continuous_mode_is_noncrossing(self):
        """The continuous relation of a Brownian excursion is a lamination."""
        path = brownian_excursion_discrete(200, RngStream(8))

        lam = lam_of_excursion(path, mode="continuous")

        assert lam.n == 0
        assert len(lam) > 0
        assert is_noncrossing(lam)

    def test_unknown_mode(self):
        """Only the continuous and cadlag relations exist."""
        path = SampledPath(grid=[0.0, 1.0], values=[0.0, 0.0])

        with pytest.raises(RangeError):
            lam_of_excursion(path, mode="smooth")


class TestTwelveCycle:
    """Test cases for the laminations of a 12-cycle factorization after six factors."""

    def test_forest_chords(self, twelve):
        """One chord per factor."""
        forest, _ = twelve
        pairs = [(1, 3), (6, 12), (1, 5), (7, 12), (9, 10), (11, 12)]

        assert forest.chords == frozenset(Chord.between(a, b, 12) for a, b in pairs)

    def test_partition_chords(self, twelve):
        """A triangle on {1,3,5}, a quadrilateral on {6,7,11,12} and the edge {9,10}."""
        _, polygons = twelve
        pairs = [(1, 3), (3, 5), (1, 5), (6, 7), (7, 11), (11, 12), (6, 12), (9, 10)]

        assert polygons.chords == frozenset(Chord.between(a, b, 12) for a, b in pairs)

    def test_shared_points_on_the_circle(self, twelve):
        """Both laminations touch the circle at the same points."""
        forest, polygons = twelve

        assert circle_points(forest) == circle_points(polygons)

    def test_longest_chord(self, twelve):
        """{6, 12} is a diameter."""
        _, polygons = twelve

        assert longest_chord(polygons) == pytest.approx(2.0)

    def test_distance_between_laminations(self, twelve):
        """The forest and the polygons are about a third apart."""
        forest, polygons = twelve

        assert hausdorff(forest, polygons) == pytest.approx(0.3366, abs=4e-3)
