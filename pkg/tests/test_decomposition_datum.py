"""
Tests for decomposition data and their enumeration.

These tests verify:
- Datum validation, graphs and Betti numbers
- Derived marked points, compatibility with a complex and degree filtering
- Enumeration against a brute force search, in sort order
- Canonical representatives under renaming nodes
"""

import itertools

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from skeleton import decompositionDatum
from skeleton.decompositionDatum import (
    DecompositionBounds,
    DecompositionDatum,
    betti1,
    build_graph,
    canonicalize,
    compatible_with_complex,
    count,
    derived_marks,
    enumerate_data,
    filter_by_degree,
    is_type,
    relabel,
    sort_key,
)
from skeleton.errors import InvalidDecomposition, UnknownVertex
from skeleton.weightedComplex import WeightedComplex


A1, B1, B2 = ('a', 1), ('b', 1), ('b', 2)


@pytest.fixture
def double_edge():
    """a1 -- b1 joined by two nodes, one marked point on a1"""
    return DecompositionDatum(['a', 'b'], [1, 1], marks={A1: 1}, edges={(A1, B1): 2})


def brute_force(bounds, genus, marks):
    """
    Sort keys of every connected datum of type (genus, marks), searching all
    edge counts up to genus + V - 1 on every slot.
    """
    keys = []
    for counts in itertools.product(*(range(limit + 1) for limit in bounds.limits)):
        if sum(counts) == 0:
            continue
        shape = DecompositionDatum(bounds.components, counts)
        nodes, slots = shape.nodes, shape.slots()
        genera_by_total = {}
        for genera in itertools.product(range(genus + 1), repeat=len(nodes)):
            genera_by_total.setdefault(sum(genera), []).append(genera)
        mark_tables = [m for m in itertools.product(range(marks + 1), repeat=len(nodes)) if sum(m) == marks]
        most = genus + len(nodes) - 1
        for vector in itertools.product(range(most + 1), repeat=len(slots)):
            graph = nx.MultiGraph()
            graph.add_nodes_from(nodes)
            for slot, n_edges in zip(slots, vector):
                graph.add_edges_from([slot] * n_edges)
            if not nx.is_connected(graph):
                continue
            loops = graph.number_of_edges() - len(nodes) + 1
            for genera in genera_by_total.get(genus - loops, []):
                for mark_counts in mark_tables:
                    keys.append((tuple(counts), genera, mark_counts, vector))
    return sorted(keys)


GRID = [(limits, genus, marks)
        for limits in [(a,) for a in range(3)] + list(itertools.product(range(3), repeat=2))
        for genus in range(3)
        for marks in range(4)]


class TestDatum:
    """Test DecompositionDatum construction."""

    def test_nodes(self):
        datum = DecompositionDatum(['a', 'b'], [1, 2])
        assert datum.nodes == (A1, B1, B2)
        assert datum.slots() == [(A1, B1), (A1, B2)]

    def test_zero_counts_are_dropped(self):
        datum = DecompositionDatum(['a', 'b'], [1, 1], edges={(A1, B1): 0})
        assert datum.edges == {}

    def test_same_component_edge(self):
        with pytest.raises(InvalidDecomposition):
            DecompositionDatum(['a', 'b'], [1, 2], edges={(B1, B2): 1})

    def test_unknown_node(self):
        with pytest.raises(InvalidDecomposition):
            DecompositionDatum(['a', 'b'], [1, 1], genera={B2: 1})

    def test_negative_count(self):
        with pytest.raises(InvalidDecomposition):
            DecompositionDatum(['a', 'b'], [1, -1])

    def test_within(self, double_edge):
        assert double_edge.within(DecompositionBounds(['a', 'b'], [1, 2]))
        assert not double_edge.within(DecompositionBounds(['a', 'b'], [0, 2]))

    def test_bounds_validation(self):
        with pytest.raises(InvalidDecomposition):
            DecompositionBounds(['a', 'b'], [1])

    def test_round_trip(self, double_edge):
        assert DecompositionDatum.from_dict(double_edge.to_dict()) == double_edge


class TestGraph:
    """Test build_graph, betti1 and is_type."""

    def test_double_edge(self, double_edge):
        graph = build_graph(double_edge)
        assert graph.number_of_edges() == 2
        assert graph.nodes[A1]['marks'] == 1
        assert betti1(graph) == 1

    def test_two_disjoint_triangles(self):
        graph = nx.disjoint_union(nx.cycle_graph(3), nx.cycle_graph(3))
        assert betti1(graph) == 2

    def test_empty_graph(self):
        assert betti1(nx.MultiGraph()) == 0

    @given(st.integers(1, 6).flatmap(lambda n: st.tuples(
        st.just(n), st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=10))))
    @settings(max_examples=200, deadline=None)
    def test_betti1_is_edges_off_a_spanning_forest(self, drawn):
        n, pairs = drawn
        graph = nx.MultiGraph()
        graph.add_nodes_from(range(n))
        graph.add_edges_from((a, b) for a, b in pairs if a != b)
        forest = nx.minimum_spanning_tree(graph)
        assert betti1(graph) == graph.number_of_edges() - forest.number_of_edges()

    def test_is_type(self, double_edge):
        assert is_type(double_edge, 1, 1)
        assert not is_type(double_edge, 0, 1)
        assert not is_type(double_edge, 1, 0)

    def test_disconnected_is_no_type(self):
        datum = DecompositionDatum(['a', 'b'], [1, 1])
        assert not is_type(datum, 0, 0)

    def test_empty_is_no_type(self):
        assert not is_type(DecompositionDatum(['a'], [0]), 0, 0)


class TestDerivedMarks:
    """Test derived_marks."""

    def test_double_edge(self, double_edge):
        derived = derived_marks(double_edge)
        assert derived.n_prime == {A1: 3, B1: 2}
        assert derived.labels[A1] == [(1, A1, B1), (2, A1, B1)]
        assert derived.labels[B1] == [(1, B1, A1), (2, B1, A1)]
        assert derived.gluing == [((1, A1, B1), (1, B1, A1)), ((2, A1, B1), (2, B1, A1))]

    def test_without_edges(self):
        datum = DecompositionDatum(['a'], [2], marks={('a', 2): 4})
        assert derived_marks(datum).n_prime == {('a', 1): 0, ('a', 2): 4}


class TestComplexCompatibility:
    """Test compatible_with_complex and filter_by_degree."""

    @pytest.fixture
    def chain(self):
        return WeightedComplex([('a', 1), ('b', 1), ('c', 1)], [['a'], ['b'], ['c'], ['a', 'b'], ['b', 'c']])

    def test_adjacent(self, chain):
        datum = DecompositionDatum(['a', 'b', 'c'], [1, 1, 0], edges={(A1, B1): 1})
        assert compatible_with_complex(datum, chain)

    def test_not_adjacent(self, chain):
        datum = DecompositionDatum(['a', 'b', 'c'], [1, 0, 1], edges={(A1, ('c', 1)): 1})
        assert not compatible_with_complex(datum, chain)

    def test_unknown_component(self, chain):
        with pytest.raises(UnknownVertex):
            compatible_with_complex(DecompositionDatum(['a', 'z'], [1, 0]), chain)

    def test_enumeration_restricted_to_complex(self, chain):
        bounds = DecompositionBounds(['a', 'c'], [1, 1])
        data = list(enumerate_data(bounds, 0, 0, complex_=chain))
        assert [datum.counts for datum in data] == [(0, 1), (1, 0)]

    def test_filter_by_degree(self):
        bounds = DecompositionBounds(['a', 'b'], [1, 2])
        data = list(enumerate_data(bounds, 0, 0))
        kept = list(filter_by_degree(data, lambda datum, node: 1, 2))
        assert kept and all(len(datum.nodes) <= 2 for datum in kept)
        assert len(kept) == len([datum for datum in data if len(datum.nodes) <= 2])


class TestEnumeration:
    """Test enumerate_data and count."""

    def test_two_components(self):
        """Two single nodes and the pair joined once."""
        assert count(DecompositionBounds(['1', '2'], [1, 1]), 0, 0) == 3

    def test_one_node_with_every_mark(self):
        data = list(enumerate_data(DecompositionBounds(['1'], [1]), 0, 3))
        assert len(data) == 1
        assert data[0].marks == {('1', 1): 3}

    def test_nodes_over_one_component_are_not_joined(self):
        """Two nodes over component 1 stay apart, so only the genus 1 node remains."""
        data = list(enumerate_data(DecompositionBounds(['1'], [2]), 1, 0))
        assert len(data) == 1
        assert data[0].genera == {('1', 1): 1}

    def test_genus_one(self):
        assert count(DecompositionBounds(['1', '2'], [1, 1]), 1, 0) == 5

    def test_one_mark(self):
        assert count(DecompositionBounds(['1', '2'], [1, 1]), 0, 1) == 4

    def test_empty_bounds(self):
        assert count(DecompositionBounds(['1', '2'], [0, 0]), 0, 0) == 0

    @pytest.mark.parametrize('limits,genus,marks', GRID)
    def test_matches_brute_force(self, limits, genus, marks):
        bounds = DecompositionBounds([str(k) for k in range(len(limits))], list(limits))
        data = list(enumerate_data(bounds, genus, marks))
        assert [sort_key(datum) for datum in data] == brute_force(bounds, genus, marks)
        for datum in data:
            assert is_type(datum, genus, marks)
            assert sum(datum.edges.values()) <= genus + len(datum.nodes) - 1

    @pytest.mark.parametrize('genus,marks', [(0, 0), (1, 1), (2, 0)])
    def test_sorted_without_repeats(self, genus, marks):
        keys = [sort_key(datum) for datum in enumerate_data(DecompositionBounds(['a', 'b'], [2, 2]), genus, marks)]
        assert all(first < second for first, second in zip(keys, keys[1:]))

    def test_every_datum_has_the_type(self):
        for datum in enumerate_data(DecompositionBounds(['a', 'b', 'c'], [1, 1, 1]), 1, 1):
            assert is_type(datum, 1, 1)

    def test_workers_keep_order(self):
        bounds = DecompositionBounds(['a', 'b'], [2, 2])
        assert list(enumerate_data(bounds, 1, 1, workers=3)) == list(enumerate_data(bounds, 1, 1, workers=1))

    @pytest.mark.parametrize('workers,started', [(1, 1), (2, 3)])
    def test_streams_without_buffering(self, mocker, workers, started):
        """The first datum arrives before most N vectors are searched."""
        spy = mocker.spy(decompositionDatum, '_data_for_counts')
        stream = enumerate_data(DecompositionBounds(['a', 'b'], [2, 2]), 1, 1, workers=workers)
        next(stream)
        assert spy.call_count == started
        stream.close()

    def test_threads_from_environment(self, monkeypatch):
        monkeypatch.setenv('SKELETON_KIT_THREADS', '2')
        bounds = DecompositionBounds(['a', 'b'], [1, 2])
        assert count(bounds, 0, 1) == count(bounds, 0, 1, workers=1)


class TestCanonical:
    """Test relabel and canonicalize."""

    def test_relabel(self):
        datum = DecompositionDatum(['a', 'b'], [1, 2], marks={B1: 1}, edges={(A1, B1): 1, (A1, B2): 1})
        swapped = relabel(datum, {'a': (1,), 'b': (2, 1)})
        assert swapped.marks == {A1: 0, B1: 0, B2: 1}
        assert swapped.edges == datum.edges

    def test_genus_on_one_component(self):
        """Two nodes over one component with genera (1, 0) become (0, 1)."""
        datum = DecompositionDatum(['a'], [2], genera={('a', 1): 1})
        assert canonicalize(datum).genera == {('a', 1): 0, ('a', 2): 1}
        assert canonicalize(canonicalize(datum)) == canonicalize(datum)

    def test_canonical_mark_position(self):
        datum = DecompositionDatum(['a', 'b'], [1, 2], marks={B1: 1}, edges={(A1, B1): 1, (A1, B2): 1})
        assert canonicalize(datum).marks[B2] == 1

    def test_canonical_count(self):
        """With one mark, the two mark positions on b's nodes collapse to one."""
        bounds = DecompositionBounds(['a', 'b'], [1, 2])
        assert count(bounds, 0, 1) == 7
        assert count(bounds, 0, 1, canonical=True) == 6

    @given(st.data())
    @settings(max_examples=50, deadline=None)
    def test_canonical_is_invariant(self, data):
        bounds = DecompositionBounds(['a', 'b'], [2, 2])
        datum = data.draw(st.sampled_from(list(enumerate_data(bounds, 1, 1))))
        permutations = {
            'a': tuple(data.draw(st.permutations(range(1, datum.counts[0] + 1)))),
            'b': tuple(data.draw(st.permutations(range(1, datum.counts[1] + 1)))),
        }
        canonical = canonicalize(datum)
        assert canonicalize(relabel(datum, permutations)) == canonical
        assert canonicalize(canonical) == canonical
        assert sort_key(canonical) <= sort_key(datum)
