"""
Decomposition data of stable maps into a special fiber.

A datum assigns to each component i a number N_i of source components
(i, 1) .. (i, N_i), each with a genus and a number of marked points, and
counts of nodes n_(ij)^(i'j') glued between source components lying over
different target components. Its graph has the source components as
vertices and the nodes as edges.
"""

import collections
import concurrent.futures
import itertools
import logging

import networkx as nx

from . import schema
from . import settings
from .errors import InvalidDecomposition, SchemaError, UnknownVertex


LOGGER = logging.getLogger(__name__)

DerivedMarks = collections.namedtuple('DerivedMarks', ['n_prime', 'labels', 'gluing'])


class DecompositionBounds(object):
    """
    The components of the special fiber with the bound N_i^0 of each
    """

    def __init__(self, components, limits):
        """
        :param components: [str]. component ids in order
        :param limits: [int]. N_i^0 per component, same order
        """
        self.components = tuple(components)
        self.limits = tuple(limits)
        if len(set(self.components)) != len(self.components):
            raise InvalidDecomposition('components repeat')
        if len(self.limits) != len(self.components):
            raise InvalidDecomposition('{} bounds for {} components'.format(len(self.limits), len(self.components)))
        for component, limit in zip(self.components, self.limits):
            if isinstance(limit, bool) or not isinstance(limit, int) or limit < 0:
                raise InvalidDecomposition('bound {!r} of component {} is not a nonnegative integer'.format(
                    limit, component))

    @classmethod
    def from_dict(cls, data, path='$'):
        schema.expect_fields(data, path, required=('components', 'limits'))
        components = [schema.expect_str(v, schema.child(schema.child(path, 'components'), k))
                      for k, v in enumerate(schema.expect_list(data['components'], schema.child(path, 'components')))]
        limits = [schema.expect_int(v, schema.child(schema.child(path, 'limits'), k), minimum=0)
                  for k, v in enumerate(schema.expect_list(data['limits'], schema.child(path, 'limits')))]
        return cls(components, limits)

    def to_dict(self):
        return {'components': list(self.components), 'limits': list(self.limits)}

    def __eq__(self, other):
        if not isinstance(other, DecompositionBounds):
            return NotImplemented
        return self.to_dict() == other.to_dict()


class DecompositionDatum(object):
    """
    Integer data (N_i, g_ij, n_ij, n_(ij)^(i'j')) over an ordered list of
    components. Nodes are (component id, j) with j counted from 1.
    """

    def __init__(self, components, counts, genera=None, marks=None, edges=None):
        """
        Initialization

        :param components: [str]. component ids in order
        :param counts: [int]. N_i per component
        :param genera: {(str, int): int}. g_ij; missing nodes have genus 0
        :param marks: {(str, int): int}. n_ij; missing nodes have none
        :param edges: {frozenset: int}. node count per pair of nodes; the pair
                      may also be given as a tuple of two nodes
        """
        self.components = tuple(components)
        self.counts = tuple(counts)
        if len(set(self.components)) != len(self.components):
            raise InvalidDecomposition('components repeat')
        if len(self.counts) != len(self.components):
            raise InvalidDecomposition('{} counts for {} components'.format(len(self.counts), len(self.components)))
        for count in self.counts:
            _check_count(count, 'N_i')
        self.nodes = tuple(
            (component, j)
            for component, count in zip(self.components, self.counts)
            for j in range(1, count + 1)
        )
        node_set = set(self.nodes)

        self.genera = {}
        self.marks = {}
        for table, target, name in ((genera, self.genera, 'genus'), (marks, self.marks, 'marks')):
            for node, value in (table or {}).items():
                if tuple(node) not in node_set:
                    raise InvalidDecomposition('{} given for unknown node {}'.format(name, node))
                _check_count(value, name)
            for node in self.nodes:
                target[node] = (table or {}).get(node, 0)

        self.edges = {}
        for pair, count in (edges or {}).items():
            ends = tuple(pair)
            if len(ends) != 2:
                raise InvalidDecomposition('edge {} does not join two nodes'.format(ends))
            a, b = (tuple(end) for end in ends)
            for end in (a, b):
                if end not in node_set:
                    raise InvalidDecomposition('edge end {} is not a node'.format(end))
            if a[0] == b[0]:
                raise InvalidDecomposition('nodes {} and {} lie over the same component'.format(a, b))
            _check_count(count, 'edge count')
            key = frozenset([a, b])
            if key in self.edges:
                raise InvalidDecomposition('edge {} {} given twice'.format(a, b))
            if count:
                self.edges[key] = count

    @property
    def node_index(self):
        return {node: k for k, node in enumerate(self.nodes)}

    def edge_count(self, a, b):
        return self.edges.get(frozenset([a, b]), 0)

    def slots(self):
        """Pairs of nodes over different components, in node order"""
        return [(a, b) for a, b in itertools.combinations(self.nodes, 2) if a[0] != b[0]]

    def within(self, bounds):
        """Whether N_i <= N_i^0 for every component"""
        if bounds.components != self.components:
            return False
        return all(count <= limit for count, limit in zip(self.counts, bounds.limits))

    @classmethod
    def from_dict(cls, data, path='$'):
        """
        :param data: dict. {"components", "counts", "nodes", "edges"}
        :return: DecompositionDatum.
        """
        schema.expect_fields(data, path, required=('components', 'counts'), optional=('nodes', 'edges'))
        components_path = schema.child(path, 'components')
        components = [schema.expect_str(v, schema.child(components_path, k))
                      for k, v in enumerate(schema.expect_list(data['components'], components_path))]
        counts_path = schema.child(path, 'counts')
        counts = [schema.expect_int(v, schema.child(counts_path, k), minimum=0)
                  for k, v in enumerate(schema.expect_list(data['counts'], counts_path))]

        genera, marks = {}, {}
        nodes_path = schema.child(path, 'nodes')
        for k, item in enumerate(schema.expect_list(data.get('nodes', []), nodes_path)):
            item_path = schema.child(nodes_path, k)
            schema.expect_fields(item, item_path, required=('node',), optional=('genus', 'marks'))
            node = _read_node(item['node'], schema.child(item_path, 'node'), components)
            if node in genera:
                raise SchemaError(item_path, 'node listed twice')
            genera[node] = schema.expect_int(item.get('genus', 0), schema.child(item_path, 'genus'), minimum=0)
            marks[node] = schema.expect_int(item.get('marks', 0), schema.child(item_path, 'marks'), minimum=0)

        edges = {}
        edges_path = schema.child(path, 'edges')
        for k, item in enumerate(schema.expect_list(data.get('edges', []), edges_path)):
            item_path = schema.child(edges_path, k)
            schema.expect_fields(item, item_path, required=('ends', 'count'))
            ends_path = schema.child(item_path, 'ends')
            ends = schema.expect_list(item['ends'], ends_path)
            if len(ends) != 2:
                raise SchemaError(ends_path, 'an edge has two ends')
            pair = frozenset(_read_node(end, schema.child(ends_path, e), components) for e, end in enumerate(ends))
            if pair in edges:
                raise SchemaError(item_path, 'edge listed twice')
            edges[pair] = schema.expect_int(item['count'], schema.child(item_path, 'count'), minimum=0)
        return cls(components, counts, genera, marks, edges)

    def to_dict(self):
        index = self.node_index
        edges = []
        for pair in sorted(self.edges, key=lambda p: sorted(index[n] for n in p)):
            a, b = sorted(pair, key=index.__getitem__)
            edges.append({'ends': [list(a), list(b)], 'count': self.edges[pair]})
        return {
            'components': list(self.components),
            'counts': list(self.counts),
            'nodes': [
                {'node': list(node), 'genus': self.genera[node], 'marks': self.marks[node]}
                for node in self.nodes
            ],
            'edges': edges,
        }

    def __eq__(self, other):
        if not isinstance(other, DecompositionDatum):
            return NotImplemented
        return sort_key(self) == sort_key(other) and self.components == other.components

    def __hash__(self):
        return hash((self.components, sort_key(self)))

    def __repr__(self):
        return 'DecompositionDatum(N={}, g={}, n={}, edges={})'.format(
            self.counts, [self.genera[v] for v in self.nodes], [self.marks[v] for v in self.nodes],
            {tuple(sorted(p)): c for p, c in self.edges.items()})


def _check_count(value, name):
    if isinstance(value, bool) or not isinstance(value, int) or value < 0:
        raise InvalidDecomposition('{} {!r} is not a nonnegative integer'.format(name, value))


def _read_node(value, path, components):
    schema.expect_list(value, path)
    if len(value) != 2:
        raise SchemaError(path, 'a node is [component, index]')
    component = schema.expect_ref(value[0], schema.child(path, 0), components)
    index = schema.expect_int(value[1], schema.child(path, 1), minimum=1)
    return component, index


def sort_key(datum):
    """
    Serialization order of data: N vector, then genera, then marks, then
    the node counts of every cross-component pair, all in node order.

    :return: tuple.
    """
    return (
        datum.counts,
        tuple(datum.genera[node] for node in datum.nodes),
        tuple(datum.marks[node] for node in datum.nodes),
        tuple(datum.edge_count(a, b) for a, b in datum.slots()),
    )


def build_graph(datum):
    """
    Graph of a datum: one vertex per node (i, j) carrying its genus and
    marks, and n_(ij)^(i'j') parallel edges.

    :return: networkx.MultiGraph.
    """
    graph = nx.MultiGraph()
    for node in datum.nodes:
        graph.add_node(node, genus=datum.genera[node], marks=datum.marks[node])
    for a, b in datum.slots():
        for _ in range(datum.edge_count(a, b)):
            graph.add_edge(a, b)
    return graph


def betti1(graph):
    """
    First Betti number, edges - vertices + connected components.

    :return: int.
    """
    if graph.number_of_nodes() == 0:
        return 0
    return graph.number_of_edges() - graph.number_of_nodes() + nx.number_connected_components(graph)


def is_type(datum, genus, marks):
    """
    Whether a datum has type (g, n): its graph is connected and nonempty,
    b1 + sum g_ij = g and sum n_ij = n.

    :return: bool.
    """
    graph = build_graph(datum)
    if graph.number_of_nodes() == 0 or not nx.is_connected(graph):
        return False
    return (betti1(graph) + sum(datum.genera.values()) == genus
            and sum(datum.marks.values()) == marks)


def derived_marks(datum):
    """
    Marked points of the source components after cutting the nodes:
    n'_ij = n_ij + sum of n_(ij)^(i'j'), the labels (l, (i,j), (i',j')) of
    the node points on each component, and the label pairs glued together.

    :return: DerivedMarks.
    """
    n_prime = dict(datum.marks)
    labels = {node: [] for node in datum.nodes}
    gluing = []
    for a, b in datum.slots():
        count = datum.edge_count(a, b)
        for label in range(1, count + 1):
            labels[a].append((label, a, b))
            labels[b].append((label, b, a))
            gluing.append(((label, a, b), (label, b, a)))
        n_prime[a] += count
        n_prime[b] += count
    return DerivedMarks(n_prime, labels, gluing)


def compatible_with_complex(datum, complex_):
    """
    Whether every node joins source components over adjacent components,
    so its point can map into the intersection of the two.

    :param complex_: WeightedComplex. components are its vertex ids
    :return: bool.
    """
    for component in datum.components:
        if component not in complex_.mult:
            raise UnknownVertex(component)
    for pair in datum.edges:
        a, b = tuple(pair)
        if not complex_.has_face([a[0], b[0]]):
            return False
    return True


def filter_by_degree(data, degree_model, budget):
    """
    Keep the data whose per-node degrees sum to at most the budget.

    :param data: iterable of DecompositionDatum
    :param degree_model: callable (datum, node) -> degree of the node
    :param budget: total degree A
    :return: generator of DecompositionDatum
    """
    for datum in data:
        if sum(degree_model(datum, node) for node in datum.nodes) <= budget:
            yield datum


# region enumeration

def _compositions(total, parts):
    """Tuples of parts nonnegative integers summing to total, increasing"""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _bounded(limit, parts):
    """Tuples of parts nonnegative integers summing to at most limit, increasing"""
    if parts == 0:
        yield ()
        return
    for first in range(limit + 1):
        for rest in _bounded(limit - first, parts - 1):
            yield (first,) + rest


def _connected(nodes, slots, counts):
    graph = nx.Graph()
    graph.add_nodes_from(nodes)
    graph.add_edges_from(slot for slot, count in zip(slots, counts) if count)
    return nx.is_connected(graph)


def _data_for_counts(components, counts, genus, marks, complex_=None):
    """
    Every connected datum of type (genus, marks) with the given N vector, in
    sort_key order.
    """
    shape = DecompositionDatum(components, counts)
    nodes, slots = shape.nodes, shape.slots()
    n_vertices = len(nodes)
    if complex_ is not None:
        slots_allowed = [complex_.has_face([a[0], b[0]]) for a, b in slots]
    else:
        slots_allowed = [True] * len(slots)

    edge_vectors = {}

    def connected_vectors(n_edges):
        if n_edges not in edge_vectors:
            edge_vectors[n_edges] = [
                vector for vector in _compositions(n_edges, len(slots))
                if all(allowed or not count for allowed, count in zip(slots_allowed, vector))
                and _connected(nodes, slots, vector)
            ]
        return edge_vectors[n_edges]

    for genera in _bounded(genus, n_vertices):
        loops = genus - sum(genera)
        n_edges = n_vertices - 1 + loops
        vectors = connected_vectors(n_edges)
        if not vectors:
            continue
        for mark_counts in _compositions(marks, n_vertices):
            for vector in vectors:
                yield DecompositionDatum(
                    components, counts,
                    dict(zip(nodes, genera)),
                    dict(zip(nodes, mark_counts)),
                    {frozenset(slot): count for slot, count in zip(slots, vector) if count},
                )


def enumerate_data(bounds, genus, marks, canonical=False, complex_=None, workers=None):
    """
    Stream every decomposition datum of type (genus, marks) within the bounds
    in sort_key order.

    N vectors are visited in increasing order; for each, genera are chosen
    first and fix the number of edges at V - 1 + (genus - sum g_ij), which
    bounds the search.

    :param bounds: DecompositionBounds.
    :param genus: int. g
    :param marks: int. n
    :param canonical: bool. emit only canonical representatives
    :param complex_: WeightedComplex. when given, keep only data whose nodes
                     lie over edges of the complex
    :param workers: int. worker threads over N vectors; SKELETON_KIT_THREADS
                    by default
    :return: generator of DecompositionDatum
    """
    if complex_ is not None:
        for component in bounds.components:
            if component not in complex_.mult:
                raise UnknownVertex(component)
    workers = workers or settings.enumeration_workers()
    count_vectors = [
        counts for counts in itertools.product(*(range(limit + 1) for limit in bounds.limits))
        if sum(counts) > 0
    ]
    LOGGER.info('enumerating type (%s, %s) over %s N vectors with %s workers',
                genus, marks, len(count_vectors), workers)

    if workers > 1:
        groups = _windowed_groups(bounds.components, count_vectors, genus, marks, complex_, workers)
    else:
        groups = (
            (counts, _data_for_counts(bounds.components, counts, genus, marks, complex_))
            for counts in count_vectors
        )

    for counts, group in groups:
        LOGGER.debug('N = %s', counts)
        for datum in group:
            if canonical and canonicalize(datum) != datum:
                continue
            yield datum


def _windowed_groups(components, count_vectors, genus, marks, complex_, workers):
    """
    (N vector, data) pairs in input order, computed on worker threads with at
    most workers groups in flight or waiting to be consumed.
    """
    def job(counts):
        return list(_data_for_counts(components, counts, genus, marks, complex_))

    remaining = iter(count_vectors)
    pending = collections.deque()
    with concurrent.futures.ThreadPoolExecutor(max_workers=workers) as executor:
        for counts in itertools.islice(remaining, workers):
            pending.append((counts, executor.submit(job, counts)))
        while pending:
            counts, future = pending.popleft()
            group = future.result()
            following = next(remaining, None)
            if following is not None:
                pending.append((following, executor.submit(job, following)))
            yield counts, group


def count(bounds, genus, marks, canonical=False, complex_=None, workers=None):
    """
    :return: int. length of the enumeration
    """
    return sum(1 for _ in enumerate_data(bounds, genus, marks, canonical, complex_, workers))


def relabel(datum, permutations):
    """
    Rename the nodes over each component.

    :param permutations: {str: (int)}. new index of node j is permutation[j - 1]
    :return: DecompositionDatum.
    """
    def rename(node):
        return node[0], permutations[node[0]][node[1] - 1]

    return DecompositionDatum(
        datum.components, datum.counts,
        {rename(node): value for node, value in datum.genera.items()},
        {rename(node): value for node, value in datum.marks.items()},
        {frozenset(rename(node) for node in pair): value for pair, value in datum.edges.items()},
    )


def canonicalize(datum):
    """
    Least representative under renaming the nodes over each component.

    :return: DecompositionDatum.
    """
    per_component = [
        [(component, permutation) for permutation in itertools.permutations(range(1, count + 1))]
        for component, count in zip(datum.components, datum.counts)
    ]
    best = None
    for choice in itertools.product(*per_component):
        candidate = relabel(datum, dict(choice))
        if best is None or sort_key(candidate) < sort_key(best):
            best = candidate
    return best

# endregion
