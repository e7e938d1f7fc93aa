"""
Curve skeletons: weighted complexes that are finite connected simple graphs.

Each vertex class space is Q with the identity as its test curve; a
neighbour's divisor class is 1 and a vertex's own class is
-(sum of neighbour multiplicities) / mult_i, so the special fiber relation
holds by construction. Edge class spaces are 0.

Line bundles are Cech cocycles on the vertex stars: one pair per edge j < k
(in the skeleton's vertex order) holding the transition function's values
at j and at k.
"""

import collections
import logging

import networkx as nx

from . import exact
from . import schema
from .errors import (
    Disconnected,
    DuplicateVertex,
    EmptyGraph,
    InvalidLinGerm,
    InvalidMultiplicity,
    MissingValue,
    NotAPermutation,
    NotSimple,
    SchemaError,
    StarSupportMismatch,
    UnknownFace,
    UnknownVertex,
)
from .metrizedBundle import Germ, admissible_twist_basis, curvature
from .skeletonMorphism import pullback_bundle, validate_morphism
from .weightedComplex import NumClassSpace, WeightedComplex


LOGGER = logging.getLogger(__name__)

CechDimensions = collections.namedtuple('CechDimensions', ['h1', 'kernel'])


class CurveSkeleton(object):
    """
    A connected simple graph with vertex multiplicities and a vertex order.
    Build one with build_skeleton.
    """

    def __init__(self, graph, mult, order):
        """
        Initialization

        :param graph: networkx.Graph. connected simple graph
        :param mult: {str: int}. multiplicity per vertex
        :param order: (str). vertex order, defines j < k on edges
        """
        self.graph = graph
        self.mult = dict(mult)
        self.order = tuple(order)
        self.index = {vertex: k for k, vertex in enumerate(self.order)}
        self.edges = tuple(sorted(
            (self._oriented(a, b) for a, b in graph.edges()),
            key=lambda edge: (self.index[edge[0]], self.index[edge[1]])))
        self.complex = self._export()

    def _oriented(self, a, b):
        return (a, b) if self.index[a] < self.index[b] else (b, a)

    def neighbours(self, vertex):
        if vertex not in self.index:
            raise UnknownVertex(vertex)
        return tuple(sorted(self.graph.neighbors(vertex), key=self.index.__getitem__))

    def neighbour_weight(self, vertex):
        """Sum of the multiplicities of the neighbours"""
        return sum(self.mult[j] for j in self.neighbours(vertex))

    def oriented_edge(self, a, b):
        """
        :return: (str, str). the edge {a, b} as (j, k) with j < k
        :raise UnknownFace: a and b are not adjacent
        """
        if a not in self.index or b not in self.index or not self.graph.has_edge(a, b):
            raise UnknownFace((a, b))
        return self._oriented(a, b)

    def _export(self):
        class_spaces = {}
        for vertex in self.order:
            classes = {j: [1] for j in self.neighbours(vertex)}
            classes[vertex] = [exact.to_fraction(-self.neighbour_weight(vertex)) / self.mult[vertex]]
            class_spaces[frozenset([vertex])] = NumClassSpace(1, classes, [[1]])
        faces = [[vertex] for vertex in self.order] + [list(edge) for edge in self.edges]
        return WeightedComplex([(v, self.mult[v]) for v in self.order], faces, class_spaces)

    @classmethod
    def from_dict(cls, data, path='$'):
        """
        :param data: dict. {"vertices": [{"id", "mult"}], "edges": [[j, k]]}
        :return: CurveSkeleton. vertex order as listed
        """
        schema.expect_fields(data, path, required=('vertices', 'edges'))
        mult = {}
        vertices_path = schema.child(path, 'vertices')
        for k, item in enumerate(schema.expect_list(data['vertices'], vertices_path)):
            item_path = schema.child(vertices_path, k)
            schema.expect_fields(item, item_path, required=('id', 'mult'))
            vertex = schema.expect_str(item['id'], schema.child(item_path, 'id'))
            if vertex in mult:
                raise DuplicateVertex(vertex)
            mult[vertex] = schema.expect_int(item['mult'], schema.child(item_path, 'mult'), minimum=1)
        edges = []
        edges_path = schema.child(path, 'edges')
        for k, item in enumerate(schema.expect_list(data['edges'], edges_path)):
            item_path = schema.child(edges_path, k)
            schema.expect_list(item, item_path)
            if len(item) != 2:
                raise SchemaError(item_path, 'an edge has two endpoints')
            edges.append(tuple(schema.expect_ref(v, schema.child(item_path, e), mult) for e, v in enumerate(item)))
        return build_skeleton(edges, mult)

    def to_dict(self):
        return {
            'vertices': [{'id': vertex, 'mult': self.mult[vertex]} for vertex in self.order],
            'edges': [list(edge) for edge in self.edges],
        }

    def __eq__(self, other):
        if not isinstance(other, CurveSkeleton):
            return NotImplemented
        return self.to_dict() == other.to_dict()

    def __repr__(self):
        return 'CurveSkeleton({} vertices, {} edges)'.format(len(self.order), len(self.edges))


def build_skeleton(graph, multiplicities, order=None):
    """
    Validate a graph with multiplicities as a curve skeleton.

    :param graph: networkx graph or iterable of (str, str) edges
    :param multiplicities: {str: int}. every vertex with its multiplicity
    :param order: [str]. vertex order, the order of multiplicities by default
    :return: CurveSkeleton.
    :raise EmptyGraph: no vertices
    :raise NotSimple: a loop or a repeated edge
    :raise Disconnected: more than one connected component
    """
    multiplicities = dict(multiplicities)
    if isinstance(graph, nx.Graph):
        for node in graph.nodes():
            if node not in multiplicities:
                raise InvalidMultiplicity(node, None)
        if graph.is_multigraph():
            for a, b in graph.edges():
                if graph.number_of_edges(a, b) > 1:
                    raise NotSimple((a, b))
        edges = list(graph.edges())
    else:
        edges = list(graph)

    if not multiplicities:
        raise EmptyGraph()
    for vertex, mult in multiplicities.items():
        if isinstance(mult, bool) or not isinstance(mult, int) or mult < 1:
            raise InvalidMultiplicity(vertex, mult)
    order = tuple(multiplicities) if order is None else tuple(order)
    if len(order) != len(multiplicities) or set(order) != set(multiplicities):
        raise NotAPermutation(order)

    simple = nx.Graph()
    simple.add_nodes_from(order)
    for a, b in edges:
        for vertex in (a, b):
            if vertex not in multiplicities:
                raise UnknownVertex(vertex)
        if a == b or simple.has_edge(a, b):
            raise NotSimple((a, b))
        simple.add_edge(a, b)

    components = nx.number_connected_components(simple)
    if components != 1:
        LOGGER.warning('skeleton has %s connected components', components)
        raise Disconnected(components)
    return CurveSkeleton(simple, multiplicities, order)


class Cocycle(object):
    """
    Transition functions per edge, as their values (at j, at k) for j < k
    """

    def __init__(self, pairs):
        """
        :param pairs: {(str, str): (Fraction, Fraction)}. pair per oriented edge
        """
        self.pairs = {
            edge: (exact.to_fraction(pair[0]), exact.to_fraction(pair[1])) for edge, pair in pairs.items()
        }

    @classmethod
    def for_skeleton(cls, skeleton, pairs):
        """
        Cocycle on a skeleton from pairs keyed by either orientation; a pair
        keyed (k, j) is the reverse transition and becomes (-b, -a) on (j, k).

        :raise UnknownFace: a key is not an edge
        :raise MissingValue: an edge has no pair
        """
        oriented = {}
        for (a, b), (first, second) in pairs.items():
            edge = skeleton.oriented_edge(a, b)
            if edge == (a, b):
                oriented[edge] = (first, second)
            else:
                oriented[edge] = (-exact.to_fraction(second), -exact.to_fraction(first))
        for edge in skeleton.edges:
            if edge not in oriented:
                raise MissingValue(edge)
        return cls({edge: oriented[edge] for edge in skeleton.edges})

    @classmethod
    def zero(cls, skeleton):
        return cls({edge: (0, 0) for edge in skeleton.edges})

    @classmethod
    def from_dict(cls, data, skeleton, path='$'):
        """
        :param data: dict. {"edges": [{"edge": [j, k], "pair": [a, b]}]}
        :return: Cocycle.
        """
        schema.expect_fields(data, path, required=('edges',))
        edges_path = schema.child(path, 'edges')
        pairs = {}
        for k, item in enumerate(schema.expect_list(data['edges'], edges_path)):
            item_path = schema.child(edges_path, k)
            schema.expect_fields(item, item_path, required=('edge', 'pair'))
            edge_path = schema.child(item_path, 'edge')
            ends = schema.expect_list(item['edge'], edge_path)
            if len(ends) != 2:
                raise SchemaError(edge_path, 'an edge has two endpoints')
            edge = tuple(schema.expect_ref(v, schema.child(edge_path, e), skeleton.index) for e, v in enumerate(ends))
            if edge in pairs or edge[::-1] in pairs:
                raise SchemaError(edge_path, 'edge listed twice')
            pairs[edge] = tuple(schema.expect_rationals(item['pair'], schema.child(item_path, 'pair'), length=2))
        return cls.for_skeleton(skeleton, pairs)

    def to_dict(self):
        return {
            'edges': [
                {'edge': list(edge), 'pair': [exact.format_rational(v) for v in pair]}
                for edge, pair in self.pairs.items()
            ]
        }

    def __eq__(self, other):
        if not isinstance(other, Cocycle):
            return NotImplemented
        return self.pairs == other.pairs

    def __repr__(self):
        return 'Cocycle({})'.format(self.pairs)

    def __add__(self, other):
        return Cocycle({
            edge: (a + other.pairs[edge][0], b + other.pairs[edge][1]) for edge, (a, b) in self.pairs.items()
        })

    def scale(self, factor):
        factor = exact.to_fraction(factor)
        return Cocycle({edge: (factor * a, factor * b) for edge, (a, b) in self.pairs.items()})


class LinGermFamily(object):
    """
    One germ per vertex, each linear on the vertex star:
    phi_i(i) * sum mult_j = sum mult_j * phi_i(j) over the neighbours j
    """

    def __init__(self, germs):
        """
        :param germs: {str: Germ}. germ per vertex
        """
        self.germs = dict(germs)

    @classmethod
    def from_dict(cls, data, skeleton, path='$'):
        schema.expect_fields(data, path, required=('germs',))
        germs_path = schema.child(path, 'germs')
        germs = {}
        for k, item in enumerate(schema.expect_list(data['germs'], germs_path)):
            germ = Germ.from_dict(item, skeleton.index, schema.child(germs_path, k))
            if germ.base in germs:
                raise SchemaError(schema.child(germs_path, k), 'second germ at {}'.format(germ.base))
            germs[germ.base] = germ
        return validate_lin_family(skeleton, germs)

    def to_dict(self):
        return {'germs': [germ.to_dict() for germ in self.germs.values()]}

    def __eq__(self, other):
        if not isinstance(other, LinGermFamily):
            return NotImplemented
        return self.germs == other.germs


def validate_lin_family(skeleton, germs):
    """
    :param germs: {str: Germ}. germ per vertex, over the closed star
    :return: LinGermFamily. germs in vertex order
    :raise StarSupportMismatch: a germ is missing or not star supported
    :raise InvalidLinGerm: a germ is not linear on its star
    """
    for vertex in germs:
        if vertex not in skeleton.index:
            raise UnknownVertex(vertex)
    ordered = {}
    for vertex in skeleton.order:
        star = skeleton.complex.closed_star(vertex)
        germ = germs.get(vertex)
        if germ is None:
            raise StarSupportMismatch(vertex, star, ())
        if set(germ.values) != set(star):
            raise StarSupportMismatch(vertex, star, tuple(sorted(germ.values)))
        if germ_degree(skeleton, germ) != 0:
            raise InvalidLinGerm(vertex)
        ordered[vertex] = germ
    return LinGermFamily(ordered)


def germ_degree(skeleton, germ):
    """
    Degree of the derivative of a germ at its base:
    -phi(i) * sum mult_j + sum mult_j * phi(j) over the neighbours j.

    :return: Fraction.
    """
    vertex = germ.base
    total = -germ[vertex] * skeleton.neighbour_weight(vertex)
    for j in skeleton.neighbours(vertex):
        total += skeleton.mult[j] * germ[j]
    return total


def coboundary(skeleton, family):
    """
    Cech coboundary of a germ family: on edge j < k the pair
    (phi_j(j) - phi_k(j), phi_j(k) - phi_k(k)).

    :return: Cocycle.
    """
    pairs = {}
    for j, k in skeleton.edges:
        first, second = family.germs[j], family.germs[k]
        pairs[(j, k)] = (first[j] - second[j], first[k] - second[k])
    return Cocycle(pairs)


def _pair(skeleton, cocycle, edge):
    pair = cocycle.pairs.get(edge)
    if pair is None:
        raise MissingValue(edge)
    return pair


def degree(skeleton, cocycle):
    """
    Degree of a cocycle: sum over edges j < k of
    mult_j * mult_k * (phi_jk(k) - phi_jk(j)).

    :return: Fraction.
    """
    for edge in cocycle.pairs:
        if edge not in skeleton.edges:
            raise UnknownFace(edge)
    total = exact.to_fraction(0)
    for j, k in skeleton.edges:
        at_j, at_k = _pair(skeleton, cocycle, (j, k))
        total += skeleton.mult[j] * skeleton.mult[k] * (at_k - at_j)
    return total


def bundle_degree(skeleton, cocycle):
    """
    Degree of the line bundle a cocycle represents; adding a coboundary does
    not change it.

    :return: Fraction.
    """
    return degree(skeleton, cocycle)


def _lin_basis(skeleton):
    """
    Spanning germs of the linear germs at every vertex: for each neighbour j
    of i, value 1 at j, 0 at the other neighbours and mult_j / sum mult at i.
    An isolated vertex carries the constant germ.
    """
    for vertex in skeleton.order:
        neighbours = skeleton.neighbours(vertex)
        if not neighbours:
            yield Germ(vertex, {vertex: 1})
            continue
        weight = skeleton.neighbour_weight(vertex)
        for j in neighbours:
            values = {k: 0 for k in neighbours}
            values[j] = 1
            values[vertex] = exact.to_fraction(skeleton.mult[j]) / weight
            yield Germ(vertex, values)


def coboundary_rank(skeleton):
    """
    Rank of the Cech coboundary on the linear germs.

    :return: (int, int). rank of d0 and dimension of the linear germ space
    """
    row_of = {}
    for e, edge in enumerate(skeleton.edges):
        row_of[edge] = 2 * e
    columns = []
    for germ in _lin_basis(skeleton):
        column = [exact.to_fraction(0)] * (2 * len(skeleton.edges))
        i = germ.base
        for k in skeleton.neighbours(i):
            edge = skeleton.oriented_edge(i, k)
            row = row_of[edge]
            if edge[0] == i:
                column[row] += germ[i]
                column[row + 1] += germ[k]
            else:
                column[row] -= germ[k]
                column[row + 1] -= germ[i]
        columns.append(column)
    rows = [[column[r] for column in columns] for r in range(2 * len(skeleton.edges))]
    rank = exact.rank(exact.matrix(rows, len(rows), len(columns)))
    return rank, len(columns)


def h1_dimension(skeleton):
    """
    Dimensions of the first Cech cohomology of the linear germs and of the
    kernel of the coboundary.

    :return: CechDimensions. h1 = 2 * edges - rank, kernel = dim Lin - rank
    """
    rank, dim_lin = coboundary_rank(skeleton)
    result = CechDimensions(2 * len(skeleton.edges) - rank, dim_lin - rank)
    LOGGER.debug('%s: rank d0 = %s, h1 = %s, kernel = %s', skeleton, rank, result.h1, result.kernel)
    return result


def lin_germ_basis(skeleton, vertex):
    """
    Basis of the linear germs at a vertex, of dimension the vertex degree
    when the vertex has neighbours.

    :return: [Germ].
    """
    return admissible_twist_basis(skeleton.complex, vertex)


def reorder(skeleton, cocycle, order):
    """
    Move a cocycle to another vertex order. Edges whose orientation flips
    carry the reverse transition (-phi_jk(k), -phi_jk(j)).

    :param order: [str]. permutation of the vertices
    :return: (CurveSkeleton, Cocycle).
    :raise NotAPermutation: order is not a permutation of the vertices
    """
    order = tuple(order)
    if len(order) != len(skeleton.order) or set(order) != set(skeleton.order):
        raise NotAPermutation(order)
    reordered = CurveSkeleton(skeleton.graph, skeleton.mult, order)
    return reordered, Cocycle.for_skeleton(reordered, cocycle.pairs)


def metrization_to_cocycle(skeleton, bundle):
    """
    Cocycle of the bundle a metrization presents: on edge j < k the pair
    (phi_j(j) - phi_k(j), phi_j(k) - phi_k(k)).

    :param bundle: MetrizedBundle. on skeleton.complex
    :return: Cocycle.
    """
    pairs = {}
    for j, k in skeleton.edges:
        first, second = bundle.germs[j], bundle.germs[k]
        pairs[(j, k)] = (first[j] - second[j], first[k] - second[k])
    return Cocycle(pairs)


def curvature_degree(skeleton, bundle):
    """
    Degree of the curvature: sum of mult_i * deg of the curvature at i.

    :return: Fraction.
    """
    classes = curvature(bundle)
    return sum((skeleton.mult[i] * exact.to_fraction(classes[i][0, 0]) for i in skeleton.order),
               exact.to_fraction(0))


def component_degree_sum(components):
    """
    Degree on a nodal curve: the sum of the degrees on the components of its
    normalization.

    :param components: [(CurveSkeleton, Cocycle)].
    :return: Fraction.
    """
    return sum((degree(skeleton, cocycle) for skeleton, cocycle in components), exact.to_fraction(0))


def morphism_degree(skeleton, morphism, bundle):
    """
    Degree of the pullback of a metrized bundle along a morphism whose
    source is the skeleton's complex.

    :param morphism: SkeletonMorphism.
    :param bundle: MetrizedBundle. on the morphism target
    :return: Fraction.
    """
    if morphism.source != skeleton.complex:
        raise ValueError('morphism source is not the complex of {}'.format(skeleton))
    pulled = pullback_bundle(morphism, bundle)
    return bundle_degree(skeleton, metrization_to_cocycle(skeleton, pulled))


def subdivide_edge(skeleton, edge, new_vertex):
    """
    Blow up the node of an edge: insert a vertex of multiplicity
    mult_a + mult_b between a and b.

    :param edge: (str, str). edge {a, b}
    :param new_vertex: str. id of the inserted vertex, last in the new order
    :return: (CurveSkeleton, SkeletonMorphism). the subdivided skeleton and
             its contraction onto the original
    """
    a, b = skeleton.oriented_edge(*edge)
    if new_vertex in skeleton.index:
        raise DuplicateVertex(new_vertex)
    mult = dict(skeleton.mult)
    mult[new_vertex] = skeleton.mult[a] + skeleton.mult[b]
    edges = [e for e in skeleton.edges if e != (a, b)] + [(a, new_vertex), (new_vertex, b)]
    subdivided = build_skeleton(edges, mult, skeleton.order + (new_vertex,))

    matrix = []
    for vertex in subdivided.order:
        if vertex == new_vertex:
            matrix.append([1 if j in (a, b) else 0 for j in skeleton.order])
        else:
            matrix.append([1 if j == vertex else 0 for j in skeleton.order])
    betas = {frozenset([vertex]): exact.identity_map(1) for vertex in skeleton.order}
    morphism = validate_morphism(subdivided.complex, skeleton.complex, matrix, None, betas)
    return subdivided, morphism
