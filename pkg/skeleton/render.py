"""
DOT rendering of curve skeletons and decomposition graphs
"""

import logging

import graphviz

from . import exact
from .decompositionDatum import build_graph


LOGGER = logging.getLogger(__name__)


def skeleton_dot(skeleton, cocycle=None):
    """
    DOT text of a skeleton: vertices labelled "id:mult" and, when a cocycle
    is given, edges labelled with its pairs.

    :param skeleton: CurveSkeleton.
    :param cocycle: Cocycle.
    :return: str.
    """
    dot = graphviz.Graph(name='skeleton')
    names = {}
    for k, vertex in enumerate(skeleton.order):
        names[vertex] = 'v{}'.format(k)
        dot.node(names[vertex], label='{}:{}'.format(vertex, skeleton.mult[vertex]))
    for j, k in skeleton.edges:
        if cocycle is None:
            dot.edge(names[j], names[k])
        else:
            first, second = cocycle.pairs[(j, k)]
            dot.edge(names[j], names[k], label='({},{})'.format(
                exact.format_rational(first), exact.format_rational(second)))
    return dot.source


def decomposition_dot(datum):
    """
    DOT text of the graph of a datum: vertices labelled "(i,j):g", one edge
    per node so parallel edges are drawn separately.

    :param datum: DecompositionDatum.
    :return: str.
    """
    graph = build_graph(datum)
    dot = graphviz.Graph(name='decomposition')
    names = {}
    for k, node in enumerate(datum.nodes):
        names[node] = 'n{}'.format(k)
        dot.node(names[node], label='({},{}):{}'.format(node[0], node[1], graph.nodes[node]['genus']))
    for a, b in datum.slots():
        for _ in range(graph.number_of_edges(a, b)):
            dot.edge(names[a], names[b])
    LOGGER.debug('rendered %s nodes', len(datum.nodes))
    return dot.source
