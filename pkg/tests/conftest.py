"""
Pytest fixtures for skeleton-kit tests.

Key fixtures:
- two_vertex_complex: the mult (2,3) edge with vertex class spaces of dimension 1
- path23: the same edge as a curve skeleton
- unit_edge: curve skeleton on two vertices of multiplicity 1
- make_skeleton: factory building skeletons from edge lists
- write_document: factory writing a document file under tmp_path
"""

import json
import os
import sys
from fractions import Fraction

import pytest

# Add project root to path so we can import skeleton, skeletonKit, etc.
PROJECT_ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
if PROJECT_ROOT not in sys.path:
    sys.path.insert(0, PROJECT_ROOT)

SAMPLES_DIR = os.path.join(PROJECT_ROOT, 'samples')


@pytest.fixture(autouse=True)
def clean_environment(monkeypatch):
    """
    Keep a developer's SKELETON_KIT_* variables out of the tests.
    """
    monkeypatch.delenv('SKELETON_KIT_THREADS', raising=False)
    monkeypatch.delenv('SKELETON_KIT_LOG_LEVEL', raising=False)


@pytest.fixture
def two_vertex_complex():
    """
    Vertices 1, 2 of multiplicity 2 and 3 joined by an edge. Vertex class
    spaces have dimension 1 with the identity test curve, the edge space
    has dimension 0.
    """
    from skeleton.weightedComplex import NumClassSpace, WeightedComplex

    return WeightedComplex(
        [('1', 2), ('2', 3)],
        [['1'], ['2'], ['1', '2']],
        {
            frozenset(['1']): NumClassSpace(1, {'1': [Fraction(-3, 2)], '2': [1]}, [[1]]),
            frozenset(['2']): NumClassSpace(1, {'1': [1], '2': [Fraction(-2, 3)]}, [[1]]),
        },
    )


@pytest.fixture
def make_skeleton():
    """
    Factory fixture for curve skeletons.

    Usage:
        def test_triangle(make_skeleton):
            skeleton = make_skeleton([('a', 'b'), ('b', 'c'), ('a', 'c')], {'a': 1, 'b': 1, 'c': 1})
    """
    from skeleton.curveSkeleton import build_skeleton

    def _make_skeleton(edges, mult, order=None):
        return build_skeleton(edges, mult, order)

    return _make_skeleton


@pytest.fixture
def path23(make_skeleton):
    return make_skeleton([('1', '2')], {'1': 2, '2': 3})


@pytest.fixture
def unit_edge(make_skeleton):
    return make_skeleton([('1', '2')], {'1': 1, '2': 1})


@pytest.fixture
def write_document(tmp_path):
    """
    Factory fixture writing a document file.

    Usage:
        def test_cli(write_document):
            path = write_document('cocycle', {'edges': [...]})
    """
    counter = [0]

    def _write_document(kind, data, version=1):
        counter[0] += 1
        path = tmp_path / '{}_{}.json'.format(kind, counter[0])
        path.write_text(json.dumps({'format_version': version, 'kind': kind, 'data': data}), encoding='utf-8')
        return str(path)

    return _write_document


@pytest.fixture
def sample_path():
    """
    Path of a file in samples/.
    """
    def _sample_path(name):
        return os.path.join(SAMPLES_DIR, name)

    return _sample_path
