"""
Simple functions on a weighted complex: functions that are affine on every
face, stored as their vertex values, with face derivatives and the
linear / convex / strictly convex classification of faces
"""

import logging

from . import exact
from . import schema
from .errors import MissingValue, UnknownFace, UnknownVertex


LOGGER = logging.getLogger(__name__)


class Convexity(object):
    """
    Enum class of the per-face behaviour of a simple function
    """

    linear = 'linear'
    convex = 'convex'
    strictly_convex = 'strictly_convex'

    ALL = (linear, convex, strictly_convex)


class SimpleFunction(object):
    """
    A function affine on every face, determined by its values at the vertices
    """

    def __init__(self, values):
        """
        Initialization

        :param values: {str: Fraction}. value at each vertex id
        """
        self.values = {vertex: exact.to_fraction(value) for vertex, value in values.items()}

    @classmethod
    def constant(cls, complex_, value):
        return cls({vertex: value for vertex in complex_.vertices})

    @classmethod
    def from_dict(cls, data, complex_, path='$'):
        """
        Read a function document body against the complex it lives on.

        :param data: dict. {"values": {vertex id: rational string}}
        :param complex_: WeightedComplex.
        :param path: str. JSON path of data
        :return: SimpleFunction.
        """
        schema.expect_fields(data, path, required=('values',))
        values_path = schema.child(path, 'values')
        raw = schema.expect_object(data['values'], values_path)
        values = {}
        for vertex in sorted(raw):
            item_path = schema.child(values_path, vertex)
            schema.expect_ref(vertex, item_path, complex_.mult)
            values[vertex] = schema.expect_rational(raw[vertex], item_path)
        function = cls(values)
        check_function(complex_, function)
        return function

    def to_dict(self):
        return {
            'values': {vertex: exact.format_rational(value) for vertex, value in self.values.items()}
        }

    def __getitem__(self, vertex):
        return self.values[vertex]

    def __eq__(self, other):
        if not isinstance(other, SimpleFunction):
            return NotImplemented
        return self.values == other.values

    def __repr__(self):
        return 'SimpleFunction({})'.format(
            ', '.join('{}={}'.format(v, x) for v, x in self.values.items()))

    def __add__(self, other):
        return SimpleFunction({v: x + other.values[v] for v, x in self.values.items()})

    def __sub__(self, other):
        return SimpleFunction({v: x - other.values[v] for v, x in self.values.items()})

    def __neg__(self):
        return SimpleFunction({v: -x for v, x in self.values.items()})

    def scale(self, factor):
        factor = exact.to_fraction(factor)
        return SimpleFunction({v: factor * x for v, x in self.values.items()})


def check_function(complex_, function):
    """
    :raise UnknownVertex: a value is given for a vertex outside the complex
    :raise MissingValue: a vertex of the complex has no value
    """
    for vertex in function.values:
        if vertex not in complex_.mult:
            raise UnknownVertex(vertex)
    for vertex in complex_.vertices:
        if vertex not in function.values:
            raise MissingValue(vertex)


def evaluate(complex_, function, face, barycentric):
    """
    Value of a simple function at a point of a face.

    :param complex_: WeightedComplex.
    :param function: SimpleFunction.
    :param face: iterable of vertex ids
    :param barycentric: {str: Fraction}. barycentric coordinates over the face
    :return: Fraction. sum of lambda_i * phi(i)
    """
    face = complex_.face(face)
    weights = complex_.check_barycentric(face, barycentric)
    return sum((weight * function[vertex] for vertex, weight in weights.items()), exact.to_fraction(0))


def evaluate_at(complex_, function, point):
    """
    Value of a simple function at a point given in ambient coordinates; the
    face is the one spanned by the support of the point.

    :param point: [Fraction]. ambient coordinates in vertex order
    :return: Fraction.
    """
    face, weights = complex_.locate(point)
    return evaluate(complex_, function, face, weights)


def derivative(complex_, function, face):
    """
    Derivative of a simple function along a face: the class
    sum of mult_i * phi(i) * c_(i,I) in the class space of I.

    :return: ImmutableMatrix. column vector of the class space dimension
    """
    face = complex_.face(face)
    return complex_.face_derivative(function.values, face)


def classify_class(space, cls):
    """
    (is_linear, is_convex, is_strictly_convex) of a derivative class

    :param space: NumClassSpace.
    :param cls: ImmutableMatrix. class in that space
    :return: (bool, bool, bool).
    """
    return exact.is_zero(cls), space.is_nef(cls), space.is_ample(cls)


class FaceClassification(object):
    """
    Per-face classification of a simple function with the derived loci
    """

    def __init__(self, faces):
        """
        :param faces: {frozenset: (bool, bool, bool)}. linear, convex and
                      strictly convex flags of every face of the complex
        """
        self.faces = dict(faces)

    def flags(self, face):
        face = frozenset(face)
        if face not in self.faces:
            raise UnknownFace(face)
        linear, convex, strictly_convex = self.faces[face]
        return {
            Convexity.linear: linear,
            Convexity.convex: convex,
            Convexity.strictly_convex: strictly_convex,
        }

    def locus(self, kind):
        """
        :param kind: Convexity.
        :return: frozenset. faces along which the function is of that kind
        """
        if kind not in Convexity.ALL:
            raise ValueError('unknown convexity kind {!r}'.format(kind))
        position = Convexity.ALL.index(kind)
        return frozenset(face for face, triple in self.faces.items() if triple[position])

    @property
    def linear_locus(self):
        return self.locus(Convexity.linear)

    @property
    def convex_locus(self):
        return self.locus(Convexity.convex)

    @property
    def strictly_convex_locus(self):
        return self.locus(Convexity.strictly_convex)


def classify_faces(complex_, function):
    """
    Classify every face of the complex for a simple function.

    A face is linear when the derivative vanishes, convex when it is nef and
    strictly convex when it is ample against the face's test curves.

    :param complex_: WeightedComplex.
    :param function: SimpleFunction.
    :return: FaceClassification.
    """
    faces = {}
    for face in complex_.faces:
        cls = complex_.face_derivative(function.values, face)
        faces[face] = classify_class(complex_.class_space(face), cls)
    classification = FaceClassification(faces)
    LOGGER.debug('classified %s faces: %s linear, %s convex, %s strictly convex',
                 len(faces), len(classification.linear_locus), len(classification.convex_locus),
                 len(classification.strictly_convex_locus))
    return classification


def is_on_subset(classification, kind, faces):
    """
    Whether the function is of the given kind along every face of a set.

    :param classification: FaceClassification.
    :param kind: Convexity.
    :param faces: iterable of faces
    :return: bool. True for the empty set
    """
    locus = classification.locus(kind)
    result = True
    for face in faces:
        face = frozenset(face)
        if face not in classification.faces:
            raise UnknownFace(face)
        if face not in locus:
            result = False
    return result
