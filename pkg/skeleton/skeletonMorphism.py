"""
Morphisms of weighted complexes.

A morphism is given by the pullback matrix A of vertical divisors
(A[i][j] is the coefficient of D_i in f*D_j), the image face J(I) of every
source face and a class pullback map beta_I from the class space of J(I) to
that of I. The affine map on complexes, pullbacks of functions and bundles
and the functoriality identities all derive from that data.
"""

import logging

from . import exact
from . import schema
from .errors import (
    ClassIncoherent,
    DegreeRelationViolated,
    DimensionMismatch,
    ImageGermUndefined,
    ImageNotAFace,
    NaturalityViolated,
    NonIntegralPullback,
    SchemaError,
    UnknownFace,
)
from .metrizedBundle import Germ, curvature, validate_metrization
from .simpleFunction import SimpleFunction, derivative
from .weightedComplex import WeightedComplex


LOGGER = logging.getLogger(__name__)


class SkeletonMorphism(object):
    """
    A validated morphism; build one with validate_morphism
    """

    def __init__(self, source, target, matrix, face_images, class_pullbacks):
        """
        Initialization

        :param source: WeightedComplex.
        :param target: WeightedComplex.
        :param matrix: ((int)). A, rows in source vertex order, columns in
                       target vertex order
        :param face_images: {frozenset: frozenset}. J(I) per source face
        :param class_pullbacks: {frozenset: ImmutableMatrix}. beta_I per source face
        """
        self.source = source
        self.target = target
        self.matrix = matrix
        self.face_images = face_images
        self.class_pullbacks = class_pullbacks

    def coefficient(self, i, j):
        return self.matrix[self.source.index[i]][self.target.index[j]]

    def image(self, face):
        face = self.source.face(face)
        return self.face_images[face]

    def beta(self, face):
        return self.class_pullbacks[self.source.face(face)]

    @classmethod
    def from_dict(cls, data, path='$'):
        """
        :param data: dict. {"source", "target", "matrix", "face_images", "class_pullbacks"}
        :return: SkeletonMorphism. validated
        """
        schema.expect_fields(data, path, required=('source', 'target', 'matrix'),
                             optional=('face_images', 'class_pullbacks'))
        source = WeightedComplex.from_dict(data['source'], schema.child(path, 'source'))
        target = WeightedComplex.from_dict(data['target'], schema.child(path, 'target'))

        matrix_path = schema.child(path, 'matrix')
        rows = schema.expect_list(data['matrix'], matrix_path)
        if len(rows) != len(source.vertices):
            raise SchemaError(matrix_path, 'expected {} rows, got {}'.format(len(source.vertices), len(rows)))
        matrix = []
        for r, row in enumerate(rows):
            row_path = schema.child(matrix_path, r)
            schema.expect_list(row, row_path)
            if len(row) != len(target.vertices):
                raise SchemaError(row_path, 'expected {} entries, got {}'.format(len(target.vertices), len(row)))
            matrix.append([_read_coefficient(v, schema.child(row_path, c)) for c, v in enumerate(row)])

        face_images = {}
        images_path = schema.child(path, 'face_images')
        for k, item in enumerate(schema.expect_list(data.get('face_images', []), images_path)):
            item_path = schema.child(images_path, k)
            schema.expect_fields(item, item_path, required=('face', 'image'))
            face = _read_face(item['face'], schema.child(item_path, 'face'), source.mult)
            face_images[face] = _read_face(item['image'], schema.child(item_path, 'image'), target.mult)

        class_pullbacks = {}
        pullbacks_path = schema.child(path, 'class_pullbacks')
        for k, item in enumerate(schema.expect_list(data.get('class_pullbacks', []), pullbacks_path)):
            item_path = schema.child(pullbacks_path, k)
            schema.expect_fields(item, item_path, required=('face', 'matrix'))
            face = _read_face(item['face'], schema.child(item_path, 'face'), source.mult)
            beta_path = schema.child(item_path, 'matrix')
            beta_rows = [schema.expect_rationals(row, schema.child(beta_path, r))
                         for r, row in enumerate(schema.expect_list(item['matrix'], beta_path))]
            n_cols = len(beta_rows[0]) if beta_rows else 0
            if any(len(row) != n_cols for row in beta_rows):
                raise SchemaError(beta_path, 'rows of different lengths')
            class_pullbacks[face] = exact.matrix(beta_rows, len(beta_rows), n_cols)

        return validate_morphism(source, target, matrix, face_images, class_pullbacks)

    def to_dict(self):
        source, target = self.source, self.target
        class_pullbacks = []
        for face in source.faces:
            beta = self.class_pullbacks[face]
            if beta.rows == 0 or beta.cols == 0:
                continue
            class_pullbacks.append({
                'face': list(source.ordered(face)),
                'matrix': [[exact.format_rational(v) for v in row] for row in exact.rows_of(beta)],
            })
        return {
            'source': source.to_dict(),
            'target': target.to_dict(),
            'matrix': [list(row) for row in self.matrix],
            'face_images': [
                {'face': list(source.ordered(face)), 'image': list(target.ordered(self.face_images[face]))}
                for face in source.faces
            ],
            'class_pullbacks': class_pullbacks,
        }

    def __eq__(self, other):
        if not isinstance(other, SkeletonMorphism):
            return NotImplemented
        return self.to_dict() == other.to_dict()

    def __repr__(self):
        return 'SkeletonMorphism({} -> {})'.format(self.source, self.target)


def _read_coefficient(value, path):
    if isinstance(value, bool):
        raise SchemaError(path, 'expected an integer, got {!r}'.format(value))
    if isinstance(value, int):
        return exact.to_fraction(value)
    return schema.expect_rational(value, path)


def _read_face(value, path, known):
    schema.expect_list(value, path)
    if not value:
        raise SchemaError(path, 'a face needs at least one vertex')
    return frozenset(schema.expect_ref(v, schema.child(path, k), known) for k, v in enumerate(value))


# region validation

def _check_matrix(source, target, matrix):
    rows = [list(row) for row in matrix]
    if len(rows) != len(source.vertices) or any(len(row) != len(target.vertices) for row in rows):
        raise DimensionMismatch('pullback matrix', (len(source.vertices), len(target.vertices)),
                                (len(rows), len(rows[0]) if rows else 0))
    checked = []
    for i, row in zip(source.vertices, rows):
        entries = []
        for j, value in zip(target.vertices, row):
            value = exact.to_fraction(value)
            if value.denominator != 1 or value < 0:
                raise NonIntegralPullback(i, j, value)
            entries.append(int(value))
        total = sum(target.mult[j] * a for j, a in zip(target.vertices, entries))
        if total != source.mult[i]:
            LOGGER.warning('pullback of the special fiber fails at %s', i)
            raise DegreeRelationViolated(i, source.mult[i], total)
        checked.append(tuple(entries))
    return tuple(checked)


def _support(source, target, matrix, face):
    columns = set()
    for i in face:
        row = matrix[source.index[i]]
        columns.update(j for j, a in zip(target.vertices, row) if a > 0)
    return frozenset(columns)


def validate_morphism(source, target, matrix, face_images=None, class_pullbacks=None):
    """
    Validate morphism data between two validated complexes.

    Image faces are recomputed from the supports of the matrix rows; a given
    image must be that minimal face. Class pullbacks may be left out where
    the source or image class space has dimension 0.

    :param source: WeightedComplex.
    :param target: WeightedComplex.
    :param matrix: [[int]]. A, rows in source vertex order
    :param face_images: {frozenset: frozenset}. optional J(I) per source face
    :param class_pullbacks: {frozenset: ImmutableMatrix}. beta_I per source face
    :return: SkeletonMorphism.
    """
    matrix = _check_matrix(source, target, matrix)
    face_images = {frozenset(k): frozenset(v) for k, v in (face_images or {}).items()}
    class_pullbacks = {frozenset(k): v for k, v in (class_pullbacks or {}).items()}
    for face in list(face_images) + list(class_pullbacks):
        if not source.has_face(face):
            raise UnknownFace(tuple(face))

    images = {}
    for face in source.faces:
        image = _support(source, target, matrix, face)
        if not target.has_face(image):
            raise ImageNotAFace(source.ordered(face), tuple(image))
        given = face_images.get(face)
        if given is not None and given != image:
            raise ImageNotAFace(source.ordered(face), tuple(given))
        images[face] = image

    betas = {}
    for face in source.faces:
        shape = (source.class_space(face).dim, target.class_space(images[face]).dim)
        beta = class_pullbacks.get(face)
        if beta is None:
            if min(shape) > 0:
                raise DimensionMismatch('class pullback on face {}'.format(source.ordered(face)), shape, None)
            beta = exact.zero_map(*shape)
        elif beta.shape != shape:
            raise DimensionMismatch('class pullback on face {}'.format(source.ordered(face)), shape, beta.shape)
        betas[face] = beta

    for face in source.faces:
        space = source.class_space(face)
        image_space = target.class_space(images[face])
        for j in target.vertices:
            pulled = betas[face] * image_space.divisor_class(j)
            expected = exact.zero_vector(space.dim)
            column = target.index[j]
            for i in source.vertices:
                a = matrix[source.index[i]][column]
                if a:
                    expected += a * space.divisor_class(i)
            if pulled != expected:
                LOGGER.warning('class pullback on %s is incoherent at target vertex %s',
                               source.ordered(face), j)
                raise ClassIncoherent(source.ordered(face), j)

    for small in source.faces:
        for large in source.faces:
            if not small < large:
                continue
            left = source.restriction(small, large) * betas[small]
            right = betas[large] * target.restriction(images[small], images[large])
            if left != right:
                raise NaturalityViolated((source.ordered(small), source.ordered(large)))

    LOGGER.debug('validated morphism from %s vertices to %s vertices',
                 len(source.vertices), len(target.vertices))
    return SkeletonMorphism(source, target, matrix, images, betas)

# endregion


def identity_morphism(complex_):
    n = len(complex_.vertices)
    matrix = [[1 if r == c else 0 for c in range(n)] for r in range(n)]
    betas = {face: exact.identity_map(complex_.class_space(face).dim) for face in complex_.faces}
    return validate_morphism(complex_, complex_, matrix, None, betas)


def compose(first, second):
    """
    The composite second o first.

    :param first: SkeletonMorphism. X -> Y
    :param second: SkeletonMorphism. Y -> Z
    :return: SkeletonMorphism. X -> Z with A = A_first * A_second
    """
    if first.target != second.source:
        raise DimensionMismatch('composition', 'target of the first morphism', 'a different complex')
    middle = first.target
    matrix = []
    for row in first.matrix:
        matrix.append([
            sum(row[middle.index[y]] * second.matrix[middle.index[y]][c] for y in middle.vertices)
            for c in range(len(second.target.vertices))
        ])
    betas = {}
    for face in first.source.faces:
        image = first.face_images[face]
        betas[face] = first.class_pullbacks[face] * second.class_pullbacks[image]
    return validate_morphism(first.source, second.target, matrix, None, betas)


def map_point(morphism, face, barycentric):
    """
    Image of a point of a source face.

    :param face: iterable of source vertex ids
    :param barycentric: {str: Fraction}. coordinates over the face
    :return: (frozenset, {str: Fraction}). image face and barycentric
             coordinates mu_j = mult'_j * sum_i A[i][j] * lambda_i / mult_i
    """
    source, target = morphism.source, morphism.target
    face = source.face(face)
    weights = source.check_barycentric(face, barycentric)
    image = morphism.face_images[face]
    mu = {}
    for j in target.ordered(image):
        column = target.index[j]
        mu[j] = target.mult[j] * sum(
            (morphism.matrix[source.index[i]][column] * weights[i] / source.mult[i] for i in weights),
            exact.to_fraction(0))
    return image, mu


def map_ambient(morphism, point):
    """
    Image of an ambient point, y = A^T x.

    :return: (Fraction). target ambient coordinates
    """
    source, target = morphism.source, morphism.target
    source.locate(point)
    point = [exact.to_fraction(x) for x in point]
    return tuple(
        sum((morphism.matrix[r][c] * point[r] for r in range(len(source.vertices))), exact.to_fraction(0))
        for c in range(len(target.vertices))
    )


def _vertex_image(morphism, vertex):
    return map_point(morphism, [vertex], {vertex: 1})


def pullback_function(morphism, function):
    """
    Pull a simple function back along the morphism:
    value at i is sum_j mult'_j * A[i][j] * phi(j) / mult_i.

    :return: SimpleFunction. on the source
    """
    source, target = morphism.source, morphism.target
    values = {}
    for i in source.vertices:
        row = morphism.matrix[source.index[i]]
        total = sum((target.mult[j] * a * function[j] for j, a in zip(target.vertices, row) if a),
                    exact.to_fraction(0))
        values[i] = total / source.mult[i]
    return SimpleFunction(values)


def _representative(morphism, vertex):
    image = morphism.face_images[frozenset([vertex])]
    return morphism.target.ordered(image)[0]


def pullback_bundle(morphism, bundle):
    """
    Pull a metrized bundle back along the morphism.

    The germ at a source vertex i pulls back the target germ of the least
    vertex j of J({i}), evaluated at the images of i's closed star.

    :param bundle: MetrizedBundle. on the target
    :return: MetrizedBundle. validated on the source
    """
    source = morphism.source
    germs = {}
    for i in source.vertices:
        j = _representative(morphism, i)
        target_germ = bundle.germs[j]
        values = {}
        for k in source.closed_star(i):
            _, mu = _vertex_image(morphism, k)
            if any(vertex not in target_germ.values for vertex in mu):
                raise ImageGermUndefined(i, j)
            values[k] = sum((weight * target_germ[vertex] for vertex, weight in mu.items()),
                            exact.to_fraction(0))
        germs[i] = Germ(i, values)
    return validate_metrization(source, germs)


def pullback_curvature(morphism, classes, choose=None):
    """
    Pull target curvature classes back to the source vertices.

    :param classes: {str: ImmutableMatrix}. curvature per target vertex
    :param choose: callable (source vertex, image face) -> target vertex in
                   the image face; the least vertex when not given
    :return: {str: ImmutableMatrix}. class per source vertex
    """
    source, target = morphism.source, morphism.target
    pulled = {}
    for i in source.vertices:
        vertex_face = frozenset([i])
        image = morphism.face_images[vertex_face]
        j = choose(i, image) if choose else target.ordered(image)[0]
        restricted = target.restriction(frozenset([j]), image) * classes[j]
        pulled[i] = morphism.class_pullbacks[vertex_face] * restricted
    return pulled


def check_derivative_functoriality(morphism, function):
    """
    Whether beta_I of the derivative along J(I) equals the derivative of the
    pulled back function along I, for every source face.

    :return: bool.
    """
    source, target = morphism.source, morphism.target
    pulled = pullback_function(morphism, function)
    for face in source.faces:
        left = morphism.class_pullbacks[face] * derivative(target, function, morphism.face_images[face])
        if left != derivative(source, pulled, face):
            LOGGER.info('derivative functoriality fails on %s', source.ordered(face))
            return False
    return True


def check_curvature_functoriality(morphism, bundle):
    """
    Whether pulling back the curvature equals the curvature of the pulled
    back bundle.

    :return: bool.
    """
    return pullback_curvature(morphism, curvature(bundle)) == curvature(pullback_bundle(morphism, bundle))
