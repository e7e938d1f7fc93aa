"""
Weighted simplicial complexes: the dual intersection complex of a special
fiber, with vertex multiplicities and per-face numerical class data.

A face is a frozenset of vertex ids. Faces are listed explicitly by the
caller; nothing is inferred.
"""

import logging

from . import exact
from . import schema
from .errors import (
    DimensionMismatch,
    DuplicateVertex,
    InvalidMultiplicity,
    MissingSingleton,
    NegativeCoordinate,
    NonAdjacentClass,
    NotOnFace,
    NotSubsetClosed,
    RestrictionIncoherent,
    SchemaError,
    SpecialFiberRelationViolated,
    StarSupportMismatch,
    UnknownFace,
    UnknownVertex,
)
from .simpleFunction import SimpleFunction


LOGGER = logging.getLogger(__name__)


class NumClassSpace(object):
    """
    Numerical classes of a stratum modelled as Q^dim, with the divisor
    classes restricted to it and the test curves deciding nef and ample
    """

    def __init__(self, dim, divisor_classes=None, test_curves=None):
        """
        Initialization

        :param dim: int. dimension of the class space
        :param divisor_classes: {str: ImmutableMatrix}. class c_(i,I) per
                                vertex; missing vertices have the zero class
        :param test_curves: [ImmutableMatrix]. functionals of length dim
        """
        self.dim = dim
        self.divisor_classes = {
            vertex: _as_vector(cls) for vertex, cls in (divisor_classes or {}).items()
        }
        self.test_curves = tuple(_as_vector(curve) for curve in (test_curves or ()))

    def divisor_class(self, vertex):
        cls = self.divisor_classes.get(vertex)
        if cls is None:
            return exact.zero_vector(self.dim)
        return cls

    def is_nef(self, cls):
        return all(exact.pairing(curve, cls) >= 0 for curve in self.test_curves)

    def is_ample(self, cls):
        """
        Strict positivity against every test curve. A point (dimension 0) has
        ample trivial class; a positive-dimensional space without test curves
        has no ample class.
        """
        if self.dim == 0:
            return True
        if not self.test_curves:
            return False
        return all(exact.pairing(curve, cls) > 0 for curve in self.test_curves)

    def to_dict(self, face_ids):
        return {
            'face': face_ids,
            'dim': self.dim,
            'classes': {
                vertex: [exact.format_rational(v) for v in exact.entries(cls)]
                for vertex, cls in sorted(self.divisor_classes.items())
                if not exact.is_zero(cls)
            },
            'test_curves': [
                [exact.format_rational(v) for v in exact.entries(curve)]
                for curve in self.test_curves
            ],
        }


def _as_vector(value):
    if hasattr(value, 'rows'):
        return value
    return exact.vector(value)


class WeightedComplex(object):
    """
    A validated weighted complex. Construction checks every invariant, so an
    instance is always valid and is never mutated afterwards.
    """

    def __init__(self, vertices, faces, class_spaces=None, restrictions=None):
        """
        Initialization

        :param vertices: [(str, int)]. vertex id and multiplicity, in vertex order
        :param faces: iterable of iterables of vertex ids, singletons included
        :param class_spaces: {frozenset: NumClassSpace}. faces left out get a
                             dimension 0 space
        :param restrictions: {(frozenset, frozenset): ImmutableMatrix}.
                             restriction from the class space of the smaller
                             face to that of the larger one
        """
        self.vertices = ()
        self.mult = {}
        self.index = {}
        for vertex, mult in vertices:
            if vertex in self.mult:
                raise DuplicateVertex(vertex)
            if isinstance(mult, bool) or not isinstance(mult, int) or mult < 1:
                raise InvalidMultiplicity(vertex, mult)
            self.index[vertex] = len(self.vertices)
            self.vertices += (vertex,)
            self.mult[vertex] = mult

        face_set = set()
        for face in faces:
            face = frozenset(face)
            if not face:
                raise UnknownFace(face)
            for vertex in face:
                if vertex not in self.mult:
                    raise UnknownVertex(vertex)
            face_set.add(face)
        self.faces = tuple(sorted(face_set, key=self.face_key))
        self._face_set = frozenset(face_set)

        self._class_spaces = {}
        for face, space in (class_spaces or {}).items():
            face = frozenset(face)
            if face not in self._face_set:
                raise UnknownFace(face)
            self._class_spaces[face] = space
        for face in self.faces:
            self._class_spaces.setdefault(face, NumClassSpace(0))

        self._restrictions = {}
        for (source, target), mat in (restrictions or {}).items():
            self._restrictions[(frozenset(source), frozenset(target))] = mat

        self._check_faces()
        self._check_class_spaces()
        self._check_restrictions()

        self._stars = {}
        for face in self.faces:
            self._stars[face] = tuple(
                k for k in self.vertices if (face | {k}) in self._face_set
            )
        LOGGER.debug('validated complex with %s vertices and %s faces',
                     len(self.vertices), len(self.faces))

    # region validation

    def _check_faces(self):
        for vertex in self.vertices:
            if frozenset([vertex]) not in self._face_set:
                raise MissingSingleton(vertex)
        for face in self.faces:
            if len(face) < 2:
                continue
            # closure under codimension one subsets gives closure under all
            for vertex in self.ordered(face):
                subset = face - {vertex}
                if subset not in self._face_set:
                    raise NotSubsetClosed(self.ordered(face), self.ordered(subset))

    def _check_class_spaces(self):
        for face in self.faces:
            space = self.class_space(face)
            ids = self.ordered(face)
            for vertex, cls in space.divisor_classes.items():
                if vertex not in self.mult:
                    raise UnknownVertex(vertex)
                if cls.rows != space.dim or cls.cols != 1:
                    raise DimensionMismatch('class of {} on face {}'.format(vertex, ids),
                                            space.dim, cls.rows)
                if not exact.is_zero(cls) and (face | {vertex}) not in self._face_set:
                    raise NonAdjacentClass(ids, vertex)
            for curve in space.test_curves:
                if curve.rows != space.dim or curve.cols != 1:
                    raise DimensionMismatch('test curve on face {}'.format(ids),
                                            space.dim, curve.rows)

            residual = exact.zero_vector(space.dim)
            for vertex in self.vertices:
                residual += self.mult[vertex] * space.divisor_class(vertex)
            if not exact.is_zero(residual):
                LOGGER.warning('special fiber relation fails on face %s', ids)
                raise SpecialFiberRelationViolated(ids, exact.entries(residual))

    def _check_restrictions(self):
        for (source, target), mat in self._restrictions.items():
            for face in (source, target):
                if face not in self._face_set:
                    raise UnknownFace(face)
            pair = (self.ordered(source), self.ordered(target))
            if not source < target:
                raise RestrictionIncoherent(pair, 'faces are not strictly nested')
            expected = (self.class_space(target).dim, self.class_space(source).dim)
            if mat.shape != expected:
                raise DimensionMismatch('restriction {} -> {}'.format(*pair), expected, mat.shape)

        nested = [
            (source, target)
            for source in self.faces for target in self.faces if source < target
        ]
        for source, target in nested:
            pair = (self.ordered(source), self.ordered(target))
            dims = (self.class_space(source).dim, self.class_space(target).dim)
            if (source, target) not in self._restrictions and min(dims) > 0:
                raise RestrictionIncoherent(pair, 'restriction map is missing')

            rho = self.restriction(source, target)
            source_space = self.class_space(source)
            target_space = self.class_space(target)
            for vertex in self.vertices:
                if rho * source_space.divisor_class(vertex) != target_space.divisor_class(vertex):
                    raise RestrictionIncoherent(
                        pair, 'class of vertex {} does not restrict'.format(vertex))

        for source, middle in nested:
            for target in self.faces:
                if not middle < target:
                    continue
                composed = self.restriction(middle, target) * self.restriction(source, middle)
                if composed != self.restriction(source, target):
                    raise RestrictionIncoherent(
                        (self.ordered(source), self.ordered(target)),
                        'does not factor through {}'.format(self.ordered(middle)))

    # endregion

    # region serialization

    @classmethod
    def from_dict(cls, data, path='$'):
        """
        Build a complex from a decoded document body.

        :param data: dict. {"vertices", "faces", "class_spaces", "restrictions"}
        :param path: str. JSON path of data
        :return: WeightedComplex.
        """
        schema.expect_fields(data, path, required=('vertices', 'faces'),
                             optional=('class_spaces', 'restrictions'))

        vertices = []
        vertices_path = schema.child(path, 'vertices')
        for k, item in enumerate(schema.expect_list(data['vertices'], vertices_path)):
            item_path = schema.child(vertices_path, k)
            schema.expect_fields(item, item_path, required=('id', 'mult'))
            vertex = schema.expect_str(item['id'], schema.child(item_path, 'id'))
            mult = schema.expect_int(item['mult'], schema.child(item_path, 'mult'), minimum=1)
            vertices.append((vertex, mult))
        known = {vertex for vertex, _ in vertices}

        faces = []
        faces_path = schema.child(path, 'faces')
        for k, item in enumerate(schema.expect_list(data['faces'], faces_path)):
            faces.append(_read_face(item, schema.child(faces_path, k), known))

        class_spaces = {}
        spaces_path = schema.child(path, 'class_spaces')
        for k, item in enumerate(schema.expect_list(data.get('class_spaces', []), spaces_path)):
            item_path = schema.child(spaces_path, k)
            schema.expect_fields(item, item_path, required=('face', 'dim'),
                                 optional=('classes', 'test_curves'))
            face = _read_face(item['face'], schema.child(item_path, 'face'), known)
            dim = schema.expect_int(item['dim'], schema.child(item_path, 'dim'), minimum=0)
            classes = {}
            classes_path = schema.child(item_path, 'classes')
            raw_classes = schema.expect_object(item.get('classes', {}), classes_path)
            for vertex in sorted(raw_classes):
                class_path = schema.child(classes_path, vertex)
                schema.expect_ref(vertex, class_path, known)
                classes[vertex] = exact.vector(
                    schema.expect_rationals(raw_classes[vertex], class_path, length=dim))
            curves = []
            curves_path = schema.child(item_path, 'test_curves')
            for c, curve in enumerate(schema.expect_list(item.get('test_curves', []), curves_path)):
                curves.append(exact.vector(
                    schema.expect_rationals(curve, schema.child(curves_path, c), length=dim)))
            if face in class_spaces:
                raise SchemaError(item_path, 'face listed twice')
            class_spaces[face] = NumClassSpace(dim, classes, curves)

        dims = {face: space.dim for face, space in class_spaces.items()}
        restrictions = {}
        restrictions_path = schema.child(path, 'restrictions')
        for k, item in enumerate(schema.expect_list(data.get('restrictions', []), restrictions_path)):
            item_path = schema.child(restrictions_path, k)
            schema.expect_fields(item, item_path, required=('from', 'to', 'matrix'))
            source = _read_face(item['from'], schema.child(item_path, 'from'), known)
            target = _read_face(item['to'], schema.child(item_path, 'to'), known)
            n_rows, n_cols = dims.get(target, 0), dims.get(source, 0)
            matrix_path = schema.child(item_path, 'matrix')
            rows = schema.expect_list(item['matrix'], matrix_path)
            if len(rows) != n_rows:
                raise SchemaError(matrix_path, 'expected {} rows, got {}'.format(n_rows, len(rows)))
            rows = [schema.expect_rationals(row, schema.child(matrix_path, r), length=n_cols)
                    for r, row in enumerate(rows)]
            restrictions[(source, target)] = exact.matrix(rows, n_rows, n_cols)

        return cls(vertices, faces, class_spaces, restrictions)

    def to_dict(self):
        restrictions = []
        for source, target in sorted(self._restrictions, key=lambda p: (self.face_key(p[0]), self.face_key(p[1]))):
            mat = self._restrictions[(source, target)]
            if mat.rows == 0 or mat.cols == 0:
                continue
            restrictions.append({
                'from': list(self.ordered(source)),
                'to': list(self.ordered(target)),
                'matrix': [[exact.format_rational(v) for v in row] for row in exact.rows_of(mat)],
            })
        return {
            'vertices': [{'id': vertex, 'mult': self.mult[vertex]} for vertex in self.vertices],
            'faces': [list(self.ordered(face)) for face in self.faces],
            'class_spaces': [
                self.class_space(face).to_dict(list(self.ordered(face))) for face in self.faces
            ],
            'restrictions': restrictions,
        }

    def __eq__(self, other):
        if not isinstance(other, WeightedComplex):
            return NotImplemented
        return self.to_dict() == other.to_dict()

    def __hash__(self):
        return hash((self.vertices, self.faces))

    def __repr__(self):
        return 'WeightedComplex({} vertices, {} faces)'.format(len(self.vertices), len(self.faces))

    # endregion

    # region faces and class data

    def face_key(self, face):
        return len(face), sorted(self.index[v] for v in face)

    def ordered(self, face):
        """Vertex ids of a face in vertex order"""
        return tuple(sorted(face, key=self.index.__getitem__))

    def has_face(self, face):
        return frozenset(face) in self._face_set

    def face(self, face):
        """
        :param face: iterable of vertex ids
        :return: frozenset. the face
        :raise UnknownFace: not a face of the complex
        """
        face = frozenset(face)
        if face not in self._face_set:
            raise UnknownFace(self.ordered(face) if face <= set(self.mult) else tuple(face))
        return face

    def faces_containing(self, vertex):
        self.check_vertex(vertex)
        return tuple(face for face in self.faces if vertex in face)

    def check_vertex(self, vertex):
        if vertex not in self.mult:
            raise UnknownVertex(vertex)

    def class_space(self, face):
        face = frozenset(face)
        space = self._class_spaces.get(face)
        if space is None:
            raise UnknownFace(tuple(face))
        return space

    def restriction(self, source, target):
        """
        Restriction map between the class spaces of nested faces.

        :param source: frozenset. smaller face
        :param target: frozenset. larger face (or source itself)
        :return: ImmutableMatrix. shape (dim target, dim source)
        """
        source, target = frozenset(source), frozenset(target)
        if source == target:
            return exact.identity_map(self.class_space(source).dim)
        mat = self._restrictions.get((source, target))
        if mat is not None:
            return mat
        return exact.zero_map(self.class_space(target).dim, self.class_space(source).dim)

    def closed_star(self, vertex):
        """
        The vertex and every vertex sharing a face with it, in vertex order.

        :return: (str).
        """
        self.check_vertex(vertex)
        return self._stars[frozenset([vertex])]

    def face_star(self, face):
        """
        Vertices k such that face + {k} is a face; c_(k,I) vanishes outside it.

        :return: (str).
        """
        return self._stars[self.face(face)]

    def face_derivative(self, values, face, base=None):
        """
        Sum of mult_k * v_k * c_(k,I) over the star of the face.

        :param values: {str: Fraction}. values covering at least the face star
        :param face: frozenset.
        :param base: str. germ base vertex, named in the error
        :return: ImmutableMatrix. class in the class space of the face
        :raise StarSupportMismatch: a star vertex has no value
        """
        face = self.face(face)
        star = self._stars[face]
        space = self.class_space(face)
        total = exact.zero_vector(space.dim)
        if space.dim == 0:
            return total
        for vertex in star:
            if vertex not in values:
                raise StarSupportMismatch(base, star, tuple(v for v in star if v in values))
            value = values[vertex]
            if value:
                total += exact.to_sympy(self.mult[vertex] * exact.to_fraction(value)) * space.divisor_class(vertex)
        return total

    # endregion

    # region coordinates

    def vertex_embedding(self, vertex):
        """
        Ambient coordinates of a vertex: 1/mult_i in slot i, 0 elsewhere.

        :return: (Fraction). in vertex order
        """
        self.check_vertex(vertex)
        return tuple(
            exact.to_fraction(1) / self.mult[v] if v == vertex else exact.to_fraction(0)
            for v in self.vertices
        )

    def check_barycentric(self, face, barycentric):
        """
        :param face: frozenset.
        :param barycentric: {str: Fraction}. coordinates over the face;
                            vertices left out are 0
        :return: {str: Fraction}. coordinates of every face vertex in vertex order
        """
        face = self.face(face)
        ids = self.ordered(face)
        for vertex in barycentric:
            if vertex not in face:
                raise NotOnFace(ids, 'coordinate given for vertex {} outside the face'.format(vertex))
        weights = {v: exact.to_fraction(barycentric.get(v, 0)) for v in ids}
        for vertex, weight in weights.items():
            if weight < 0:
                raise NegativeCoordinate(vertex, weight)
        total = sum(weights.values())
        if total != 1:
            raise NotOnFace(ids, 'barycentric coordinates sum to {}'.format(total))
        return weights

    def to_ambient(self, face, barycentric):
        """
        Ambient point of a face point, x_i = lambda_i / mult_i.

        :return: (Fraction). in vertex order
        """
        weights = self.check_barycentric(face, barycentric)
        return tuple(
            weights[v] / self.mult[v] if v in weights else exact.to_fraction(0)
            for v in self.vertices
        )

    def to_barycentric(self, face, point):
        """
        Barycentric coordinates of an ambient point on a face, lambda_i = mult_i * x_i.

        :param point: [Fraction]. ambient coordinates in vertex order
        :return: {str: Fraction}.
        """
        face = self.face(face)
        ids = self.ordered(face)
        point = [exact.to_fraction(x) for x in point]
        if len(point) != len(self.vertices):
            raise NotOnFace(ids, 'expected {} coordinates, got {}'.format(len(self.vertices), len(point)))
        for vertex, x in zip(self.vertices, point):
            if vertex not in face and x != 0:
                raise NotOnFace(ids, 'coordinate of {} is {}, expected 0'.format(vertex, x))
            if x < 0:
                raise NegativeCoordinate(vertex, x)
        weights = {v: self.mult[v] * point[self.index[v]] for v in ids}
        total = sum(weights.values())
        if total != 1:
            raise NotOnFace(ids, 'sum of mult_i * x_i is {}'.format(total))
        return weights

    def locate(self, point):
        """
        Face spanned by the support of an ambient point and the point's
        barycentric coordinates there.

        :return: (frozenset, {str: Fraction}).
        """
        point = [exact.to_fraction(x) for x in point]
        if len(point) != len(self.vertices):
            raise NotOnFace((), 'expected {} coordinates, got {}'.format(len(self.vertices), len(point)))
        support = frozenset(v for v, x in zip(self.vertices, point) if x != 0)
        if not support:
            raise NotOnFace((), 'the origin is on no face')
        if support not in self._face_set:
            raise NotOnFace(self.ordered(support), 'support is not a face')
        return support, self.to_barycentric(support, point)

    # endregion

    def divisor_to_simple_function(self, coefficients):
        """
        Simple function of a vertical divisor sum a_i D_i: phi(i) = a_i / mult_i.

        :param coefficients: {str: Fraction}. coefficients a_i; vertices left
                             out have coefficient 0
        :return: SimpleFunction.
        """
        for vertex in coefficients:
            self.check_vertex(vertex)
        return SimpleFunction({
            v: exact.to_fraction(coefficients.get(v, 0)) / self.mult[v] for v in self.vertices
        })


def _read_face(value, path, known):
    schema.expect_list(value, path)
    if not value:
        raise SchemaError(path, 'a face needs at least one vertex')
    ids = [schema.expect_ref(v, schema.child(path, k), known) for k, v in enumerate(value)]
    if len(set(ids)) != len(ids):
        raise SchemaError(path, 'repeated vertex in face')
    return frozenset(ids)


def validate_complex(raw):
    """
    Validate a decoded complex description.

    :param raw: dict. complex document body
    :return: WeightedComplex.
    """
    return WeightedComplex.from_dict(raw)
