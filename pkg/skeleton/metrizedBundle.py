"""
Metrized virtual line bundles on a weighted complex.

A bundle is presented by one germ per vertex: the values of a simple
function on the closed star of the vertex. Germs at the vertices of a face
must differ by a function that is linear along that face.
"""

import logging

from . import exact
from . import schema
from .errors import (
    IncompatibleGerms,
    NotLinearGerm,
    SchemaError,
    StarSupportMismatch,
    UnknownVertex,
)


LOGGER = logging.getLogger(__name__)


class MetrizationKind(object):
    """
    Enum class of metrizations by the positivity of their germs
    """

    simple = 'simple'
    convex = 'convex'
    strictly_convex = 'strictly_convex'


class Germ(object):
    """
    Germ of a simple function at a vertex, given by its values on the
    vertex's closed star
    """

    def __init__(self, base, values):
        """
        Initialization

        :param base: str. vertex id the germ is based at
        :param values: {str: Fraction}. value at every closed-star vertex
        """
        self.base = base
        self.values = {vertex: exact.to_fraction(value) for vertex, value in values.items()}

    @classmethod
    def from_dict(cls, data, known, path='$'):
        schema.expect_fields(data, path, required=('base', 'values'))
        base = schema.expect_ref(data['base'], schema.child(path, 'base'), known)
        values_path = schema.child(path, 'values')
        raw = schema.expect_object(data['values'], values_path)
        values = {}
        for vertex in sorted(raw):
            item_path = schema.child(values_path, vertex)
            schema.expect_ref(vertex, item_path, known)
            values[vertex] = schema.expect_rational(raw[vertex], item_path)
        return cls(base, values)

    def to_dict(self):
        return {
            'base': self.base,
            'values': {vertex: exact.format_rational(value) for vertex, value in self.values.items()},
        }

    def __getitem__(self, vertex):
        return self.values[vertex]

    def __eq__(self, other):
        if not isinstance(other, Germ):
            return NotImplemented
        return self.base == other.base and self.values == other.values

    def __repr__(self):
        return 'Germ({}, {})'.format(self.base, self.values)

    def __add__(self, other):
        return Germ(self.base, {v: x + other.values[v] for v, x in self.values.items()})

    def __sub__(self, other):
        return Germ(self.base, {v: x - other.values[v] for v, x in self.values.items()})


class MetrizedBundle(object):
    """
    Germ presentation of a metrized virtual line bundle.

    The constructor stores what it is given; validate_metrization is the
    checked way in.
    """

    def __init__(self, complex_, germs):
        """
        :param complex_: WeightedComplex.
        :param germs: {str: Germ}. germ per vertex id
        """
        self.complex = complex_
        self.germs = dict(germs)

    @classmethod
    def from_dict(cls, data, complex_, path='$'):
        """
        :param data: dict. {"germs": [{"base", "values"}]}
        :return: MetrizedBundle. validated against the complex
        """
        schema.expect_fields(data, path, required=('germs',))
        germs_path = schema.child(path, 'germs')
        germs = {}
        for k, item in enumerate(schema.expect_list(data['germs'], germs_path)):
            germ = Germ.from_dict(item, complex_.mult, schema.child(germs_path, k))
            if germ.base in germs:
                raise SchemaError(schema.child(germs_path, k), 'second germ at {}'.format(germ.base))
            germs[germ.base] = germ
        return validate_metrization(complex_, germs)

    def to_dict(self):
        return {'germs': [self.germs[vertex].to_dict() for vertex in self.complex.vertices]}

    def germ(self, vertex):
        return self.germs[vertex]

    def __eq__(self, other):
        if not isinstance(other, MetrizedBundle):
            return NotImplemented
        return self.complex == other.complex and self.germs == other.germs

    def __repr__(self):
        return 'MetrizedBundle({} germs)'.format(len(self.germs))


def check_germ(complex_, germ):
    """
    :raise UnknownVertex: the base is not a vertex
    :raise StarSupportMismatch: the germ is not given on exactly the closed star
    """
    complex_.check_vertex(germ.base)
    star = complex_.closed_star(germ.base)
    if set(germ.values) != set(star):
        given = tuple(sorted(germ.values, key=lambda v: complex_.index.get(v, len(complex_.index))))
        raise StarSupportMismatch(germ.base, star, given)


def validate_metrization(complex_, germs):
    """
    Check a germ family presents a metrized bundle.

    :param complex_: WeightedComplex.
    :param germs: {str: Germ} or [Germ]. one germ per vertex
    :return: MetrizedBundle.
    :raise StarSupportMismatch: a germ is missing or not star supported
    :raise IncompatibleGerms: germs of a face differ non-linearly along it
    """
    if not isinstance(germs, dict):
        germs = {germ.base: germ for germ in germs}
    for vertex, germ in germs.items():
        if vertex not in complex_.mult:
            raise UnknownVertex(vertex)
        if germ.base != vertex:
            raise StarSupportMismatch(vertex, complex_.closed_star(vertex), ())
        check_germ(complex_, germ)
    for vertex in complex_.vertices:
        if vertex not in germs:
            raise StarSupportMismatch(vertex, complex_.closed_star(vertex), ())

    for face in complex_.faces:
        if len(face) < 2:
            continue
        star = complex_.face_star(face)
        members = complex_.ordered(face)
        for a, i in enumerate(members):
            for j in members[a + 1:]:
                difference = {k: germs[i][k] - germs[j][k] for k in star}
                if not exact.is_zero(complex_.face_derivative(difference, face)):
                    LOGGER.warning('germs at %s and %s are incompatible along %s', i, j, members)
                    raise IncompatibleGerms(members, i, j)
    return MetrizedBundle(complex_, germs)


def from_global_function(complex_, function):
    """
    Trivial torsor whose germs are the restrictions of one simple function.

    :param function: SimpleFunction.
    :return: MetrizedBundle.
    """
    germs = {}
    for vertex in complex_.vertices:
        germs[vertex] = Germ(vertex, {k: function[k] for k in complex_.closed_star(vertex)})
    return MetrizedBundle(complex_, germs)


def curvature(bundle):
    """
    Curvature of a metrized bundle: the class of each vertex germ's
    derivative along its own vertex.

    :return: {str: ImmutableMatrix}. class in the class space of {i}
    """
    complex_ = bundle.complex
    return {
        vertex: complex_.face_derivative(bundle.germs[vertex].values, frozenset([vertex]), vertex)
        for vertex in complex_.vertices
    }


def compatibility_check(bundle):
    """
    Whether the curvature classes of the vertices of each face restrict to
    the same class on the face.

    :return: bool.
    """
    complex_ = bundle.complex
    classes = curvature(bundle)
    for face in complex_.faces:
        if len(face) < 2:
            continue
        restricted = [
            complex_.restriction(frozenset([vertex]), face) * classes[vertex]
            for vertex in complex_.ordered(face)
        ]
        if any(cls != restricted[0] for cls in restricted[1:]):
            LOGGER.info('curvature is incompatible along %s', complex_.ordered(face))
            return False
    return True


def _germ_classes(bundle):
    complex_ = bundle.complex
    for vertex in complex_.vertices:
        germ = bundle.germs[vertex]
        for face in complex_.faces_containing(vertex):
            yield complex_.class_space(face), complex_.face_derivative(germ.values, face, vertex)


def is_kahler(bundle):
    """
    Whether every germ is strictly convex along every face containing its base.

    :return: bool.
    """
    return all(space.is_ample(cls) for space, cls in _germ_classes(bundle))


def metrization_kind(bundle):
    """
    :return: MetrizationKind. strictly convex when every germ is ample along
             every incident face, convex when every such class is nef,
             simple otherwise
    """
    ample = True
    nef = True
    for space, cls in _germ_classes(bundle):
        if not space.is_nef(cls):
            nef = False
        if not space.is_ample(cls):
            ample = False
    if ample:
        return MetrizationKind.strictly_convex
    if nef:
        return MetrizationKind.convex
    return MetrizationKind.simple


def _non_linear_face(complex_, vertex, values):
    for face in complex_.faces_containing(vertex):
        if not exact.is_zero(complex_.face_derivative(values, face, vertex)):
            return face
    return None


def twist(bundle, vertex, psi):
    """
    Act on a bundle by a germ that is linear along every face at the vertex.

    :param bundle: MetrizedBundle.
    :param vertex: str. vertex whose germ is twisted
    :param psi: Germ. linear germ based at the vertex
    :return: MetrizedBundle. with phi_i replaced by phi_i + psi
    :raise NotLinearGerm: psi has a nonzero derivative along some face
    """
    complex_ = bundle.complex
    if not isinstance(psi, Germ):
        psi = Germ(vertex, psi)
    if psi.base != vertex:
        raise StarSupportMismatch(vertex, complex_.closed_star(vertex), ())
    check_germ(complex_, psi)
    face = _non_linear_face(complex_, vertex, psi.values)
    if face is not None:
        raise NotLinearGerm(complex_.ordered(face))
    germs = dict(bundle.germs)
    germs[vertex] = bundle.germs[vertex] + psi
    return MetrizedBundle(complex_, germs)


def admissible_twist_basis(complex_, vertex):
    """
    Basis of the germs at a vertex that are linear along every face
    containing it.

    :return: [Germ]. basis vectors over the closed star
    """
    star = complex_.closed_star(vertex)
    rows = []
    for face in complex_.faces_containing(vertex):
        space = complex_.class_space(face)
        face_star = set(complex_.face_star(face))
        for r in range(space.dim):
            rows.append([
                complex_.mult[k] * exact.to_fraction(space.divisor_class(k)[r, 0]) if k in face_star else 0
                for k in star
            ])
    constraints = exact.matrix(rows, len(rows), len(star))
    basis = []
    for column in exact.nullspace(constraints):
        basis.append(Germ(vertex, dict(zip(star, exact.entries(column)))))
    LOGGER.debug('linear germs at %s: dimension %s', vertex, len(basis))
    return basis


def equivalent_up_to_twist(first, second):
    """
    Whether two germ presentations on the same complex differ vertex by
    vertex by linear germs.

    :return: bool.
    """
    if first.complex != second.complex:
        return False
    complex_ = first.complex
    for vertex in complex_.vertices:
        difference = first.germs[vertex] - second.germs[vertex]
        if _non_linear_face(complex_, vertex, difference.values) is not None:
            return False
    return True
